// SPDX-License-Identifier: Apache-2.0
//
// aperture-forge: finite-aperture linear array placement design and analysis
// Copyright (C) 2026 The aperture-forge authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef APERTURE_FORGE_SIGNAL_MODEL_H
#define APERTURE_FORGE_SIGNAL_MODEL_H

#include "aperture_forge/geometry.hpp"

#include <Eigen/Dense>
#include <numbers>
#include <random>
#include <vector>

namespace aperture_forge
{
    inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

    // Discretized angular domain, strictly increasing angles in [0, pi].
    struct AngleGrid
    {
        std::vector<double> angles;

        int size() const { return static_cast<int>(angles.size()); }

        // N equally spaced angles including both endpoints,
        // theta_n = (n - 1) * pi / (N - 1). A single-point grid collapses to
        // broadside {pi/2}.
        static AngleGrid uniform(int count);

        // Wraps an explicit angle list, validating order and range.
        static AngleGrid from_angles(std::vector<double> angles);
    };

    // Phase signature e^{-j k p_m cos(theta)} across the ports. The default
    // wavenumber 2*pi matches wavelength-normalized positions.
    Eigen::VectorXcd steering_vector(double theta, const ArrayGeometry &geometry, double wavenumber = kTwoPi);

    // d/dtheta of the steering vector: j k p_m sin(theta) * a_m(theta).
    Eigen::VectorXcd steering_derivative(double theta, const ArrayGeometry &geometry, double wavenumber = kTwoPi);

    // T received snapshots y(t) = a(theta) s(t) + n(t) with a circular
    // complex Gaussian source of power signal_power and white noise of
    // variance noise_variance per port.
    struct SnapshotMatrix
    {
        Eigen::MatrixXcd data; // M x T
        double signal_power = 1.0;
        double noise_variance = 0.0;

        int port_count() const { return static_cast<int>(data.rows()); }
        int snapshot_count() const { return static_cast<int>(data.cols()); }
    };

    SnapshotMatrix synth_snapshots(double theta, const ArrayGeometry &geometry, double signal_power,
                                   double noise_variance, int snapshots, std::mt19937_64 &rng);

    // (1/T) * Y * Y^H.
    Eigen::MatrixXcd sample_covariance(const SnapshotMatrix &snapshots);

    // P_s * a a^H + sigma_n^2 * I.
    Eigen::MatrixXcd model_covariance(double theta, const ArrayGeometry &geometry, double signal_power,
                                      double noise_variance);

    // Column-major stacking of an M x M matrix into length M^2.
    Eigen::VectorXcd vectorize_covariance(const Eigen::MatrixXcd &covariance);

    // Virtual difference-co-array codebook: column n holds
    // e^{-j 2 pi (p_u - p_v) cos(theta_n)} at flat index (v-1)*M + u, which
    // equals conj(a(theta_n)) kron a(theta_n).
    struct Codebook
    {
        Eigen::MatrixXcd columns; // M^2 x N
        AngleGrid grid;
        ArrayGeometry geometry;
    };

    Codebook build_codebook(const ArrayGeometry &geometry, const AngleGrid &grid);

    struct GridEstimate
    {
        double angle = 0.0; // radians
        double score = 0.0; // |c_n^H y| / (M * ||y||), in [0, 1]
        int index = 0;      // grid index of the maximizer
    };

    // Grid-matched AoA estimate from a vectorized covariance; ties break to
    // the lowest grid index.
    GridEstimate matched_grid_estimate(const Eigen::VectorXcd &virtual_signal, const Codebook &codebook);
}

#endif
