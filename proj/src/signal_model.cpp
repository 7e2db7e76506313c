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

#include "aperture_forge/signal_model.hpp"
#include "aperture_forge/errors.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace aperture_forge
{
    namespace
    {
        using namespace std::complex_literals;

        void require_angle_range(double theta)
        {
            if (!(theta >= 0.0 && theta <= std::numbers::pi))
                throw ConfigError("angle must lie in [0, pi], got " + std::to_string(theta));
        }

        // One circular complex Gaussian draw with E|z|^2 = variance.
        std::complex<double> circular_gaussian(double variance, std::normal_distribution<double> &unit,
                                               std::mt19937_64 &rng)
        {
            const double scale = std::sqrt(0.5 * variance);
            const double re = unit(rng);
            const double im = unit(rng);
            return {scale * re, scale * im};
        }
    }

    AngleGrid AngleGrid::uniform(int count)
    {
        if (count < 1)
            throw ConfigError("grid needs at least one angle");
        AngleGrid grid;
        if (count == 1)
        {
            grid.angles = {0.5 * std::numbers::pi};
            return grid;
        }
        grid.angles.resize(static_cast<std::size_t>(count));
        for (int n = 0; n < count; ++n)
            grid.angles[static_cast<std::size_t>(n)] =
                static_cast<double>(n) * std::numbers::pi / static_cast<double>(count - 1);
        return grid;
    }

    AngleGrid AngleGrid::from_angles(std::vector<double> angles)
    {
        if (angles.empty())
            throw ConfigError("grid needs at least one angle");
        for (std::size_t n = 0; n < angles.size(); ++n)
        {
            require_angle_range(angles[n]);
            if (n > 0 && angles[n] <= angles[n - 1])
                throw ConfigError("grid angles must be strictly increasing");
        }
        AngleGrid grid;
        grid.angles = std::move(angles);
        return grid;
    }

    Eigen::VectorXcd steering_vector(double theta, const ArrayGeometry &geometry, double wavenumber)
    {
        require_angle_range(theta);
        const int M = geometry.port_count();
        const double c = std::cos(theta);
        Eigen::VectorXcd a(M);
        for (int m = 0; m < M; ++m)
            a(m) = std::exp(-1i * (wavenumber * geometry.positions[static_cast<std::size_t>(m)] * c));
        return a;
    }

    Eigen::VectorXcd steering_derivative(double theta, const ArrayGeometry &geometry, double wavenumber)
    {
        require_angle_range(theta);
        const int M = geometry.port_count();
        const double s = std::sin(theta);
        const double c = std::cos(theta);
        Eigen::VectorXcd da(M);
        for (int m = 0; m < M; ++m)
        {
            const double p = geometry.positions[static_cast<std::size_t>(m)];
            da(m) = (1i * (wavenumber * p * s)) * std::exp(-1i * (wavenumber * p * c));
        }
        return da;
    }

    SnapshotMatrix synth_snapshots(double theta, const ArrayGeometry &geometry, double signal_power,
                                   double noise_variance, int snapshots, std::mt19937_64 &rng)
    {
        if (snapshots < 1)
            throw ConfigError("need at least one snapshot");
        if (!(signal_power >= 0.0) || !(noise_variance >= 0.0))
            throw ConfigError("powers must be non-negative");

        const int M = geometry.port_count();
        const Eigen::VectorXcd a = steering_vector(theta, geometry);
        std::normal_distribution<double> unit(0.0, 1.0);

        SnapshotMatrix out;
        out.signal_power = signal_power;
        out.noise_variance = noise_variance;
        out.data.resize(M, snapshots);
        for (int t = 0; t < snapshots; ++t)
        {
            const std::complex<double> s = circular_gaussian(signal_power, unit, rng);
            for (int m = 0; m < M; ++m)
                out.data(m, t) = a(m) * s + circular_gaussian(noise_variance, unit, rng);
        }
        return out;
    }

    Eigen::MatrixXcd sample_covariance(const SnapshotMatrix &snapshots)
    {
        const double T = static_cast<double>(snapshots.snapshot_count());
        if (T < 1)
            throw InvalidMatrixError("need at least one snapshot");

        // Rank update keeps the result exactly Hermitian.
        const int M = snapshots.port_count();
        Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(M, M);
        r.selfadjointView<Eigen::Lower>().rankUpdate(snapshots.data, 1.0 / T);
        return r.selfadjointView<Eigen::Lower>();
    }

    Eigen::MatrixXcd model_covariance(double theta, const ArrayGeometry &geometry, double signal_power,
                                      double noise_variance)
    {
        const Eigen::VectorXcd a = steering_vector(theta, geometry);
        Eigen::MatrixXcd r = signal_power * (a * a.adjoint());
        r.diagonal().array() += noise_variance;
        return r;
    }

    Eigen::VectorXcd vectorize_covariance(const Eigen::MatrixXcd &covariance)
    {
        if (covariance.rows() != covariance.cols())
            throw InvalidMatrixError("covariance must be square");
        return Eigen::Map<const Eigen::VectorXcd>(covariance.data(), covariance.size());
    }

    Codebook build_codebook(const ArrayGeometry &geometry, const AngleGrid &grid)
    {
        const int M = geometry.port_count();
        const int N = grid.size();
        Codebook book{Eigen::MatrixXcd(M * M, N), grid, geometry};
        for (int n = 0; n < N; ++n)
        {
            const double c = std::cos(grid.angles[static_cast<std::size_t>(n)]);
            for (int v = 0; v < M; ++v)
            {
                const double pv = geometry.positions[static_cast<std::size_t>(v)];
                for (int u = 0; u < M; ++u)
                {
                    const double pu = geometry.positions[static_cast<std::size_t>(u)];
                    book.columns(v * M + u, n) = std::exp(std::complex<double>(0.0, -kTwoPi * (pu - pv) * c));
                }
            }
        }
        return book;
    }

    GridEstimate matched_grid_estimate(const Eigen::VectorXcd &virtual_signal, const Codebook &codebook)
    {
        if (virtual_signal.size() != codebook.columns.rows())
            throw InvalidMatrixError("virtual signal length does not match the codebook");

        const double norm = virtual_signal.norm();
        const double M = std::sqrt(static_cast<double>(codebook.columns.rows()));
        GridEstimate best{codebook.grid.angles.front(), 0.0, 0};
        if (norm == 0.0)
            return best;

        const Eigen::VectorXd scores = (codebook.columns.adjoint() * virtual_signal).cwiseAbs();
        int best_index = 0;
        double best_score = scores(0);
        for (int n = 1; n < scores.size(); ++n)
            if (scores(n) > best_score)
            {
                best_score = scores(n);
                best_index = n;
            }
        best.index = best_index;
        best.angle = codebook.grid.angles[static_cast<std::size_t>(best_index)];
        best.score = best_score / (M * norm);
        return best;
    }
}
