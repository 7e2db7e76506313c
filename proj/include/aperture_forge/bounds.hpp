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

#ifndef APERTURE_FORGE_BOUNDS_H
#define APERTURE_FORGE_BOUNDS_H

#include "aperture_forge/geometry.hpp"
#include "aperture_forge/signal_model.hpp"

namespace aperture_forge
{
    // Operating point for the angle CRB. The SNR is linear (P_s / sigma_n^2);
    // dB conversion is a CLI concern. wavenumber = 2*pi matches
    // wavelength-normalized positions. theta may sit on the endfire
    // endpoints, where the information degenerates to zero.
    struct CrbParams
    {
        double theta = 0.5 * std::numbers::pi; // radians, [0, pi]
        double snr_linear = 1.0;
        int snapshots = 1;
        double wavenumber = kTwoPi;

        CrbParams() = default;
        CrbParams(double theta, double snr_linear, int snapshots, double wavenumber = kTwoPi);
    };

    struct BoundParams
    {
        double sigma_z_sq = 1.0; // interference-plus-noise variance

        BoundParams() = default;
        explicit BoundParams(double sigma_z_sq);
    };

    // Fisher information for the arrival angle,
    // 2 T SNR k^2 sin^2(theta) * geometric_variance(p). Zero at endfire or
    // for a zero-variance geometry.
    double fim_theta(const CrbParams &params, const ArrayGeometry &geometry);

    // 1 / fim_theta, in rad^2. Throws UnboundedCrbError when the information
    // vanishes.
    double crb_theta(const CrbParams &params, const ArrayGeometry &geometry);

    // Cosine-domain MSE upper bound
    // 16 sigma_z^4 gamma_max / (effective_squared_aperture(p) * M^4), where
    // gamma_max is the dominant Gram eigenvalue of the sensing codebook.
    double aoamse_upper_bound(const BoundParams &params, const ArrayGeometry &geometry, double gamma_max);
}

#endif
