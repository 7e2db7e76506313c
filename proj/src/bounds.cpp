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

#include <cmath>

#include "aperture_forge/bounds.hpp"
#include "aperture_forge/errors.hpp"

namespace aperture_forge
{

CrbParams::CrbParams(double theta, double snr_linear, int snapshots, double wavenumber)
    : theta(theta), snr_linear(snr_linear), snapshots(snapshots), wavenumber(wavenumber)
{
    if (theta < 0.0 || theta > std::numbers::pi)
        throw ConfigError("CrbParams: theta must lie in [0, pi]");
    if (snr_linear <= 0.0)
        throw ConfigError("CrbParams: snr_linear must be positive");
    if (snapshots < 1)
        throw ConfigError("CrbParams: snapshots must be >= 1");
    if (wavenumber <= 0.0)
        throw ConfigError("CrbParams: wavenumber must be positive");
}

BoundParams::BoundParams(double sigma_z_sq) : sigma_z_sq(sigma_z_sq)
{
    if (sigma_z_sq <= 0.0)
        throw ConfigError("BoundParams: sigma_z_sq must be positive");
}

double fim_theta(const CrbParams &params, const ArrayGeometry &geometry)
{
    double s = std::sin(params.theta);
    double k = params.wavenumber;
    return 2.0 * params.snapshots * params.snr_linear * k * k * s * s * geometric_variance(geometry.positions);
}

double crb_theta(const CrbParams &params, const ArrayGeometry &geometry)
{
    double fim = fim_theta(params, geometry);
    if (fim <= 0.0)
        throw UnboundedCrbError("crb_theta: Fisher information is zero; the angle is not identifiable");
    return 1.0 / fim;
}

double aoamse_upper_bound(const BoundParams &params, const ArrayGeometry &geometry, double gamma_max)
{
    if (gamma_max <= 0.0)
        throw UndefinedObjectiveError("aoamse_upper_bound: gamma_max must be positive");

    double lam_sq = effective_squared_aperture(geometry.positions);
    if (lam_sq <= 0.0)
        throw UndefinedObjectiveError("aoamse_upper_bound: effective squared aperture is zero");

    double m = static_cast<double>(geometry.port_count());
    double s4 = params.sigma_z_sq * params.sigma_z_sq;
    return 16.0 * s4 * gamma_max / (lam_sq * m * m * m * m);
}

}
