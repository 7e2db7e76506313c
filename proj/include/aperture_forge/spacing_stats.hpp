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

#ifndef APERTURE_FORGE_SPACING_STATS_H
#define APERTURE_FORGE_SPACING_STATS_H

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace aperture_forge
{
    // Distribution of the minimum adjacent gap of M ports placed
    // independently and uniformly at random on [0, W_max]. The support is
    // [0, W_max / (M - 1)]; the upper end is the uniform (ULA) configuration.
    struct SpacingDistribution
    {
        int port_count = 2;
        double aperture = 1.0;

        SpacingDistribution(int port_count, double aperture);

        double delta_max() const { return aperture / static_cast<double>(port_count - 1); }
    };

    // Density (M(M-1)/W) * (1 - (M-1)*delta/W)^(M-1); zero outside the support.
    double pdf(const SpacingDistribution &dist, double delta);

    // P(min gap > delta) = (1 - (M-1)*delta/W)^M, clamped to [0, 1] outside
    // the support.
    double ccdf(const SpacingDistribution &dist, double delta);

    // P(min gap <= delta).
    double cdf(const SpacingDistribution &dist, double delta);

    // Closed-form mean W / (M^2 - 1).
    double expected_min_spacing(const SpacingDistribution &dist);

    // Draws M uniforms, sorts them, and returns the minimum adjacent gap.
    double sample_min_spacing(const SpacingDistribution &dist, std::mt19937_64 &rng);

    // Convenience batch of sample_min_spacing draws.
    std::vector<double> sample_min_spacings(const SpacingDistribution &dist, std::int64_t count, std::mt19937_64 &rng);

    struct EmpiricalRow
    {
        double delta;
        double pdf_theory;
        double pdf_empirical;
        double ccdf_theory;
        double ccdf_empirical;
    };

    // Histogram of precomputed samples against the analytic curves; one row
    // per bin, evaluated at the bin center, over [0, delta_max]. The
    // empirical density is normalized so that sum(pdf * binwidth) = 1.
    std::vector<EmpiricalRow> tabulate_empirical(const SpacingDistribution &dist, std::span<const double> samples,
                                                 int bins);

    // Draws `samples` minimum spacings and tabulates them.
    std::vector<EmpiricalRow> empirical_vs_theory(const SpacingDistribution &dist, std::int64_t samples, int bins,
                                                  std::mt19937_64 &rng);

    // One-sample Kolmogorov-Smirnov statistic of the samples against the
    // analytic CDF. Sorts a copy of the input.
    double ks_statistic(const SpacingDistribution &dist, std::vector<double> samples);
}

#endif
