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

#include "aperture_forge/spacing_stats.hpp"
#include "aperture_forge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aperture_forge
{
    SpacingDistribution::SpacingDistribution(int port_count_in, double aperture_in)
        : port_count(port_count_in), aperture(aperture_in)
    {
        if (port_count < 2)
            throw InvalidPortCountError("spacing distribution needs at least two ports");
        if (!(aperture > 0.0))
            throw InfeasibleConstraintsError("spacing distribution needs a positive aperture");
    }

    double pdf(const SpacingDistribution &dist, double delta)
    {
        if (delta < 0.0 || delta > dist.delta_max())
            return 0.0;
        const double M = static_cast<double>(dist.port_count);
        const double base = 1.0 - (M - 1.0) * delta / dist.aperture;
        return M * (M - 1.0) / dist.aperture * std::pow(base, M - 1.0);
    }

    double ccdf(const SpacingDistribution &dist, double delta)
    {
        if (delta <= 0.0)
            return 1.0;
        if (delta >= dist.delta_max())
            return 0.0;
        const double M = static_cast<double>(dist.port_count);
        return std::pow(1.0 - (M - 1.0) * delta / dist.aperture, M);
    }

    double cdf(const SpacingDistribution &dist, double delta)
    {
        return 1.0 - ccdf(dist, delta);
    }

    double expected_min_spacing(const SpacingDistribution &dist)
    {
        const double M = static_cast<double>(dist.port_count);
        return dist.aperture / (M * M - 1.0);
    }

    double sample_min_spacing(const SpacingDistribution &dist, std::mt19937_64 &rng)
    {
        std::uniform_real_distribution<double> uniform(0.0, dist.aperture);
        // Small M: insertion into a stack buffer beats sorting a heap vector.
        double draws[64];
        const int M = dist.port_count;
        if (M <= 64)
        {
            for (int i = 0; i < M; ++i)
                draws[i] = uniform(rng);
            std::sort(draws, draws + M);
            double min_gap = draws[1] - draws[0];
            for (int i = 2; i < M; ++i)
                min_gap = std::min(min_gap, draws[i] - draws[i - 1]);
            return min_gap;
        }
        std::vector<double> big(static_cast<std::size_t>(M));
        for (auto &d : big)
            d = uniform(rng);
        std::sort(big.begin(), big.end());
        double min_gap = big[1] - big[0];
        for (std::size_t i = 2; i < big.size(); ++i)
            min_gap = std::min(min_gap, big[i] - big[i - 1]);
        return min_gap;
    }

    std::vector<double> sample_min_spacings(const SpacingDistribution &dist, std::int64_t count, std::mt19937_64 &rng)
    {
        if (count < 0)
            throw std::invalid_argument("sample count must be non-negative");
        std::vector<double> out(static_cast<std::size_t>(count));
        for (auto &s : out)
            s = sample_min_spacing(dist, rng);
        return out;
    }

    std::vector<EmpiricalRow> tabulate_empirical(const SpacingDistribution &dist, std::span<const double> samples,
                                                 int bins)
    {
        if (bins < 1)
            throw std::invalid_argument("need at least one bin");
        if (samples.empty())
            throw std::invalid_argument("need at least one sample");

        const double d_max = dist.delta_max();
        const double width = d_max / static_cast<double>(bins);
        std::vector<std::int64_t> counts(static_cast<std::size_t>(bins), 0);
        for (double s : samples)
        {
            int b = static_cast<int>(s / width);
            b = std::clamp(b, 0, bins - 1);
            ++counts[static_cast<std::size_t>(b)];
        }

        std::vector<double> sorted(samples.begin(), samples.end());
        std::sort(sorted.begin(), sorted.end());
        const double n = static_cast<double>(samples.size());

        std::vector<EmpiricalRow> rows;
        rows.reserve(static_cast<std::size_t>(bins));
        for (int b = 0; b < bins; ++b)
        {
            const double center = (static_cast<double>(b) + 0.5) * width;
            const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), center);
            rows.push_back({center, pdf(dist, center),
                            static_cast<double>(counts[static_cast<std::size_t>(b)]) / (n * width),
                            ccdf(dist, center), static_cast<double>(above) / n});
        }
        return rows;
    }

    std::vector<EmpiricalRow> empirical_vs_theory(const SpacingDistribution &dist, std::int64_t samples, int bins,
                                                  std::mt19937_64 &rng)
    {
        if (samples < 1)
            throw std::invalid_argument("need at least one sample");
        const auto draws = sample_min_spacings(dist, samples, rng);
        return tabulate_empirical(dist, draws, bins);
    }

    double ks_statistic(const SpacingDistribution &dist, std::vector<double> samples)
    {
        if (samples.empty())
            throw std::invalid_argument("need at least one sample");
        std::sort(samples.begin(), samples.end());
        const double n = static_cast<double>(samples.size());
        double ks = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i)
        {
            const double f = cdf(dist, samples[i]);
            const double hi = (static_cast<double>(i) + 1.0) / n - f;
            const double lo = f - static_cast<double>(i) / n;
            ks = std::max({ks, hi, lo});
        }
        return ks;
    }
}
