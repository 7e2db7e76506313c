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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "aperture_forge/errors.hpp"
#include "aperture_forge/spacing_stats.hpp"
#include "support/oracles.hpp"

using namespace aperture_forge;

TEST_CASE("density: frozen point values and support boundaries")
{
    SpacingDistribution d82(8, 2.0);
    // M(M-1)/W * (1 - (M-1) d / W)^(M-1) at d = 0.1 -> 28 * 0.65^7
    CHECK(pdf(d82, 0.1) == doctest::Approx(28.0 * std::pow(0.65, 7)).epsilon(1e-13));
    CHECK(pdf(d82, 0.0) == doctest::Approx(28.0).epsilon(1e-14));
    CHECK(pdf(d82, d82.delta_max()) == 0.0);
    CHECK(pdf(d82, -0.01) == 0.0);
    CHECK(pdf(d82, d82.delta_max() + 0.01) == 0.0);

    SpacingDistribution d810(8, 10.0);
    CHECK(pdf(d810, 0.0) == doctest::Approx(5.6).epsilon(1e-14)); // M(M-1)/W = 56/10

    SpacingDistribution d2(2, 1.0);
    CHECK(pdf(d2, 0.5) == doctest::Approx(1.0).epsilon(1e-14)); // 2 * (1 - 0.5)^1
}

TEST_CASE("tail probability: endpoints, a frozen value, monotonicity")
{
    SpacingDistribution d(8, 10.0);
    CHECK(ccdf(d, 0.0) == 1.0);
    CHECK(ccdf(d, d.delta_max()) == 0.0);
    CHECK(ccdf(d, -1.0) == 1.0);
    CHECK(ccdf(d, d.delta_max() + 1.0) == 0.0);

    // P(min gap > E[min gap]) = (1 - 1/(M+1))^M at delta = W/(M^2-1)
    CHECK(ccdf(d, 10.0 / 63.0) == doctest::Approx(std::pow(8.0 / 9.0, 8)).epsilon(1e-13));
    CHECK(std::pow(8.0 / 9.0, 8) == doctest::Approx(0.3897443431).epsilon(1e-8));

    double prev = 1.0;
    for (int i = 1; i <= 64; i++)
    {
        double x = d.delta_max() * static_cast<double>(i) / 64.0;
        double c = ccdf(d, x);
        CHECK(c <= prev);
        CHECK(cdf(d, x) == doctest::Approx(1.0 - c).epsilon(1e-14));
        prev = c;
    }
}

TEST_CASE("density integrates to one and reproduces the closed-form mean")
{
    for (int m = 2; m <= 16; m++)
    {
        CAPTURE(m);
        double w = 0.5 * (m - 1);
        SpacingDistribution dist(m, w);
        double total = oracles::integrate([&](double x) { return pdf(dist, x); }, 0.0, dist.delta_max());
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));

        double mean = oracles::integrate([&](double x) { return x * pdf(dist, x); }, 0.0, dist.delta_max());
        CHECK(mean == doctest::Approx(expected_min_spacing(dist)).epsilon(1e-9));
        CHECK(expected_min_spacing(dist) == doctest::Approx(w / (m * m - 1.0)).epsilon(1e-14));
    }
}

TEST_CASE("tail probability is the integral complement of the density")
{
    SpacingDistribution dist(6, 3.0);
    for (int i = 1; i < 10; i++)
    {
        double x = dist.delta_max() * static_cast<double>(i) / 10.0;
        double numeric = -oracles::central_diff([&](double t) { return ccdf(dist, t); }, x, 1e-6);
        CHECK(numeric == doctest::Approx(pdf(dist, x)).epsilon(1e-6));
    }
}

TEST_CASE("mean times (M+1) is exactly half the port pitch budget")
{
    // With W = (M-1)/2 the identity E[min gap] * (M+1) = 1/2 holds exactly
    // in double arithmetic: W/(M^2-1) * (M+1) = W/(M-1) = 1/2.
    for (int m = 3; m <= 16; m++)
    {
        CAPTURE(m);
        SpacingDistribution dist(m, 0.5 * (m - 1));
        CHECK(expected_min_spacing(dist) * (m + 1) == 0.5);
    }
}

TEST_CASE("sampler: support, determinism, and mean concentration")
{
    SpacingDistribution dist(8, 10.0);
    std::mt19937_64 rng(42);
    const std::int64_t n = 100000;
    std::vector<double> samples = sample_min_spacings(dist, n, rng);
    REQUIRE(static_cast<std::int64_t>(samples.size()) == n);

    double sum = 0.0;
    for (double s : samples)
    {
        CHECK(s >= 0.0);
        CHECK(s <= dist.delta_max());
        sum += s;
    }
    double mean = sum / static_cast<double>(n);
    double expected = expected_min_spacing(dist);
    // Var = E^2 * 2M/(M+2); four standard errors around the mean.
    double se = expected * std::sqrt(2.0 * 8.0 / 10.0 / static_cast<double>(n));
    CHECK(std::abs(mean - expected) < 4.0 * se);

    std::mt19937_64 rng2(42);
    std::vector<double> replay = sample_min_spacings(dist, 100, rng2);
    std::mt19937_64 rng3(42);
    for (int i = 0; i < 100; i++)
        CHECK(replay[static_cast<size_t>(i)] == sample_min_spacing(dist, rng3));
}

TEST_CASE("minimum gap scales linearly with the aperture")
{
    // Two-sample KS between draws at W and rescaled draws at 2W.
    std::mt19937_64 rng(7);
    SpacingDistribution small(5, 2.0);
    SpacingDistribution big(5, 4.0);
    std::vector<double> a = sample_min_spacings(small, 20000, rng);
    std::vector<double> b = sample_min_spacings(big, 20000, rng);
    for (double &x : b)
        x *= 0.5;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    // 99% two-sample critical value: 1.628 * sqrt((n+m)/(n*m))
    double critical = 1.628 * std::sqrt(2.0 / 20000.0);
    CHECK(oracles::two_sample_ks(a, b) < critical);
}

TEST_CASE("histogram tabulation: normalization and agreement with theory")
{
    SpacingDistribution dist(8, 10.0);
    std::mt19937_64 rng(1234);
    const std::int64_t n = 1000000;
    std::vector<double> samples = sample_min_spacings(dist, n, rng);

    std::vector<EmpiricalRow> rows = tabulate_empirical(dist, samples, 50);
    REQUIRE(rows.size() == 50);
    double width = dist.delta_max() / 50.0;
    double mass = 0.0;
    for (const EmpiricalRow &r : rows)
    {
        mass += r.pdf_empirical * width;
        CHECK(r.pdf_theory == doctest::Approx(pdf(dist, r.delta)).epsilon(1e-13));
        CHECK(r.ccdf_theory == doctest::Approx(ccdf(dist, r.delta)).epsilon(1e-13));
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));

    // Bin centers sit at (i + 1/2) * width.
    CHECK(rows[0].delta == doctest::Approx(0.5 * width).epsilon(1e-12));
    CHECK(rows[49].delta == doctest::Approx(49.5 * width).epsilon(1e-12));

    // Empirical tail near the mean matches (8/9)^8 at 10^6 samples.
    double target = 10.0 / 63.0;
    size_t nearest = 0;
    for (size_t i = 1; i < rows.size(); i++)
        if (std::abs(rows[i].delta - target) < std::abs(rows[nearest].delta - target))
            nearest = i;
    CHECK(rows[nearest].ccdf_empirical ==
          doctest::Approx(ccdf(dist, rows[nearest].delta)).epsilon(0.01));

    // A single bin spans the support; its density is the average height 1/delta_max... only
    // approximately for finite samples, but normalization makes it exact.
    std::vector<EmpiricalRow> one = tabulate_empirical(dist, samples, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].pdf_empirical == doctest::Approx(1.0 / dist.delta_max()).epsilon(1e-12));
}

TEST_CASE("generated table equals tabulation of the same stream")
{
    SpacingDistribution dist(5, 2.0);
    std::mt19937_64 rng_a(77);
    std::vector<EmpiricalRow> direct = empirical_vs_theory(dist, 5000, 20, rng_a);
    std::mt19937_64 rng_b(77);
    std::vector<double> samples = sample_min_spacings(dist, 5000, rng_b);
    std::vector<EmpiricalRow> staged = tabulate_empirical(dist, samples, 20);
    REQUIRE(direct.size() == staged.size());
    for (size_t i = 0; i < direct.size(); i++)
    {
        CHECK(direct[i].pdf_empirical == staged[i].pdf_empirical);
        CHECK(direct[i].ccdf_empirical == staged[i].ccdf_empirical);
    }
}

TEST_CASE("one-sample distance against the analytic law stays below the 99% line")
{
    SpacingDistribution dist(8, 10.0);
    std::mt19937_64 rng(31337);
    const std::int64_t n = 200000;
    std::vector<double> samples = sample_min_spacings(dist, n, rng);
    double stat = ks_statistic(dist, samples);
    CHECK(stat > 0.0);
    CHECK(stat < oracles::ks_critical_99(static_cast<double>(n)));
}

TEST_CASE("distribution construction rejects bad parameters")
{
    CHECK_THROWS_AS(SpacingDistribution(1, 1.0), InvalidPortCountError);
    CHECK_THROWS_AS(SpacingDistribution(4, -1.0), InfeasibleConstraintsError);
}
