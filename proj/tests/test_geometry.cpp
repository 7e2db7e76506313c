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

#include <cstdio>
#include <fstream>
#include <numbers>

#include "aperture_forge/errors.hpp"
#include "aperture_forge/geometry.hpp"
#include "support/oracles.hpp"

using namespace aperture_forge;

namespace
{
    void check_feasible(const ArrayGeometry &g)
    {
        REQUIRE(g.port_count() >= 2);
        CHECK(g.positions.front() == 0.0);
        CHECK(g.positions.back() == g.aperture);
        double slack = 1e-12 * std::max(1.0, g.aperture);
        for (int m = 1; m < g.port_count(); m++)
        {
            double gap = g.positions[m] - g.positions[m - 1];
            CHECK(gap > 0.0);
            CHECK(gap >= g.min_spacing - slack);
        }
    }
}

TEST_CASE("default minimum spacing is W/(M^2-1)")
{
    CHECK(default_min_spacing(8, 10.0) == doctest::Approx(10.0 / 63.0).epsilon(1e-14));
    CHECK(default_min_spacing(2, 0.5) == doctest::Approx(0.5 / 3.0).epsilon(1e-14));
    CHECK(default_min_spacing(5, 4.0) == doctest::Approx(2.0 * default_min_spacing(5, 2.0)).epsilon(1e-14));
}

TEST_CASE("uniform placement at half-wavelength pitch")
{
    ArrayGeometry g = make_ula(3);
    REQUIRE(g.port_count() == 3);
    CHECK(g.positions[0] == 0.0);
    CHECK(g.positions[1] == 0.5);
    CHECK(g.positions[2] == 1.0);
    CHECK(g.aperture == 1.0);
    check_feasible(g);

    CHECK_THROWS_AS(make_ula(1), InvalidPortCountError);
    CHECK_THROWS_AS(make_ula(0), InvalidPortCountError);
}

TEST_CASE("scaled minimum-redundancy placements")
{
    ArrayGeometry g4 = make_scaled_mra(4, 1.5);
    REQUIRE(g4.port_count() == 4);
    CHECK(g4.positions[0] == 0.0);
    CHECK(g4.positions[1] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(g4.positions[2] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g4.positions[3] == 1.5); // exact back pin

    ArrayGeometry g5 = make_scaled_mra(5, 2.0);
    CHECK(g5.positions[1] == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
    CHECK(g5.positions[2] == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
    CHECK(g5.positions[3] == doctest::Approx(14.0 / 9.0).epsilon(1e-14));
    CHECK(g5.positions[4] == 2.0);

    ArrayGeometry g2 = make_scaled_mra(2, 7.25);
    CHECK(g2.positions[0] == 0.0);
    CHECK(g2.positions[1] == 7.25);

    CHECK(has_mra_entry(2));
    CHECK(has_mra_entry(11));
    CHECK_FALSE(has_mra_entry(12));
    CHECK_FALSE(has_mra_entry(1));
    CHECK_THROWS_AS(make_scaled_mra(12, 5.5), UnsupportedPortCountError);
}

TEST_CASE("minimum-redundancy table entries cover their difference span")
{
    for (int m = 2; m <= 11; m++)
    {
        CAPTURE(m);
        const std::vector<int> &idx = mra_indices(m);
        REQUIRE(static_cast<int>(idx.size()) == m);
        CHECK(idx.front() == 0);
        CHECK(oracles::covers_contiguously(idx));
    }
}

TEST_CASE("minimum-redundancy table is optimal where exhaustive search is affordable")
{
    // The largest coverable span per port count, found independently.
    for (int m = 2; m <= 6; m++)
    {
        CAPTURE(m);
        int table_span = mra_indices(m).back();
        CHECK(oracles::best_ruler_aperture(m, table_span + 3) == table_span);
    }
}

TEST_CASE("random placement draws i.i.d. uniforms")
{
    std::mt19937_64 rng(2024);
    std::vector<double> first = random_placement(5, 10.0, rng);
    std::mt19937_64 rng2(2024);
    std::vector<double> second = random_placement(5, 10.0, rng2);
    CHECK(first == second); // seeded determinism

    std::mt19937_64 rng3(7);
    double sum = 0.0;
    const int draws = 200000; // 10^6 individual uniforms
    for (int i = 0; i < draws; i++)
        for (double x : random_placement(5, 10.0, rng3))
        {
            CHECK(x >= 0.0);
            CHECK(x <= 10.0);
            sum += x;
        }
    CHECK(sum / (5.0 * draws) == doctest::Approx(5.0).epsilon(0.002));
}

TEST_CASE("projection: hand-traced cases")
{
    ArrayGeometry a = project_feasible({0.0, 0.2, 1.0}, 1.0, 0.1);
    CHECK(a.positions == std::vector<double>{0.0, 0.2, 1.0}); // idempotent on feasible input

    ArrayGeometry b = project_feasible({0.3, 0.1, 0.2}, 1.0, 0.1);
    CHECK(b.positions[0] == 0.0);
    CHECK(b.positions[1] == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(b.positions[2] == 1.0);

    ArrayGeometry c = project_feasible({0.0, 0.01, 0.02, 1.0}, 1.0, 0.1);
    CHECK(c.positions[1] == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(c.positions[2] == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(c.positions[3] == 1.0);
}

TEST_CASE("projection: feasibility and idempotence on random raw inputs")
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 2000; trial++)
    {
        int m = 3 + static_cast<int>(rng() % 10); // 3..12
        double w = 0.5 * (m - 1);
        double d_min = default_min_spacing(m, w);
        std::vector<double> raw = random_placement(m, w, rng);

        ArrayGeometry once = project_feasible(raw, w, d_min);
        check_feasible(once);

        ArrayGeometry twice = project_feasible(once.positions, w, d_min);
        for (int i = 0; i < m; i++)
            CHECK(twice.positions[i] == doctest::Approx(once.positions[i]).epsilon(1e-14));
    }
}

TEST_CASE("projection rejects an impossible spacing demand")
{
    CHECK_THROWS_AS(project_feasible({0.0, 0.5, 1.0}, 1.0, 0.6), InfeasibleConstraintsError);
}

TEST_CASE("geometry validation rejects broken inputs")
{
    CHECK_THROWS_AS(ArrayGeometry::checked({0.0, 0.7, 0.4, 1.0}, 1.0, 0.1), InfeasibleConstraintsError);
    CHECK_THROWS_AS(ArrayGeometry::checked({0.1, 0.5, 1.0}, 1.0, 0.1), InfeasibleConstraintsError);
    CHECK_THROWS_AS(ArrayGeometry::checked({0.0, 0.5, 0.9}, 1.0, 0.1), InfeasibleConstraintsError);
    CHECK_THROWS_AS(ArrayGeometry::checked({0.0, 0.05, 1.0}, 1.0, 0.1), InfeasibleConstraintsError);
    CHECK_THROWS_AS(ArrayGeometry::checked({0.0}, 0.0, 0.0), InvalidPortCountError);
}

TEST_CASE("geometric variance: frozen values and invariances")
{
    CHECK(geometric_variance(std::vector<double>{0.0, 0.5, 1.0}) == doctest::Approx(0.5).epsilon(1e-14));
    // 0.75 is exact in binary, so the centroid subtraction cancels exactly.
    CHECK(geometric_variance(std::vector<double>{0.75, 0.75, 0.75}) == 0.0);

    // arithmetic progression at pitch 1/2: M (M^2 - 1) / 48
    ArrayGeometry ula11 = make_ula(11);
    CHECK(geometric_variance(ula11.positions) == doctest::Approx(27.5).epsilon(1e-13));
    for (int m = 2; m <= 16; m++)
    {
        ArrayGeometry g = make_ula(m);
        CHECK(geometric_variance(g.positions) ==
              doctest::Approx(m * (static_cast<double>(m) * m - 1.0) / 48.0).epsilon(1e-13));
    }

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; trial++)
    {
        ArrayGeometry g = oracles::random_feasible(3 + static_cast<int>(rng() % 8), 4.0, rng);
        std::vector<double> shifted = g.positions;
        double c = -3.0 + 6.0 * (static_cast<double>(rng() % 1000) / 1000.0);
        for (double &x : shifted)
            x += c;
        CHECK(geometric_variance(shifted) ==
              doctest::Approx(geometric_variance(g.positions)).epsilon(1e-9));
    }
}

TEST_CASE("effective squared aperture: frozen values and the pair-sum identity")
{
    double pi = std::numbers::pi;
    CHECK(effective_squared_aperture(std::vector<double>{0.0, 0.5, 1.0}) ==
          doctest::Approx(8.0 * pi * pi / 3.0 * 0.5).epsilon(1e-13));
    CHECK(effective_squared_aperture(std::vector<double>{0.0, 0.5}) ==
          doctest::Approx(pi * pi / 2.0).epsilon(1e-13));
    CHECK(effective_squared_aperture(std::vector<double>{0.3, 0.3, 0.3}) == 0.0);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 1000; trial++)
    {
        ArrayGeometry g = oracles::random_feasible(2 + static_cast<int>(rng() % 9), 5.0, rng);
        double lhs = effective_squared_aperture(g.positions);
        double rhs = 8.0 * pi * pi / g.port_count() * geometric_variance(g.positions);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        CHECK(lhs == doctest::Approx(oracles::lambda_double_sum(g.positions)).epsilon(1e-12));
    }
}

TEST_CASE("boundary clustering beats the uniform spread")
{
    // Interior ports split to the two edges give a larger variance than the
    // even spread, for every M >= 3.
    for (int m = 3; m <= 11; m++)
    {
        CAPTURE(m);
        double w = 0.5 * (m - 1);
        double eps = w * 1e-4;
        std::vector<double> clustered(static_cast<size_t>(m));
        for (int i = 0; i < m; i++)
        {
            int half = (m + 1) / 2;
            clustered[static_cast<size_t>(i)] = (i < half) ? i * eps : w - (m - 1 - i) * eps;
        }
        CHECK(geometric_variance(clustered) > geometric_variance(make_ula(m).positions));
    }
}

TEST_CASE("positions file: parsing and line-numbered failures")
{
    std::string good = "/tmp/af_test_positions_good.txt";
    {
        std::ofstream out(good);
        out << "# comment line\n0\n0.25\n\n1.0\n1.5\n";
    }
    std::vector<double> p = load_positions(good);
    REQUIRE(p.size() == 4);
    CHECK(p[1] == 0.25);
    CHECK(p[3] == 1.5);

    std::string bad = "/tmp/af_test_positions_bad.txt";
    {
        std::ofstream out(bad);
        out << "0\n0.5\nbogus\n";
    }
    try
    {
        load_positions(bad);
        FAIL("expected a parse error");
    }
    catch (const ConfigError &err)
    {
        CHECK(std::string(err.what()).find(":3:") != std::string::npos);
    }
    std::remove(good.c_str());
    std::remove(bad.c_str());
}

TEST_CASE("custom placements")
{
    ArrayGeometry g = make_custom({0.0, 0.3, 1.0});
    CHECK(g.aperture == 1.0);
    check_feasible(g);

    CHECK_THROWS_AS(make_custom({0.1, 0.5, 1.0}), InfeasibleConstraintsError);
    CHECK_THROWS_AS(make_custom({0.0, 0.5, 0.5}), InfeasibleConstraintsError);
}

TEST_CASE("placement specs realize every scheme")
{
    PlacementSpec ula_spec;
    ula_spec.kind = PlacementKind::ULA;
    ArrayGeometry u = make_placement(ula_spec, 5, 2.0);
    CHECK(u.positions[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(u.positions.back() == 2.0);

    PlacementSpec mra_spec;
    mra_spec.kind = PlacementKind::ScaledMRA;
    CHECK(make_placement(mra_spec, 5, 2.0).positions[1] == doctest::Approx(2.0 / 9.0).epsilon(1e-14));

    PlacementSpec random_spec;
    random_spec.kind = PlacementKind::Random;
    random_spec.seed = 11;
    ArrayGeometry r1 = make_placement(random_spec, 6, 2.5);
    ArrayGeometry r2 = make_placement(random_spec, 6, 2.5);
    CHECK(r1.positions == r2.positions);
    check_feasible(r1);

    PlacementSpec custom_spec;
    custom_spec.kind = PlacementKind::Custom;
    custom_spec.custom_positions = {0.0, 1.0, 2.5};
    CHECK(make_placement(custom_spec, 3, 2.5).positions[1] == 1.0);
}
