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

#include <cmath>
#include <numbers>

#include "aperture_forge/bounds.hpp"
#include "aperture_forge/errors.hpp"
#include "aperture_forge/harness.hpp"
#include "aperture_forge/optimizer.hpp"
#include "support/oracles.hpp"

using namespace aperture_forge;

namespace
{
    constexpr double kPi = std::numbers::pi;
}

TEST_CASE("operating-point validation")
{
    CHECK_THROWS_AS(CrbParams(-1.0, 1.0, 1), ConfigError);
    CHECK_THROWS_AS(CrbParams(4.0, 1.0, 1), ConfigError);
    CHECK_THROWS_AS(CrbParams(1.0, 0.0, 1), ConfigError);
    CHECK_THROWS_AS(CrbParams(1.0, -2.0, 1), ConfigError);
    CHECK_THROWS_AS(CrbParams(1.0, 1.0, 0), ConfigError);
    CHECK_THROWS_AS(CrbParams(1.0, 1.0, 1, 0.0), ConfigError);
    CHECK_NOTHROW(CrbParams(0.0, 1.0, 1));  // endfire is representable
    CHECK_NOTHROW(CrbParams(kPi, 1.0, 1)); // information is zero there

    CHECK_THROWS_AS(BoundParams(0.0), ConfigError);
    CHECK_THROWS_AS(BoundParams(-1.0), ConfigError);
}

TEST_CASE("angle information: frozen values and the projector-form oracle")
{
    ArrayGeometry ula3 = make_ula(3);

    // 2 * 1 * 1 * (2 pi)^2 * sin^2(pi/2) * 0.5 = 4 pi^2
    CrbParams unit(kPi / 2.0, 1.0, 1);
    CHECK(fim_theta(unit, ula3) == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-13));

    // Endfire carries no angle information.
    CrbParams endfire(0.0, 1.0, 1);
    CHECK(fim_theta(endfire, ula3) == 0.0);

    // The projector form 2 T SNR Re{da^H (I - a a^H / M) da} agrees with the
    // closed form through the geometric variance.
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 25; trial++)
    {
        ArrayGeometry g = oracles::random_feasible(3 + static_cast<int>(rng() % 6), 4.0, rng);
        double theta = 0.1 + (kPi - 0.2) * (static_cast<double>(rng() % 4096) / 4096.0);
        CrbParams params(theta, 3.0, 7);
        double closed = fim_theta(params, g);
        double projector = oracles::fim_projector(params, g);
        CHECK(closed == doctest::Approx(projector).epsilon(1e-8));
    }
}

TEST_CASE("angle variance bound: frozen values and scaling laws")
{
    ArrayGeometry ula3 = make_ula(3);
    CrbParams nominal(kPi / 2.0, 10.0, 100);
    CHECK(crb_theta(nominal, ula3) == doctest::Approx(2.5330295910584444e-5).epsilon(1e-12));

    // Doubling the snapshot count halves the bound.
    CrbParams twice(kPi / 2.0, 10.0, 200);
    CHECK(crb_theta(twice, ula3) == doctest::Approx(0.5 * crb_theta(nominal, ula3)).epsilon(1e-13));

    // Reference half-wavelength curves at 15 degrees, 10 dB, 100 snapshots.
    CrbParams vi(deg_to_rad(15.0), 10.0, 100);
    CHECK(crb_theta(vi, make_ula(11)) == doctest::Approx(6.875196458840387e-6).epsilon(1e-12));
    CHECK(crb_theta(vi, make_ula(5)) == doctest::Approx(7.562716104724424e-5).epsilon(1e-12));

    // Zero information is flagged instead of returning infinity.
    CrbParams endfire(0.0, 1.0, 1);
    CHECK_THROWS_AS(crb_theta(endfire, ula3), UnboundedCrbError);

    // Mirror symmetry about broadside.
    CrbParams left(0.4, 5.0, 10);
    CrbParams right(kPi - 0.4, 5.0, 10);
    CHECK(crb_theta(left, ula3) == doctest::Approx(crb_theta(right, ula3)).epsilon(1e-9));

    // Monotone improvement in SNR and in geometric variance.
    CrbParams low_snr(1.0, 2.0, 10);
    CrbParams high_snr(1.0, 4.0, 10);
    CHECK(crb_theta(high_snr, ula3) < crb_theta(low_snr, ula3));
    CHECK(crb_theta(low_snr, make_ula(7)) < crb_theta(low_snr, ula3));
}

TEST_CASE("wavenumber and position units cancel")
{
    // Metre positions with k = 2 pi / lambda give the same bound as
    // wavelength-normalized positions with k = 2 pi.
    double lambda = 0.3;
    ArrayGeometry normalized = make_custom({0.0, 0.4, 1.1, 2.0});
    std::vector<double> metres;
    for (double p : normalized.positions)
        metres.push_back(p * lambda);
    ArrayGeometry metric = make_custom(std::move(metres));

    CrbParams norm_params(1.1, 6.0, 50, kTwoPi);
    CrbParams metric_params(1.1, 6.0, 50, kTwoPi / lambda);
    CHECK(crb_theta(metric_params, metric) ==
          doctest::Approx(crb_theta(norm_params, normalized)).epsilon(1e-12));
}

TEST_CASE("cosine-domain MSE bound: assembly and scaling")
{
    ArrayGeometry pair = make_custom({0.0, 0.5});

    // lambda_bar^2 = pi^2 / 2 for ports {0, 1/2}; gamma_max from the dense
    // 180-point codebook Gram.
    AngleGrid grid = AngleGrid::uniform(180);
    GramSpectrum spectrum = max_eigpair(gram_matrix(build_codebook(pair, grid)));
    CHECK(spectrum.gamma_max == doctest::Approx(421.260326497).epsilon(1e-9));

    double bound = aoamse_upper_bound(BoundParams(1.0), pair, spectrum.gamma_max);
    CHECK(bound == doctest::Approx(16.0 * spectrum.gamma_max / ((kPi * kPi / 2.0) * 16.0)).epsilon(1e-12));

    // Quartic in the interference level: doubling sigma_z^2 quadruples it.
    CHECK(aoamse_upper_bound(BoundParams(2.0), pair, spectrum.gamma_max) ==
          doctest::Approx(4.0 * bound).epsilon(1e-13));

    // Dilating the aperture by 2 at fixed gamma_max divides it by 4.
    ArrayGeometry wide = make_custom({0.0, 1.0});
    CHECK(aoamse_upper_bound(BoundParams(1.0), wide, spectrum.gamma_max) ==
          doctest::Approx(0.25 * bound).epsilon(1e-13));

    CHECK_THROWS_AS(aoamse_upper_bound(BoundParams(1.0), pair, 0.0), UndefinedObjectiveError);
    CHECK_THROWS_AS(aoamse_upper_bound(BoundParams(1.0), pair, -3.0), UndefinedObjectiveError);
}
