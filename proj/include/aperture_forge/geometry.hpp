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

#ifndef APERTURE_FORGE_GEOMETRY_H
#define APERTURE_FORGE_GEOMETRY_H

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace aperture_forge
{
    // Feasible linear port placement. Positions are in wavelength units
    // (lambda = 1), strictly increasing, with the first port pinned to 0, the
    // last port pinned to the aperture, and every adjacent gap >= min_spacing.
    // Instances are immutable values; build them through the factories below.
    struct ArrayGeometry
    {
        std::vector<double> positions; // sorted port locations, [0, W_max]
        double aperture = 0.0;         // W_max
        double min_spacing = 0.0;      // d_min

        int port_count() const { return static_cast<int>(positions.size()); }

        // Validates all invariants and returns the geometry, or throws
        // InvalidPortCountError / InfeasibleConstraintsError.
        static ArrayGeometry checked(std::vector<double> positions, double aperture, double min_spacing);
    };

    // Requested placement scheme for the generators in make_placement.
    enum class PlacementKind
    {
        ULA,       // uniform spread over [0, W_max]
        ScaledMRA, // minimum-redundancy indices scaled into [0, W_max]
        Custom,    // explicit position list
        Random     // i.i.d. uniform draws, projected to the feasible set
    };

    struct PlacementSpec
    {
        PlacementKind kind = PlacementKind::ULA;
        std::vector<double> custom_positions; // Custom only
        std::optional<std::uint64_t> seed;    // Random only
    };

    // Default minimum spacing W_max / (M^2 - 1), the expected minimum gap of
    // M ports dropped uniformly at random on [0, W_max].
    double default_min_spacing(int port_count, double aperture);

    // Half-wavelength uniform linear array: p_m = (m - 1) / 2.
    ArrayGeometry make_ula(int port_count);

    // Minimum-redundancy indices scaled linearly into [0, W_max]. Throws
    // UnsupportedPortCountError when the table has no entry for port_count.
    ArrayGeometry make_scaled_mra(int port_count, double aperture);

    // True when the embedded minimum-redundancy table covers port_count.
    bool has_mra_entry(int port_count);

    // Integer minimum-redundancy configuration for port_count; the pairwise
    // differences cover 1..max contiguously.
    const std::vector<int> &mra_indices(int port_count);

    // M i.i.d. Uniform(0, W_max) draws, returned unsorted.
    std::vector<double> random_placement(int port_count, double aperture, std::mt19937_64 &rng);

    // Feasibility restoration: sort, pin edges, then enforce the minimum gap
    // with one forward and one backward correction sweep. Idempotent on
    // feasible input; only interior ports move relative to the sorted,
    // edge-pinned input.
    ArrayGeometry project_feasible(std::vector<double> raw, double aperture, double min_spacing);

    // Sum of squared deviations from the centroid, sum_m (p_m - mean)^2.
    double geometric_variance(std::span<const double> positions);

    // Mean squared 2*pi-scaled pairwise difference,
    // (1/M^2) * sum_{u,v} (2*pi*(p_u - p_v))^2. Equals
    // (8*pi^2/M) * geometric_variance(positions).
    double effective_squared_aperture(std::span<const double> positions);

    // Reads one position per line (blank lines and '#' comments skipped).
    // Throws ConfigError with the offending line number on parse failures or
    // out-of-order values.
    std::vector<double> load_positions(const std::string &path);

    // Builds a geometry from an explicit ascending list starting at 0. The
    // aperture is the last position. When min_spacing is not given it
    // defaults to min(default_min_spacing, smallest gap) so any strictly
    // ascending list is accepted.
    ArrayGeometry make_custom(std::vector<double> positions, std::optional<double> min_spacing = std::nullopt);

    // Realizes a placement spec for the given port count and aperture.
    ArrayGeometry make_placement(const PlacementSpec &spec, int port_count, double aperture);
}

#endif
