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

#include "aperture_forge/geometry.hpp"
#include "aperture_forge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace aperture_forge
{
    namespace
    {
        // Absolute slack for feasibility comparisons. The projection sweeps
        // are exact in real arithmetic; this absorbs the last-ulp rounding of
        // repeated p + d_min / p - d_min updates.
        double feasibility_slack(double aperture)
        {
            return 1e-12 * std::max(1.0, aperture);
        }

        // Restricted minimum-redundancy configurations: integer placements
        // whose pairwise differences cover 1..max contiguously with the
        // smallest possible max. Entries are machine-checked by the test
        // suite (exhaustively for M <= 6, coverage-only above).
        const std::map<int, std::vector<int>> &mra_table()
        {
            static const std::map<int, std::vector<int>> table = {
                {2, {0, 1}},
                {3, {0, 1, 3}},
                {4, {0, 1, 4, 6}},
                {5, {0, 1, 4, 7, 9}},
                {6, {0, 1, 6, 9, 11, 13}},
                {7, {0, 1, 2, 3, 8, 13, 17}},
                {8, {0, 1, 2, 11, 15, 18, 21, 23}},
                {9, {0, 1, 2, 14, 18, 21, 24, 27, 29}},
                {10, {0, 1, 3, 6, 13, 20, 27, 31, 35, 36}},
                {11, {0, 1, 3, 6, 13, 20, 27, 34, 38, 42, 43}},
            };
            return table;
        }

        void require_port_count(int port_count)
        {
            if (port_count < 2)
                throw InvalidPortCountError("port count must be at least 2, got " + std::to_string(port_count));
        }
    }

    ArrayGeometry ArrayGeometry::checked(std::vector<double> positions, double aperture, double min_spacing)
    {
        const int M = static_cast<int>(positions.size());
        require_port_count(M);
        if (!(aperture >= 0.0))
            throw InfeasibleConstraintsError("aperture must be non-negative");
        if (!(min_spacing >= 0.0))
            throw InfeasibleConstraintsError("minimum spacing must be non-negative");

        const double slack = feasibility_slack(aperture);
        if (static_cast<double>(M - 1) * min_spacing > aperture + slack)
            throw InfeasibleConstraintsError("(M-1)*d_min = " + std::to_string((M - 1) * min_spacing) +
                                             " exceeds the aperture " + std::to_string(aperture));
        if (positions.front() != 0.0 || positions.back() != aperture)
            throw InfeasibleConstraintsError("edge ports must sit exactly at 0 and W_max");

        for (int m = 1; m < M; ++m)
        {
            const double gap = positions[m] - positions[m - 1];
            if (!(gap > 0.0))
                throw InfeasibleConstraintsError("positions must be strictly increasing (ports " +
                                                 std::to_string(m) + "," + std::to_string(m + 1) + ")");
            if (gap < min_spacing - slack)
                throw InfeasibleConstraintsError("gap " + std::to_string(gap) + " between ports " +
                                                 std::to_string(m) + "," + std::to_string(m + 1) +
                                                 " is below d_min = " + std::to_string(min_spacing));
        }

        ArrayGeometry g;
        g.positions = std::move(positions);
        g.aperture = aperture;
        g.min_spacing = min_spacing;
        return g;
    }

    double default_min_spacing(int port_count, double aperture)
    {
        require_port_count(port_count);
        const double M = static_cast<double>(port_count);
        return aperture / (M * M - 1.0);
    }

    ArrayGeometry make_ula(int port_count)
    {
        require_port_count(port_count);
        std::vector<double> p(static_cast<std::size_t>(port_count));
        for (int m = 0; m < port_count; ++m)
            p[static_cast<std::size_t>(m)] = 0.5 * static_cast<double>(m);
        const double aperture = 0.5 * static_cast<double>(port_count - 1);
        return ArrayGeometry::checked(std::move(p), aperture, default_min_spacing(port_count, aperture));
    }

    bool has_mra_entry(int port_count)
    {
        return mra_table().count(port_count) != 0;
    }

    const std::vector<int> &mra_indices(int port_count)
    {
        auto it = mra_table().find(port_count);
        if (it == mra_table().end())
            throw UnsupportedPortCountError("no minimum-redundancy entry for M = " + std::to_string(port_count) +
                                            " (table covers 2..11)");
        return it->second;
    }

    ArrayGeometry make_scaled_mra(int port_count, double aperture)
    {
        require_port_count(port_count);
        const std::vector<int> &idx = mra_indices(port_count);
        const double max_idx = static_cast<double>(idx.back());
        std::vector<double> p(idx.size());
        for (std::size_t m = 0; m < idx.size(); ++m)
            p[m] = static_cast<double>(idx[m]) / max_idx * aperture;
        p.back() = aperture; // exact edge pin
        return ArrayGeometry::checked(std::move(p), aperture, default_min_spacing(port_count, aperture));
    }

    std::vector<double> random_placement(int port_count, double aperture, std::mt19937_64 &rng)
    {
        require_port_count(port_count);
        if (!(aperture > 0.0))
            throw InfeasibleConstraintsError("random placement needs a positive aperture");
        std::uniform_real_distribution<double> uniform(0.0, aperture);
        std::vector<double> draws(static_cast<std::size_t>(port_count));
        for (auto &d : draws)
            d = uniform(rng);
        return draws;
    }

    ArrayGeometry project_feasible(std::vector<double> raw, double aperture, double min_spacing)
    {
        const int M = static_cast<int>(raw.size());
        require_port_count(M);
        if (!(min_spacing >= 0.0))
            throw InfeasibleConstraintsError("minimum spacing must be non-negative");
        if (static_cast<double>(M - 1) * min_spacing > aperture + feasibility_slack(aperture))
            throw InfeasibleConstraintsError("(M-1)*d_min exceeds the aperture: constraint set is empty");

        std::sort(raw.begin(), raw.end());
        raw.front() = 0.0;
        raw.back() = aperture;
        for (int m = 1; m + 1 < M; ++m)
            raw[static_cast<std::size_t>(m)] =
                std::max(raw[static_cast<std::size_t>(m)], raw[static_cast<std::size_t>(m - 1)] + min_spacing);
        for (int m = M - 2; m >= 1; --m)
            raw[static_cast<std::size_t>(m)] =
                std::min(raw[static_cast<std::size_t>(m)], raw[static_cast<std::size_t>(m + 1)] - min_spacing);

        return ArrayGeometry::checked(std::move(raw), aperture, min_spacing);
    }

    double geometric_variance(std::span<const double> positions)
    {
        if (positions.empty())
            throw InvalidPortCountError("geometric_variance needs at least one position");
        double mean = 0.0;
        for (double p : positions)
            mean += p;
        mean /= static_cast<double>(positions.size());
        double acc = 0.0;
        for (double p : positions)
            acc += (p - mean) * (p - mean);
        return acc;
    }

    double effective_squared_aperture(std::span<const double> positions)
    {
        const std::size_t M = positions.size();
        if (M < 2)
            throw InvalidPortCountError("effective_squared_aperture needs at least two positions");
        constexpr double two_pi = 2.0 * std::numbers::pi;
        double acc = 0.0;
        for (std::size_t u = 0; u < M; ++u)
            for (std::size_t v = 0; v < M; ++v)
            {
                const double d = two_pi * (positions[u] - positions[v]);
                acc += d * d;
            }
        return acc / (static_cast<double>(M) * static_cast<double>(M));
    }

    std::vector<double> load_positions(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open placement file: " + path);

        std::vector<double> positions;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line))
        {
            ++line_no;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#')
                continue;

            std::istringstream ss(line);
            double value = 0.0;
            if (!(ss >> value))
                throw ConfigError(path + ":" + std::to_string(line_no) + ": not a number: '" + line + "'");
            std::string rest;
            if (ss >> rest)
                throw ConfigError(path + ":" + std::to_string(line_no) + ": trailing content: '" + rest + "'");
            if (!positions.empty() && value <= positions.back())
                throw ConfigError(path + ":" + std::to_string(line_no) + ": positions must be strictly ascending");
            positions.push_back(value);
        }
        if (positions.size() < 2)
            throw ConfigError(path + ": placement file needs at least two positions");
        return positions;
    }

    ArrayGeometry make_custom(std::vector<double> positions, std::optional<double> min_spacing)
    {
        const int M = static_cast<int>(positions.size());
        require_port_count(M);
        if (positions.front() != 0.0)
            throw InfeasibleConstraintsError("custom placements must start at 0 (got " +
                                             std::to_string(positions.front()) + ")");
        const double aperture = positions.back();
        double d_min;
        if (min_spacing.has_value())
            d_min = *min_spacing;
        else
        {
            double min_gap = aperture;
            for (int m = 1; m < M; ++m)
                min_gap = std::min(min_gap, positions[static_cast<std::size_t>(m)] -
                                                positions[static_cast<std::size_t>(m - 1)]);
            d_min = std::min(default_min_spacing(M, aperture), min_gap);
        }
        return ArrayGeometry::checked(std::move(positions), aperture, d_min);
    }

    ArrayGeometry make_placement(const PlacementSpec &spec, int port_count, double aperture)
    {
        require_port_count(port_count);
        switch (spec.kind)
        {
        case PlacementKind::ULA:
        {
            const double step = aperture / static_cast<double>(port_count - 1);
            std::vector<double> p(static_cast<std::size_t>(port_count));
            for (int m = 0; m < port_count; ++m)
                p[static_cast<std::size_t>(m)] = static_cast<double>(m) * step;
            p.back() = aperture;
            return ArrayGeometry::checked(std::move(p), aperture, default_min_spacing(port_count, aperture));
        }
        case PlacementKind::ScaledMRA:
            return make_scaled_mra(port_count, aperture);
        case PlacementKind::Custom:
        {
            if (static_cast<int>(spec.custom_positions.size()) != port_count)
                throw ConfigError("custom placement has " + std::to_string(spec.custom_positions.size()) +
                                  " positions, expected " + std::to_string(port_count));
            return make_custom(spec.custom_positions);
        }
        case PlacementKind::Random:
        {
            std::mt19937_64 rng(spec.seed.value_or(0));
            auto draws = random_placement(port_count, aperture, rng);
            return project_feasible(std::move(draws), aperture, default_min_spacing(port_count, aperture));
        }
        }
        throw ConfigError("unknown placement kind");
    }
}
