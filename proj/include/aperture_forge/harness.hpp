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

#ifndef APERTURE_FORGE_HARNESS_H
#define APERTURE_FORGE_HARNESS_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aperture_forge/optimizer.hpp"

namespace aperture_forge
{
    // Default RNG seed: APERTURE_FORGE_SEED from the environment, else 12345.
    uint64_t default_seed();

    // Independent per-task generator derived from a root seed by index, so
    // sweep points can run in any order (or concurrently) without coupling.
    std::mt19937_64 task_rng(uint64_t root_seed, uint64_t task_index);

    // Inclusive dB sweep "lo:step:hi".
    struct SnrRange
    {
        double lo_db = -10.0;
        double step_db = 2.0;
        double hi_db = 20.0;

        std::vector<double> values() const;
        static SnrRange parse(const std::string &text); // throws ConfigError
    };

    double db_to_linear(double db);
    double deg_to_rad(double deg);
    double rad_to_deg(double rad);

    // ----- spacing: minimum-spacing statistics vs. the analytic law -----

    struct SpacingConfig
    {
        std::vector<int> ports = {8};          // single M or a sweep
        std::optional<double> aperture;        // default (M-1)/2 per M
        int64_t samples = 100000;
        int bins = 50;
        uint64_t seed = 12345;
        std::string out = "spacing.csv";       // summary JSON derives from this
    };

    struct CommandOutputs
    {
        std::vector<std::string> files;
        std::vector<std::string> warnings;
    };

    CommandOutputs run_spacing(const SpacingConfig &config);

    // ----- design: projected-gradient placement optimization -----

    struct DesignConfig
    {
        std::vector<int> ports = {11};
        std::string init = "mra";              // mra | ula | random | path to a file
        OptimizerConfig optimizer;
        int log_every = 1;
        uint64_t seed = 12345;                 // only used by init = random
        std::string out_prefix = "design";
    };

    CommandOutputs run_design(const DesignConfig &config);

    // ----- crb: angle CRB of reference and optimized placements -----

    struct CrbConfig
    {
        std::vector<int> ports = {3, 5, 7, 9, 11};
        std::vector<std::string> schemes = {"ula", "mra", "opt"};
        std::optional<std::string> placement_file; // adds a "custom" row
        double theta_deg = 15.0;
        double snr_db = 10.0;
        int snapshots = 100;
        OptimizerConfig optimizer;              // used for the "opt" scheme
        std::string out = "crb.csv";
    };

    CommandOutputs run_crb(const CrbConfig &config);

    // ----- mse-bound: cosine-domain MSE upper bound across an SNR sweep ---

    struct MseBoundConfig
    {
        int ports = 5;
        std::vector<std::string> schemes = {"ula", "mra", "opt"};
        SnrRange snr;
        OptimizerConfig optimizer;
        std::string out = "mse_bound.csv";
    };

    CommandOutputs run_mse_bound(const MseBoundConfig &config);

    // ----- demo-estimate: end-to-end matched-filter AoA demo -----

    struct DemoConfig
    {
        int ports = 5;
        std::string scheme = "ula";            // ula | mra
        double theta_deg = 60.0;
        double snr_db = 20.0;
        int snapshots = 1000;
        int grid_size = 180;
        uint64_t seed = 12345;
        std::string out = "demo.json";
    };

    CommandOutputs run_demo_estimate(const DemoConfig &config);

    // Placement construction shared by the commands: "ula", "mra" (scaled
    // minimum-redundancy, ULA fallback with a warning when no table entry
    // exists), or "opt" (PGD from the mra/ula init). Aperture is (M-1)/2.
    ArrayGeometry scheme_placement(const std::string &scheme, int ports,
                                   const OptimizerConfig &optimizer,
                                   std::vector<std::string> *warnings);
}

#endif
