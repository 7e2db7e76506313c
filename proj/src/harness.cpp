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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "aperture_forge/bounds.hpp"
#include "aperture_forge/errors.hpp"
#include "aperture_forge/harness.hpp"
#include "aperture_forge/io_util.hpp"
#include "aperture_forge/spacing_stats.hpp"
#include "aperture_forge/version.hpp"

namespace aperture_forge
{

uint64_t default_seed()
{
    const char *env = std::getenv("APERTURE_FORGE_SEED");
    if (env == nullptr || *env == '\0')
        return 12345;

    uint64_t value = 0;
    const char *end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc() || ptr != end)
        throw ConfigError("APERTURE_FORGE_SEED must be a non-negative integer, got: " + std::string(env));
    return value;
}

std::mt19937_64 task_rng(uint64_t root_seed, uint64_t task_index)
{
    // seed_seq keeps only 32 bits per element; split both words.
    std::seed_seq seq{static_cast<uint32_t>(root_seed), static_cast<uint32_t>(root_seed >> 32),
                      static_cast<uint32_t>(task_index), static_cast<uint32_t>(task_index >> 32)};
    return std::mt19937_64(seq);
}

std::vector<double> SnrRange::values() const
{
    if (!(step_db > 0.0))
        throw ConfigError("SNR range: step must be positive");
    if (hi_db < lo_db)
        throw ConfigError("SNR range: upper end below lower end");

    std::vector<double> out;
    int count = static_cast<int>(std::floor((hi_db - lo_db) / step_db + 0.5)) + 1;
    for (int i = 0; i < count; i++)
    {
        double v = lo_db + step_db * i;
        if (v > hi_db + 1e-9 * std::max(1.0, std::abs(hi_db)))
            break;
        out.push_back(v);
    }
    return out;
}

SnrRange SnrRange::parse(const std::string &text)
{
    size_t first = text.find(':');
    size_t second = (first == std::string::npos) ? std::string::npos : text.find(':', first + 1);
    if (first == std::string::npos || second == std::string::npos || text.find(':', second + 1) != std::string::npos)
        throw ConfigError("SNR range must be lo:step:hi, got: " + text);

    SnrRange range;
    try
    {
        range.lo_db = std::stod(text.substr(0, first));
        range.step_db = std::stod(text.substr(first + 1, second - first - 1));
        range.hi_db = std::stod(text.substr(second + 1));
    }
    catch (const std::exception &)
    {
        throw ConfigError("SNR range must be numeric lo:step:hi, got: " + text);
    }
    range.values(); // validates
    return range;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

namespace
{
    std::string sibling_path(const std::string &out, const std::string &suffix)
    {
        std::filesystem::path p(out);
        std::filesystem::path dir = p.parent_path();
        std::string stem = p.stem().string();
        return (dir / (stem + suffix)).string();
    }

    std::string join_ints(const std::vector<int> &values)
    {
        std::string out;
        for (size_t i = 0; i < values.size(); i++)
            out += (i ? "," : "") + std::to_string(values[i]);
        return out;
    }

    std::string join_strings(const std::vector<std::string> &values)
    {
        std::string out;
        for (size_t i = 0; i < values.size(); i++)
            out += (i ? "," : "") + values[i];
        return out;
    }

    std::string rule_name(UpdateRule rule)
    {
        return rule == UpdateRule::PaperLiteral ? "paper-literal" : "velocity-momentum";
    }

    std::string min_spacing_text(const std::optional<double> &d_min)
    {
        return d_min ? format_num(*d_min) : std::string("auto");
    }

    nlohmann::json optimizer_echo(const OptimizerConfig &config)
    {
        nlohmann::json echo;
        echo["step_alpha"] = config.step_alpha;
        echo["momentum_beta"] = config.momentum_beta;
        echo["max_iters"] = config.max_iters;
        if (config.min_spacing)
            echo["d_min"] = *config.min_spacing;
        else
            echo["d_min"] = "auto";
        echo["grid_size"] = config.grid_size;
        echo["update_rule"] = rule_name(config.update_rule);
        echo["convergence_tol"] = config.convergence_tol;
        echo["convergence_patience"] = config.convergence_patience;
        echo["eig_tol"] = config.eig_tol;
        return echo;
    }

    void optimizer_comments(CsvWriter &csv, const OptimizerConfig &config)
    {
        csv.comment("step_alpha", format_num(config.step_alpha));
        csv.comment("momentum_beta", format_num(config.momentum_beta));
        csv.comment("max_iters", std::to_string(config.max_iters));
        csv.comment("d_min", min_spacing_text(config.min_spacing));
        csv.comment("grid_size", std::to_string(config.grid_size));
        csv.comment("update_rule", rule_name(config.update_rule));
    }

    void tool_comments(CsvWriter &csv, const std::string &command)
    {
        csv.comment("tool", kToolName);
        csv.comment("version", kVersion);
        csv.comment("command", command);
    }

    nlohmann::json tool_header(const std::string &command)
    {
        nlohmann::json doc;
        doc["tool"] = kToolName;
        doc["version"] = kVersion;
        doc["command"] = command;
        return doc;
    }

    nlohmann::json placement_report(const ArrayGeometry &geometry, const AngleGrid &grid)
    {
        ObjectiveValue value = objective_value(geometry, grid);
        nlohmann::json doc;
        doc["positions"] = geometry.positions;
        doc["J"] = value.objective;
        doc["gamma_max"] = value.gamma_max;
        doc["lambda_bar_sq"] = value.lambda_bar_sq;
        return doc;
    }
}

ArrayGeometry scheme_placement(const std::string &scheme, int ports,
                               const OptimizerConfig &optimizer,
                               std::vector<std::string> *warnings)
{
    double aperture = 0.5 * (ports - 1);

    if (scheme == "ula")
        return make_ula(ports);

    if (scheme == "mra")
    {
        if (has_mra_entry(ports))
            return make_scaled_mra(ports, aperture);
        if (warnings != nullptr)
            warnings->push_back("no minimum-redundancy table entry for M=" + std::to_string(ports) +
                                "; using the uniform placement instead");
        return make_ula(ports);
    }

    if (scheme == "opt")
    {
        ArrayGeometry init = scheme_placement("mra", ports, optimizer, warnings);
        AngleGrid grid = AngleGrid::uniform(optimizer.grid_size);
        return pgd_optimize(init, optimizer, grid).geometry;
    }

    throw ConfigError("unknown placement scheme: " + scheme + " (expected ula, mra, or opt)");
}

// ---------------------------------------------------------------------------
// spacing
// ---------------------------------------------------------------------------

CommandOutputs run_spacing(const SpacingConfig &config)
{
    if (config.ports.empty())
        throw ConfigError("spacing: at least one port count is required");
    if (config.samples < 0)
        throw ConfigError("spacing: samples must be non-negative");
    if (config.bins < 1)
        throw ConfigError("spacing: bins must be >= 1");

    CommandOutputs outputs;

    nlohmann::json config_echo;
    config_echo["ports"] = config.ports;
    if (config.aperture)
        config_echo["aperture"] = *config.aperture;
    else
        config_echo["aperture"] = "auto";
    config_echo["samples"] = config.samples;
    config_echo["bins"] = config.bins;
    config_echo["seed"] = config.seed;
    config_echo["out"] = config.out;

    auto aperture_for = [&](int m) { return config.aperture ? *config.aperture : 0.5 * (m - 1); };

    if (config.ports.size() == 1)
    {
        int m = config.ports.front();
        double w = aperture_for(m);
        SpacingDistribution dist(m, w);

        std::vector<double> samples;
        if (config.samples > 0)
        {
            std::mt19937_64 rng = task_rng(config.seed, 0);
            samples = sample_min_spacings(dist, config.samples, rng);
        }

        CsvWriter csv(config.out);
        tool_comments(csv, "spacing");
        csv.comment("ports", std::to_string(m));
        csv.comment("aperture", format_num(w));
        csv.comment("samples", std::to_string(config.samples));
        csv.comment("bins", std::to_string(config.bins));
        csv.comment("seed", std::to_string(config.seed));
        csv.header({"delta", "pdf_theory", "pdf_empirical", "ccdf_theory", "ccdf_empirical"});

        if (samples.empty())
        {
            // Theory-only table at bin centers.
            double width = dist.delta_max() / config.bins;
            for (int b = 0; b < config.bins; b++)
            {
                double center = (b + 0.5) * width;
                csv.row({format_num(center), format_num(pdf(dist, center)), "",
                         format_num(ccdf(dist, center)), ""});
            }
        }
        else
        {
            for (const EmpiricalRow &r : tabulate_empirical(dist, samples, config.bins))
                csv.numeric_row({r.delta, r.pdf_theory, r.pdf_empirical, r.ccdf_theory, r.ccdf_empirical});
        }
        csv.close();
        outputs.files.push_back(config.out);

        nlohmann::json summary = tool_header("spacing");
        summary["config"] = config_echo;
        summary["M"] = m;
        summary["W_max"] = w;
        summary["expected_theory"] = expected_min_spacing(dist);
        if (samples.empty())
            summary["expected_empirical"] = nullptr;
        else
        {
            double mean = 0.0;
            for (double s : samples)
                mean += s;
            summary["expected_empirical"] = mean / static_cast<double>(samples.size());
        }
        summary["samples"] = config.samples;
        summary["seed"] = config.seed;

        std::string summary_path = sibling_path(config.out, "_summary.json");
        write_json_file(summary_path, summary);
        outputs.files.push_back(summary_path);
        return outputs;
    }

    // Sweep mode: one summary row per port count.
    CsvWriter csv(config.out);
    tool_comments(csv, "spacing");
    csv.comment("ports", join_ints(config.ports));
    csv.comment("aperture", config.aperture ? format_num(*config.aperture) : std::string("auto"));
    csv.comment("samples", std::to_string(config.samples));
    csv.comment("seed", std::to_string(config.seed));
    csv.header({"M", "W_max", "expected_theory", "expected_empirical", "rel_error"});

    nlohmann::json rows = nlohmann::json::array();
    for (size_t i = 0; i < config.ports.size(); i++)
    {
        int m = config.ports[i];
        double w = aperture_for(m);
        SpacingDistribution dist(m, w);
        double theory = expected_min_spacing(dist);

        nlohmann::json row;
        row["M"] = m;
        row["W_max"] = w;
        row["expected_theory"] = theory;
        row["samples"] = config.samples;
        row["seed"] = config.seed;

        if (config.samples > 0)
        {
            std::mt19937_64 rng = task_rng(config.seed, i);
            std::vector<double> samples = sample_min_spacings(dist, config.samples, rng);
            double mean = 0.0;
            for (double s : samples)
                mean += s;
            mean /= static_cast<double>(samples.size());
            double rel = std::abs(mean - theory) / theory;
            csv.numeric_row({static_cast<double>(m), w, theory, mean, rel});
            row["expected_empirical"] = mean;
        }
        else
        {
            csv.row({std::to_string(m), format_num(w), format_num(theory), "", ""});
            row["expected_empirical"] = nullptr;
        }
        rows.push_back(row);
    }
    csv.close();
    outputs.files.push_back(config.out);

    nlohmann::json summary = tool_header("spacing");
    summary["config"] = config_echo;
    summary["rows"] = rows;
    std::string summary_path = sibling_path(config.out, "_summary.json");
    write_json_file(summary_path, summary);
    outputs.files.push_back(summary_path);
    return outputs;
}

// ---------------------------------------------------------------------------
// design
// ---------------------------------------------------------------------------

CommandOutputs run_design(const DesignConfig &config)
{
    if (config.ports.empty())
        throw ConfigError("design: at least one port count is required");
    if (config.log_every < 1)
        throw ConfigError("design: log-every must be >= 1");
    config.optimizer.validate();

    CommandOutputs outputs;
    AngleGrid grid = AngleGrid::uniform(config.optimizer.grid_size);

    for (size_t i = 0; i < config.ports.size(); i++)
    {
        int m = config.ports[i];
        double aperture = 0.5 * (m - 1);

        ArrayGeometry init = [&]() -> ArrayGeometry {
            if (config.init == "ula")
                return make_ula(m);
            if (config.init == "mra")
                return scheme_placement("mra", m, config.optimizer, &outputs.warnings);
            if (config.init == "random")
            {
                std::mt19937_64 rng = task_rng(config.seed, i);
                double d_min = config.optimizer.min_spacing ? *config.optimizer.min_spacing
                                                            : default_min_spacing(m, aperture);
                return project_feasible(random_placement(m, aperture, rng), aperture, d_min);
            }
            // Anything else is a positions file.
            return make_custom(load_positions(config.init), config.optimizer.min_spacing);
        }();

        OptimizeResult result = pgd_optimize(init, config.optimizer, grid);
        const ConvergenceTrace &trace = result.trace;

        auto logged = [&](int iter) {
            int last = trace.records.back().iteration;
            return iter % config.log_every == 0 || iter == last;
        };

        std::string trace_path = config.out_prefix + "_M" + std::to_string(m) + "_trace.csv";
        CsvWriter csv(trace_path);
        tool_comments(csv, "design");
        csv.comment("ports", std::to_string(m));
        csv.comment("init", config.init);
        optimizer_comments(csv, config.optimizer);
        csv.comment("log_every", std::to_string(config.log_every));
        csv.comment("seed", std::to_string(config.seed));
        csv.header({"iter", "J", "gamma_max", "lambda_bar_sq"});
        for (const TraceRecord &rec : trace.records)
            if (logged(rec.iteration))
                csv.numeric_row({static_cast<double>(rec.iteration), rec.objective, rec.gamma_max,
                                 rec.lambda_bar_sq});
        csv.close();
        outputs.files.push_back(trace_path);

        nlohmann::json doc = tool_header("design");
        nlohmann::json config_echo;
        config_echo["ports"] = config.ports;
        config_echo["init"] = config.init;
        config_echo["optimizer"] = optimizer_echo(config.optimizer);
        config_echo["log_every"] = config.log_every;
        config_echo["seed"] = config.seed;
        config_echo["out_prefix"] = config.out_prefix;
        doc["config"] = config_echo;
        doc["M"] = m;
        doc["status"] = (trace.status == OptimizerStatus::Converged) ? "converged" : "max-iters";
        doc["iterations"] = trace.records.back().iteration;
        doc["degenerate_warnings"] = trace.degenerate_warnings;
        doc["backtrack_failures"] = trace.backtrack_failures;

        const TraceRecord &first = trace.records.front();
        const TraceRecord &last = trace.records.back();
        doc["initial"] = {{"positions", first.positions},
                          {"J", first.objective},
                          {"gamma_max", first.gamma_max},
                          {"lambda_bar_sq", first.lambda_bar_sq}};
        doc["final"] = {{"positions", last.positions},
                        {"J", last.objective},
                        {"gamma_max", last.gamma_max},
                        {"lambda_bar_sq", last.lambda_bar_sq}};

        doc["references"]["ula"] = placement_report(make_ula(m), grid);
        if (has_mra_entry(m))
            doc["references"]["mra"] = placement_report(make_scaled_mra(m, aperture), grid);
        else
            doc["references"]["mra"] = nullptr;

        nlohmann::json iterates = nlohmann::json::array();
        for (const TraceRecord &rec : trace.records)
            if (logged(rec.iteration))
                iterates.push_back({{"iter", rec.iteration}, {"positions", rec.positions}});
        doc["trace_positions"] = iterates;

        std::string design_path = config.out_prefix + "_M" + std::to_string(m) + "_design.json";
        write_json_file(design_path, doc);
        outputs.files.push_back(design_path);
    }

    return outputs;
}

// ---------------------------------------------------------------------------
// crb
// ---------------------------------------------------------------------------

CommandOutputs run_crb(const CrbConfig &config)
{
    if (config.ports.empty())
        throw ConfigError("crb: at least one port count is required");
    if (config.schemes.empty() && !config.placement_file)
        throw ConfigError("crb: no placement schemes requested");
    config.optimizer.validate();

    // Endfire angles have zero Fisher information; reject them in degrees,
    // before the radian conversion can blur the endpoint.
    if (config.theta_deg <= 0.0 || config.theta_deg >= 180.0)
        throw ConfigError("crb: theta_deg must lie strictly inside (0, 180)");
    CrbParams params(deg_to_rad(config.theta_deg), db_to_linear(config.snr_db), config.snapshots);

    CommandOutputs outputs;
    AngleGrid grid = AngleGrid::uniform(config.optimizer.grid_size);

    CsvWriter csv(config.out);
    tool_comments(csv, "crb");
    csv.comment("ports", join_ints(config.ports));
    csv.comment("schemes", join_strings(config.schemes));
    csv.comment("theta_deg", format_num(config.theta_deg));
    csv.comment("snr_db", format_num(config.snr_db));
    csv.comment("snapshots", std::to_string(config.snapshots));
    optimizer_comments(csv, config.optimizer);
    if (config.placement_file)
        csv.comment("placement_file", *config.placement_file);
    csv.header({"scheme", "M", "gamma_max", "L_geo", "crb"});

    auto emit = [&](const std::string &scheme, const ArrayGeometry &geometry) {
        ObjectiveValue value = objective_value(geometry, grid);
        double l_geo = geometric_variance(geometry.positions);
        double crb = crb_theta(params, geometry);
        csv.row({scheme, std::to_string(geometry.port_count()), format_num(value.gamma_max),
                 format_num(l_geo), format_num(crb)});
    };

    for (int m : config.ports)
        for (const std::string &scheme : config.schemes)
            emit(scheme, scheme_placement(scheme, m, config.optimizer, &outputs.warnings));

    if (config.placement_file)
        emit("custom", make_custom(load_positions(*config.placement_file), std::nullopt));

    csv.close();
    outputs.files.push_back(config.out);
    return outputs;
}

// ---------------------------------------------------------------------------
// mse-bound
// ---------------------------------------------------------------------------

CommandOutputs run_mse_bound(const MseBoundConfig &config)
{
    if (config.schemes.empty())
        throw ConfigError("mse-bound: no placement schemes requested");
    config.optimizer.validate();

    CommandOutputs outputs;
    AngleGrid grid = AngleGrid::uniform(config.optimizer.grid_size);
    std::vector<double> snrs = config.snr.values();

    // gamma_max and the aperture statistic do not depend on SNR, so each
    // scheme is evaluated once. The uniform placement is always computed as
    // the baseline of the reduction column.
    struct SchemeEval
    {
        std::string name;
        ArrayGeometry geometry;
        ObjectiveValue value;
    };

    ArrayGeometry ula = make_ula(config.ports);
    ObjectiveValue ula_value = objective_value(ula, grid);

    std::vector<SchemeEval> evals;
    for (const std::string &scheme : config.schemes)
    {
        if (scheme == "ula")
        {
            evals.push_back({scheme, ula, ula_value});
            continue;
        }
        ArrayGeometry geometry = scheme_placement(scheme, config.ports, config.optimizer, &outputs.warnings);
        ObjectiveValue value = objective_value(geometry, grid);
        evals.push_back({scheme, std::move(geometry), std::move(value)});
    }

    std::string range_text = format_num(config.snr.lo_db) + ":" + format_num(config.snr.step_db) +
                             ":" + format_num(config.snr.hi_db);

    CsvWriter csv(config.out);
    tool_comments(csv, "mse-bound");
    csv.comment("ports", std::to_string(config.ports));
    csv.comment("schemes", join_strings(config.schemes));
    csv.comment("snr_db_range", range_text);
    csv.comment("sigma_z_policy", "noise-only (sigma_z_sq = sigma_n_sq, unit signal power)");
    optimizer_comments(csv, config.optimizer);
    csv.header({"scheme", "M", "snr_db", "sigma_z_sq", "gamma_max", "lambda_bar_sq", "bound",
                "reduction_vs_ula"});

    for (const SchemeEval &eval : evals)
    {
        for (double snr_db : snrs)
        {
            double sigma_z_sq = 1.0 / db_to_linear(snr_db); // unit signal power
            BoundParams bp(sigma_z_sq);
            double bound = aoamse_upper_bound(bp, eval.geometry, eval.value.gamma_max);
            double baseline = aoamse_upper_bound(bp, ula, ula_value.gamma_max);
            double reduction = 1.0 - bound / baseline;
            csv.row({eval.name, std::to_string(config.ports), format_num(snr_db),
                     format_num(sigma_z_sq), format_num(eval.value.gamma_max),
                     format_num(eval.value.lambda_bar_sq), format_num(bound), format_num(reduction)});
        }
    }

    csv.close();
    outputs.files.push_back(config.out);
    return outputs;
}

// ---------------------------------------------------------------------------
// demo-estimate
// ---------------------------------------------------------------------------

CommandOutputs run_demo_estimate(const DemoConfig &config)
{
    if (config.snapshots < 1)
        throw ConfigError("demo-estimate: snapshots must be >= 1");
    if (config.grid_size < 2)
        throw ConfigError("demo-estimate: grid_size must be >= 2");

    double theta = deg_to_rad(config.theta_deg);
    if (!(theta > 0.0) || !(theta < std::numbers::pi))
        throw ConfigError("demo-estimate: theta_deg must lie strictly inside (0, 180)");

    CommandOutputs outputs;

    OptimizerConfig optimizer;
    optimizer.grid_size = config.grid_size;
    ArrayGeometry geometry = scheme_placement(config.scheme, config.ports, optimizer, &outputs.warnings);
    AngleGrid grid = AngleGrid::uniform(config.grid_size);
    Codebook codebook = build_codebook(geometry, grid);

    double sigma_n_sq = 1.0 / db_to_linear(config.snr_db);
    std::mt19937_64 rng = task_rng(config.seed, 0);
    SnapshotMatrix snapshots = synth_snapshots(theta, geometry, 1.0, sigma_n_sq, config.snapshots, rng);
    Eigen::MatrixXcd covariance = sample_covariance(snapshots);
    Eigen::VectorXcd y = vectorize_covariance(covariance);
    GridEstimate estimate = matched_grid_estimate(y, codebook);

    double cell = grid.size() > 1 ? std::numbers::pi / (grid.size() - 1) : std::numbers::pi;
    double err = std::abs(estimate.angle - theta);

    nlohmann::json doc = tool_header("demo-estimate");
    nlohmann::json config_echo;
    config_echo["ports"] = config.ports;
    config_echo["scheme"] = config.scheme;
    config_echo["theta_deg"] = config.theta_deg;
    config_echo["snr_db"] = config.snr_db;
    config_echo["snapshots"] = config.snapshots;
    config_echo["grid_size"] = config.grid_size;
    config_echo["seed"] = config.seed;
    config_echo["out"] = config.out;
    doc["config"] = config_echo;
    doc["seed"] = config.seed;
    doc["positions"] = geometry.positions;
    doc["true_theta_rad"] = theta;
    doc["true_theta_deg"] = config.theta_deg;
    doc["estimated_theta_rad"] = estimate.angle;
    doc["estimated_theta_deg"] = rad_to_deg(estimate.angle);
    doc["grid_index"] = estimate.index;
    doc["score"] = estimate.score;
    doc["abs_error_rad"] = err;
    doc["abs_error_deg"] = rad_to_deg(err);
    doc["grid_cell_rad"] = cell;
    doc["within_one_cell"] = (err <= cell + 1e-12);

    write_json_file(config.out, doc);
    outputs.files.push_back(config.out);
    return outputs;
}

}
