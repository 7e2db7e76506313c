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
//
// Command-line front end. Every flag has a snake_case alias matching the
// JSON config key, `--config file.json` supplies defaults that explicit
// flags override, and failures map to stable exit codes:
//   0 success, 1 I/O or internal error, 2 configuration error,
//   3 infeasible placement constraints, 4 numerical failure.

#include <charconv>
#include <iostream>

#include "CLI11.hpp"

#include "aperture_forge/errors.hpp"
#include "aperture_forge/harness.hpp"
#include "aperture_forge/io_util.hpp"
#include "aperture_forge/version.hpp"

namespace af = aperture_forge;

namespace
{

int parse_int_strict(const std::string &text, const std::string &what)
{
    int value = 0;
    const char *begin = text.data();
    const char *end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw af::ConfigError(what + " must be an integer, got: " + text);
    return value;
}

// "8" | "3..16" | "3,5,7,9,11"
std::vector<int> parse_ports(const std::string &text)
{
    std::vector<int> out;
    size_t dots = text.find("..");
    if (dots != std::string::npos)
    {
        int lo = parse_int_strict(text.substr(0, dots), "port range start");
        int hi = parse_int_strict(text.substr(dots + 2), "port range end");
        if (lo > hi)
            throw af::ConfigError("port range is empty: " + text);
        for (int m = lo; m <= hi; m++)
            out.push_back(m);
        return out;
    }

    size_t start = 0;
    while (start <= text.size())
    {
        size_t comma = text.find(',', start);
        std::string token = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        out.push_back(parse_int_strict(token, "port count"));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    if (out.empty())
        throw af::ConfigError("no port counts given");
    return out;
}

std::vector<std::string> parse_list(const std::string &text)
{
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= text.size())
    {
        size_t comma = text.find(',', start);
        std::string token = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!token.empty())
            out.push_back(token);
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

std::optional<double> parse_d_min(const std::string &text)
{
    if (text == "auto")
        return std::nullopt;
    try
    {
        size_t used = 0;
        double value = std::stod(text, &used);
        if (used != text.size())
            throw std::invalid_argument(text);
        return value;
    }
    catch (const std::exception &)
    {
        throw af::ConfigError("d-min must be \"auto\" or a number, got: " + text);
    }
}

af::UpdateRule parse_update_rule(const std::string &text)
{
    if (text == "velocity-momentum")
        return af::UpdateRule::VelocityMomentum;
    if (text == "paper-literal")
        return af::UpdateRule::PaperLiteral;
    throw af::ConfigError("update-rule must be velocity-momentum or paper-literal, got: " + text);
}

// Loaded --config document, flattened so both bare documents and the JSON
// reports the tool itself emits (config nested under "config", optimizer
// fields under "optimizer") can be fed back in.
class ConfigDoc
{
public:
    ConfigDoc() = default;

    explicit ConfigDoc(const std::string &path)
    {
        doc = af::read_json_file(path);
        if (!doc.is_object())
            throw af::ConfigError("config file must hold a JSON object: " + path);
        if (doc.contains("config") && doc["config"].is_object())
            doc = doc["config"];
    }

    const nlohmann::json *find(const std::string &key) const
    {
        if (doc.contains(key))
            return &doc.at(key);
        if (doc.contains("optimizer") && doc["optimizer"].is_object() && doc["optimizer"].contains(key))
            return &doc["optimizer"].at(key);
        return nullptr;
    }

    // Overrides `target` with the config value unless the flag was given.
    template <typename T>
    void apply(const std::string &key, const CLI::Option *flag, T &target) const
    {
        const nlohmann::json *value = find(key);
        if (value == nullptr || (flag != nullptr && flag->count() > 0))
            return;
        try
        {
            target = value->get<T>();
        }
        catch (const nlohmann::json::exception &)
        {
            throw af::ConfigError("config field has the wrong type: " + key);
        }
    }

    // String-typed fields that may also appear as JSON numbers or arrays.
    void apply_text(const std::string &key, const CLI::Option *flag, std::string &target) const
    {
        const nlohmann::json *value = find(key);
        if (value == nullptr || (flag != nullptr && flag->count() > 0))
            return;
        if (value->is_string())
            target = value->get<std::string>();
        else if (value->is_number_integer())
            target = std::to_string(value->get<long long>());
        else if (value->is_number())
            target = af::format_num(value->get<double>());
        else if (value->is_array())
        {
            std::string joined;
            for (const auto &item : *value)
            {
                if (!joined.empty())
                    joined += ",";
                if (item.is_string())
                    joined += item.get<std::string>();
                else if (item.is_number_integer())
                    joined += std::to_string(item.get<long long>());
                else
                    throw af::ConfigError("config field has the wrong type: " + key);
            }
            target = joined;
        }
        else
            throw af::ConfigError("config field has the wrong type: " + key);
    }

private:
    nlohmann::json doc = nlohmann::json::object();
};

// Optimizer flags shared by design, crb, and mse-bound.
struct OptimizerFlags
{
    std::string step_alpha = "5e-4";
    std::string momentum_beta = "0.9";
    int max_iters = 1000;
    std::string d_min = "auto";
    int grid_size = 180;
    std::string update_rule = "velocity-momentum";
    std::string convergence_tol = "1e-8";
    int convergence_patience = 10;
    std::string eig_tol = "1e-10";

    CLI::Option *o_alpha = nullptr;
    CLI::Option *o_beta = nullptr;
    CLI::Option *o_iters = nullptr;
    CLI::Option *o_dmin = nullptr;
    CLI::Option *o_grid = nullptr;
    CLI::Option *o_rule = nullptr;
    CLI::Option *o_ctol = nullptr;
    CLI::Option *o_patience = nullptr;
    CLI::Option *o_etol = nullptr;

    void attach(CLI::App *cmd)
    {
        o_alpha = cmd->add_option("--alpha,--step-alpha,--step_alpha", step_alpha, "Gradient step size");
        o_beta = cmd->add_option("--beta,--momentum-beta,--momentum_beta", momentum_beta, "Momentum coefficient in [0,1)");
        o_iters = cmd->add_option("--max-iters,--max_iters", max_iters, "Iteration cap");
        o_dmin = cmd->add_option("--d-min,--d_min", d_min, "Minimum port spacing, or \"auto\" for W/(M^2-1)");
        o_grid = cmd->add_option("--grid-size,--grid_size", grid_size, "Angle grid resolution N");
        o_rule = cmd->add_option("--update-rule,--update_rule", update_rule, "velocity-momentum or paper-literal");
        o_ctol = cmd->add_option("--convergence-tol,--convergence_tol", convergence_tol, "Objective-change tolerance");
        o_patience = cmd->add_option("--convergence-patience,--convergence_patience", convergence_patience,
                                     "Consecutive small-change iterations before stopping");
        o_etol = cmd->add_option("--eig-tol,--eig_tol", eig_tol, "Eigenpair residual tolerance");
    }

    af::OptimizerConfig resolve(const ConfigDoc &cfg) const
    {
        std::string alpha_text = step_alpha;
        std::string beta_text = momentum_beta;
        std::string dmin_text = d_min;
        std::string rule_text = update_rule;
        std::string ctol_text = convergence_tol;
        std::string etol_text = eig_tol;

        af::OptimizerConfig out;
        out.max_iters = max_iters;
        out.grid_size = grid_size;
        out.convergence_patience = convergence_patience;
        cfg.apply_text("step_alpha", o_alpha, alpha_text);
        cfg.apply_text("momentum_beta", o_beta, beta_text);
        cfg.apply("max_iters", o_iters, out.max_iters);
        cfg.apply_text("d_min", o_dmin, dmin_text);
        cfg.apply("grid_size", o_grid, out.grid_size);
        cfg.apply_text("update_rule", o_rule, rule_text);
        cfg.apply_text("convergence_tol", o_ctol, ctol_text);
        cfg.apply("convergence_patience", o_patience, out.convergence_patience);
        cfg.apply_text("eig_tol", o_etol, etol_text);

        auto numeric = [](const std::string &text, const char *what) {
            try
            {
                size_t used = 0;
                double value = std::stod(text, &used);
                if (used != text.size())
                    throw std::invalid_argument(text);
                return value;
            }
            catch (const std::exception &)
            {
                throw af::ConfigError(std::string(what) + " must be numeric, got: " + text);
            }
        };

        out.step_alpha = numeric(alpha_text, "alpha");
        out.momentum_beta = numeric(beta_text, "beta");
        out.min_spacing = parse_d_min(dmin_text);
        out.update_rule = parse_update_rule(rule_text);
        out.convergence_tol = numeric(ctol_text, "convergence-tol");
        out.eig_tol = numeric(etol_text, "eig-tol");
        return out;
    }
};

uint64_t resolve_seed(const ConfigDoc &cfg, const CLI::Option *flag, uint64_t flag_value)
{
    if (flag != nullptr && flag->count() > 0)
        return flag_value;
    if (const nlohmann::json *value = cfg.find("seed"))
    {
        if (!value->is_number_unsigned() && !value->is_number_integer())
            throw af::ConfigError("config field has the wrong type: seed");
        return value->get<uint64_t>();
    }
    return af::default_seed();
}

void report(const af::CommandOutputs &outputs)
{
    for (const std::string &warning : outputs.warnings)
        std::cerr << "warning: " << warning << "\n";
    for (const std::string &file : outputs.files)
        std::cout << "wrote " << file << "\n";
}

}

int main(int argc, char **argv)
{
    CLI::App app{"Finite-aperture array placement: spacing statistics, bounds, and design"};
    app.set_version_flag("--version", std::string(af::kToolName) + " " + af::kVersion);
    app.require_subcommand(1);

    // ----- spacing -----
    auto *sp = app.add_subcommand("spacing", "Minimum-spacing statistics vs. the analytic law");
    std::string sp_ports = "8", sp_aperture = "auto", sp_out = "spacing.csv", sp_config;
    int64_t sp_samples = 100000;
    int sp_bins = 50;
    uint64_t sp_seed = 0;
    auto *sp_o_ports = sp->add_option("--ports,-M", sp_ports, "Port count; a range 3..16 sweeps");
    auto *sp_o_ap = sp->add_option("--aperture,-W", sp_aperture, "Aperture, or \"auto\" for (M-1)/2");
    auto *sp_o_samples = sp->add_option("--samples", sp_samples, "Monte-Carlo draws (0 = theory only)");
    auto *sp_o_bins = sp->add_option("--bins", sp_bins, "Histogram bins");
    auto *sp_o_seed = sp->add_option("--seed", sp_seed, "RNG seed");
    auto *sp_o_out = sp->add_option("--out,-o", sp_out, "Output CSV path");
    sp->add_option("--config", sp_config, "JSON config file (flags override)");

    // ----- design -----
    auto *de = app.add_subcommand("design", "Optimize port placement by projected gradient descent");
    std::string de_ports = "11", de_init = "mra", de_prefix = "design", de_config;
    int de_log_every = 1;
    uint64_t de_seed = 0;
    OptimizerFlags de_opt;
    auto *de_o_ports = de->add_option("--ports,-M", de_ports, "Port count or comma list");
    auto *de_o_init = de->add_option("--init", de_init, "mra | ula | random | positions file");
    de_opt.attach(de);
    auto *de_o_log = de->add_option("--log-every,--log_every", de_log_every, "Trace thinning stride");
    auto *de_o_seed = de->add_option("--seed", de_seed, "RNG seed (random init only)");
    auto *de_o_prefix = de->add_option("--out-prefix,--out_prefix,-o", de_prefix, "Output file prefix");
    de->add_option("--config", de_config, "JSON config file (flags override)");

    // ----- crb -----
    auto *cr = app.add_subcommand("crb", "Angle CRB of reference and optimized placements");
    std::string cr_ports = "3,5,7,9,11", cr_schemes = "ula,mra,opt", cr_file, cr_out = "crb.csv", cr_config;
    double cr_theta = 15.0, cr_snr = 10.0;
    int cr_snapshots = 100;
    OptimizerFlags cr_opt;
    auto *cr_o_ports = cr->add_option("--ports,-M", cr_ports, "Port count or comma list");
    auto *cr_o_schemes = cr->add_option("--schemes", cr_schemes, "Comma list from {ula, mra, opt}");
    auto *cr_o_file = cr->add_option("--placement-file,--placement_file", cr_file, "Extra custom placement to evaluate");
    auto *cr_o_theta = cr->add_option("--theta-deg,--theta_deg", cr_theta, "Target angle in degrees");
    auto *cr_o_snr = cr->add_option("--snr-db,--snr_db", cr_snr, "SNR in dB");
    auto *cr_o_snap = cr->add_option("--snapshots,-T", cr_snapshots, "Snapshot count");
    cr_opt.attach(cr);
    auto *cr_o_out = cr->add_option("--out,-o", cr_out, "Output CSV path");
    cr->add_option("--config", cr_config, "JSON config file (flags override)");

    // ----- mse-bound -----
    auto *ms = app.add_subcommand("mse-bound", "Cosine-domain MSE upper bound across an SNR sweep");
    std::string ms_schemes = "ula,mra,opt", ms_range = "-10:2:20", ms_out = "mse_bound.csv", ms_config;
    int ms_ports = 5;
    OptimizerFlags ms_opt;
    auto *ms_o_ports = ms->add_option("--ports,-M", ms_ports, "Port count");
    auto *ms_o_schemes = ms->add_option("--schemes", ms_schemes, "Comma list from {ula, mra, opt}");
    auto *ms_o_range = ms->add_option("--snr-db-range,--snr_db_range", ms_range, "Sweep lo:step:hi in dB");
    ms_opt.attach(ms);
    auto *ms_o_out = ms->add_option("--out,-o", ms_out, "Output CSV path");
    ms->add_option("--config", ms_config, "JSON config file (flags override)");

    // ----- demo-estimate -----
    auto *dm = app.add_subcommand("demo-estimate", "End-to-end matched-filter angle estimate");
    std::string dm_scheme = "ula", dm_out = "demo.json", dm_config;
    int dm_ports = 5, dm_snapshots = 1000, dm_grid = 180;
    double dm_theta = 60.0, dm_snr = 20.0;
    uint64_t dm_seed = 0;
    auto *dm_o_ports = dm->add_option("--ports,-M", dm_ports, "Port count");
    auto *dm_o_scheme = dm->add_option("--scheme", dm_scheme, "ula | mra | opt");
    auto *dm_o_theta = dm->add_option("--theta-deg,--theta_deg", dm_theta, "True angle in degrees");
    auto *dm_o_snr = dm->add_option("--snr-db,--snr_db", dm_snr, "SNR in dB");
    auto *dm_o_snap = dm->add_option("--snapshots,-T", dm_snapshots, "Snapshot count");
    auto *dm_o_grid = dm->add_option("--grid-size,--grid_size", dm_grid, "Angle grid resolution N");
    auto *dm_o_seed = dm->add_option("--seed", dm_seed, "RNG seed");
    auto *dm_o_out = dm->add_option("--out,-o", dm_out, "Output JSON path");
    dm->add_option("--config", dm_config, "JSON config file (flags override)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try
    {
        if (sp->parsed())
        {
            ConfigDoc cfg = sp_config.empty() ? ConfigDoc() : ConfigDoc(sp_config);
            std::string ports_text = sp_ports, aperture_text = sp_aperture;
            cfg.apply_text("ports", sp_o_ports, ports_text);
            cfg.apply_text("aperture", sp_o_ap, aperture_text);

            af::SpacingConfig config;
            config.ports = parse_ports(ports_text);
            if (aperture_text != "auto")
                config.aperture = std::stod(aperture_text);
            config.samples = sp_samples;
            cfg.apply("samples", sp_o_samples, config.samples);
            config.bins = sp_bins;
            cfg.apply("bins", sp_o_bins, config.bins);
            config.seed = resolve_seed(cfg, sp_o_seed, sp_seed);
            config.out = sp_out;
            cfg.apply("out", sp_o_out, config.out);
            report(af::run_spacing(config));
        }
        else if (de->parsed())
        {
            ConfigDoc cfg = de_config.empty() ? ConfigDoc() : ConfigDoc(de_config);
            std::string ports_text = de_ports;
            cfg.apply_text("ports", de_o_ports, ports_text);

            af::DesignConfig config;
            config.ports = parse_ports(ports_text);
            config.init = de_init;
            cfg.apply_text("init", de_o_init, config.init);
            config.optimizer = de_opt.resolve(cfg);
            config.log_every = de_log_every;
            cfg.apply("log_every", de_o_log, config.log_every);
            config.seed = resolve_seed(cfg, de_o_seed, de_seed);
            config.out_prefix = de_prefix;
            cfg.apply("out_prefix", de_o_prefix, config.out_prefix);
            report(af::run_design(config));
        }
        else if (cr->parsed())
        {
            ConfigDoc cfg = cr_config.empty() ? ConfigDoc() : ConfigDoc(cr_config);
            std::string ports_text = cr_ports, schemes_text = cr_schemes, file_text = cr_file;
            cfg.apply_text("ports", cr_o_ports, ports_text);
            cfg.apply_text("schemes", cr_o_schemes, schemes_text);
            cfg.apply_text("placement_file", cr_o_file, file_text);

            af::CrbConfig config;
            config.ports = parse_ports(ports_text);
            config.schemes = parse_list(schemes_text);
            if (!file_text.empty())
                config.placement_file = file_text;
            config.theta_deg = cr_theta;
            cfg.apply("theta_deg", cr_o_theta, config.theta_deg);
            config.snr_db = cr_snr;
            cfg.apply("snr_db", cr_o_snr, config.snr_db);
            config.snapshots = cr_snapshots;
            cfg.apply("snapshots", cr_o_snap, config.snapshots);
            config.optimizer = cr_opt.resolve(cfg);
            config.out = cr_out;
            cfg.apply("out", cr_o_out, config.out);
            report(af::run_crb(config));
        }
        else if (ms->parsed())
        {
            ConfigDoc cfg = ms_config.empty() ? ConfigDoc() : ConfigDoc(ms_config);
            std::string schemes_text = ms_schemes, range_text = ms_range;
            cfg.apply_text("schemes", ms_o_schemes, schemes_text);
            cfg.apply_text("snr_db_range", ms_o_range, range_text);

            af::MseBoundConfig config;
            config.ports = ms_ports;
            cfg.apply("ports", ms_o_ports, config.ports);
            config.schemes = parse_list(schemes_text);
            config.snr = af::SnrRange::parse(range_text);
            config.optimizer = ms_opt.resolve(cfg);
            config.out = ms_out;
            cfg.apply("out", ms_o_out, config.out);
            report(af::run_mse_bound(config));
        }
        else if (dm->parsed())
        {
            ConfigDoc cfg = dm_config.empty() ? ConfigDoc() : ConfigDoc(dm_config);

            af::DemoConfig config;
            config.ports = dm_ports;
            cfg.apply("ports", dm_o_ports, config.ports);
            config.scheme = dm_scheme;
            cfg.apply_text("scheme", dm_o_scheme, config.scheme);
            config.theta_deg = dm_theta;
            cfg.apply("theta_deg", dm_o_theta, config.theta_deg);
            config.snr_db = dm_snr;
            cfg.apply("snr_db", dm_o_snr, config.snr_db);
            config.snapshots = dm_snapshots;
            cfg.apply("snapshots", dm_o_snap, config.snapshots);
            config.grid_size = dm_grid;
            cfg.apply("grid_size", dm_o_grid, config.grid_size);
            config.seed = resolve_seed(cfg, dm_o_seed, dm_seed);
            config.out = dm_out;
            cfg.apply("out", dm_o_out, config.out);
            report(af::run_demo_estimate(config));
        }
        return 0;
    }
    catch (const af::InfeasibleConstraintsError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    catch (const af::InvalidMatrixError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    catch (const af::UnboundedCrbError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    catch (const af::UndefinedObjectiveError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    catch (const af::IoError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
