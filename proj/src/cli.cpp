/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#include "secest/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "secest/analysis.hpp"
#include "secest/config.hpp"
#include "secest/error.hpp"
#include "secest/estimators.hpp"

#ifndef SECEST_VERSION
#define SECEST_VERSION "0.0.0"
#endif

namespace secest {

namespace {

using Clock = std::chrono::steady_clock;

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    unsigned workers = 0;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SimConfig load_with_overrides(const CommonOptions& opts) {
    SimConfig config = load_config(opts.config_path);
    if (opts.seed) {
        config.master_seed = *opts.seed;
    }
    return config;
}

double json_number(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::quiet_NaN(); }

nlohmann::ordered_json design_json(const SystemParams& system, const DesignResult& design) {
    nlohmann::ordered_json j;
    j["p_bar"] = riccati_fixed_point(system);
    j["p_op"] = open_loop_variance(system);
    j["p_n"] = noise_use_variance(system);
    // NaN serializes as null.
    j["mu_op"] = json_number(design.mu_op);
    j["mu_lo"] = json_number(design.mu_lo);
    j["mu_hi"] = json_number(design.mu_hi);
    j["feasible"] = design.feasible;
    return j;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot write output file '" + path + "'");
    }
    file << contents;
    file.close();
    if (!file) {
        throw IoError("failed writing output file '" + path + "'");
    }
}

void write_manifest(const std::string& output_path, const std::string& command, const SimConfig& config,
                    Clock::time_point started, const nlohmann::ordered_json& extra = {}) {
    nlohmann::ordered_json manifest;
    manifest["tool"] = "secest";
    manifest["version"] = SECEST_VERSION;
    manifest["command"] = command;
    manifest["config"] = config_to_json(config);
    manifest["master_seed"] = config.master_seed;
    manifest["wall_clock_seconds"] = std::chrono::duration<double>(Clock::now() - started).count();
    manifest["outputs"] = nlohmann::ordered_json::array({output_path});
    if (!extra.is_null()) {
        manifest["details"] = extra;
    }
    write_file(output_path + ".manifest.json", manifest.dump(2) + "\n");
}

int cmd_design(const CommonOptions& opts, const std::string& out_path, bool json_stdout, std::ostream& out,
               std::ostream& err) {
    const auto started = Clock::now();
    const SimConfig config = load_with_overrides(opts);
    const SystemParams& system = config.system;

    DesignResult design;
    std::string infeasible_reason;
    try {
        design = design_mu_op(system, config.channels.gamma_eaves());
    } catch (const DesignError&) {
        err << "infeasible: eavesdropper already at open loop (gamma_eaves = 1)\n";
        return exit_code::kInfeasible;
    }
    if (!design.feasible) {
        infeasible_reason = "mu_op = " + format_number(design.mu_op) + " lies outside [0, 1)";
    } else if (config.channels.gamma_user() >= 1.0) {
        design.feasible = false;
        infeasible_reason = "legitimate user channel fully lost (gamma_user = 1)";
    }

    const auto j = design_json(system, design);
    if (json_stdout) {
        out << j.dump(2) << "\n";
    } else {
        char line[256];
        std::snprintf(line, sizeof line, "p_bar=%.6g, p_op=%.6g, p_n=%.6g\n", riccati_fixed_point(system),
                      open_loop_variance(system), noise_use_variance(system));
        out << line;
        if (design.feasible) {
            std::snprintf(line, sizeof line, "mu_op=%.3f, range=(%.3f,1), feasible=yes\n", design.mu_op,
                          design.mu_lo);
        } else {
            std::snprintf(line, sizeof line, "mu_op=%.3f, range=none, feasible=no\n", design.mu_op);
        }
        out << line;
        out << "mu_op_exact=" << format_number(design.mu_op) << "\n";
    }
    if (!out_path.empty()) {
        write_file(out_path, j.dump(2) + "\n");
        write_manifest(out_path, "design", config, started);
    }
    if (!design.feasible) {
        err << "infeasible: " << infeasible_reason << "\n";
        return exit_code::kInfeasible;
    }
    return exit_code::kOk;
}

int cmd_sweep(const CommonOptions& opts, std::int64_t grid_points, const std::vector<double>& explicit_grid,
              bool with_mc, const std::string& out_path, std::ostream& out) {
    const auto started = Clock::now();
    const SimConfig config = load_with_overrides(opts);
    std::vector<double> grid = explicit_grid;
    if (grid.empty()) {
        if (grid_points < 2) {
            throw ParameterError("--grid must be >= 2");
        }
        grid = interior_mu_grid(grid_points);
    }
    const auto rows = sweep_mu(config, grid, with_mc, opts.workers);
    std::ostringstream csv;
    write_sweep_csv(csv, rows, with_mc);
    if (out_path.empty()) {
        out << csv.str();
    } else {
        write_file(out_path, csv.str());
        nlohmann::ordered_json details;
        details["grid"] = grid;
        details["mc"] = with_mc;
        write_manifest(out_path, "sweep", config, started, details);
        out << "wrote " << rows.size() << " rows to " << out_path << "\n";
    }
    return exit_code::kOk;
}

int cmd_simulate(const CommonOptions& opts, std::uint64_t trial, const std::string& out_path, std::ostream& out) {
    const auto started = Clock::now();
    const SimConfig config = load_with_overrides(opts);
    const TrajectoryRecord record = run_trial(config, trial);
    std::ostringstream csv;
    write_trajectory_csv(csv, record);
    if (out_path.empty()) {
        out << csv.str();
    } else {
        write_file(out_path, csv.str());
        nlohmann::ordered_json details;
        details["trial_index"] = trial;
        write_manifest(out_path, "simulate", config, started, details);
        out << "wrote " << record.steps.size() << " steps to " << out_path << "\n";
    }
    return exit_code::kOk;
}

int cmd_verify(const CommonOptions& opts, double tolerance, const VerifyHooks& hooks, std::ostream& out,
               std::ostream& err) {
    const SimConfig config = load_with_overrides(opts);
    const VerifyReport report = verify_config(config, tolerance, opts.workers, hooks);
    for (const auto& c : report.comparisons) {
        out << (c.skipped ? "SKIP" : (c.passed() ? "PASS" : "FAIL")) << "  " << c.name;
        if (!c.skipped) {
            out << "  lhs=" << format_number(c.lhs) << " rhs=" << format_number(c.rhs)
                << " |diff|=" << format_number(std::abs(c.lhs - c.rhs)) << " allowed=" << format_number(c.allowance);
        }
        if (!c.note.empty()) {
            out << "  (" << c.note << ")";
        }
        out << "\n";
    }
    if (!report.passed()) {
        const VerifyComparison* worst = report.worst();
        err << "verification failed; worst offender: " << (worst ? worst->name : "?") << "\n";
        return exit_code::kVerifyFailed;
    }
    out << "all comparisons agree\n";
    return exit_code::kOk;
}

}// namespace

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool with_mc) {
    out << kSweepHeader << (with_mc ? kSweepMcHeader : "") << "\n";
    for (const auto& row : rows) {
        out << format_number(row.mu) << ',' << format_number(row.expected_legit) << ','
            << format_number(row.expected_eaves) << ',' << format_number(row.p_bar) << ','
            << format_number(row.p_op) << ',' << format_number(row.p_n) << ',' << format_number(row.mu_op);
        if (with_mc && row.mc) {
            out << ',' << format_number(row.mc->legit.mean) << ',' << format_number(row.mc->legit.ci_half_width)
                << ',' << format_number(row.mc->eaves.mean) << ',' << format_number(row.mc->eaves.ci_half_width);
        }
        out << "\n";
    }
}

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record) {
    out << kTrajectoryHeader << "\n";
    for (const auto& s : record.steps) {
        out << s.k << ',' << format_number(s.x) << ',' << format_number(s.y) << ',' << (s.u ? 1 : 0) << ','
            << format_number(s.z) << ',' << (s.lambda_user ? 1 : 0) << ',' << (s.lambda_eaves ? 1 : 0) << ','
            << format_number(s.x_hat_s) << ',' << format_number(s.x_hat) << ',' << format_number(s.x_hat_e) << ','
            << format_number(s.p) << ',' << format_number(s.p_e) << ',' << format_number(s.sq_err_user) << ','
            << format_number(s.sq_err_eaves) << "\n";
    }
}

VerifyHooks VerifyHooks::standard() { return {expected_legit_variance, expected_eaves_variance}; }

bool VerifyComparison::passed() const { return skipped || std::abs(lhs - rhs) <= allowance; }

double VerifyComparison::severity() const {
    if (skipped) {
        return 0.0;
    }
    const double diff = std::abs(lhs - rhs);
    if (std::isnan(diff)) {
        return std::numeric_limits<double>::infinity();
    }
    return allowance > 0.0 ? diff / allowance : (diff > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
}

bool VerifyReport::passed() const {
    return std::all_of(comparisons.begin(), comparisons.end(), [](const auto& c) { return c.passed(); });
}

const VerifyComparison* VerifyReport::worst() const {
    const VerifyComparison* worst = nullptr;
    for (const auto& c : comparisons) {
        if (c.skipped) {
            continue;
        }
        if (worst == nullptr || c.severity() > worst->severity()) {
            worst = &c;
        }
    }
    return worst;
}

VerifyReport verify_config(const SimConfig& config, double tolerance, unsigned workers, const VerifyHooks& hooks) {
    if (!(tolerance >= 0.0)) {
        throw ParameterError("--tolerance must be >= 0");
    }
    constexpr double kChainSlack = 1e-10;
    constexpr double kChainTail = 1e-12;

    const SystemParams& system = config.system;
    const double mu = config.policy.mu();
    const double gamma_user = config.channels.gamma_user();
    const double gamma_eaves = config.channels.gamma_eaves();

    const double legit_cf = hooks.legit_closed_form(system, gamma_user, mu);
    const double eaves_cf = hooks.eaves_closed_form(system, gamma_eaves, mu);
    const LongRunEstimate mc = estimate_long_run(config, workers);

    VerifyReport report;
    auto mc_pair = [&](std::string name, double reference, const EstimateWithCI& est) {
        report.comparisons.push_back(
            {std::move(name), est.mean, reference, tolerance * std::abs(reference) + est.ci_half_width, false, {}});
    };

    std::optional<ChainOracleResult> legit_chain;
    if (gamma_user < 1.0) {
        const auto depth = std::max(kDefaultChainStates, required_chain_states_legit(gamma_user, mu, kChainTail));
        legit_chain = chain_oracle_legit(system, gamma_user, mu, depth, kChainTail);
        report.comparisons.push_back({"legit: closed form vs chain oracle", legit_cf, legit_chain->value,
                                      legit_chain->tail_bound + kChainSlack, false, {}});
    } else {
        report.comparisons.push_back(
            {"legit: closed form vs chain oracle", 0, 0, 0, true, "gamma_user = 1, chain has no return state"});
    }
    mc_pair("legit: closed form vs Monte Carlo variance", legit_cf, mc.legit);
    if (legit_chain) {
        mc_pair("legit: chain oracle vs Monte Carlo variance", legit_chain->value, mc.legit);
    }
    mc_pair("legit: closed form vs Monte Carlo squared error", legit_cf, mc.legit_sq_err);

    std::optional<ChainOracleResult> eaves_chain;
    if (gamma_eaves < 1.0) {
        const auto depth = std::max(kDefaultChainStates, required_chain_states_eaves(gamma_eaves, mu, kChainTail));
        eaves_chain = chain_oracle_eaves(system, gamma_eaves, mu, depth, kChainTail);
        report.comparisons.push_back({"eaves: closed form vs chain oracle", eaves_cf, eaves_chain->value,
                                      eaves_chain->tail_bound + kChainSlack, false, {}});
    } else {
        report.comparisons.push_back(
            {"eaves: closed form vs chain oracle", 0, 0, 0, true, "gamma_eaves = 1, chain has no return state"});
    }
    mc_pair("eaves: closed form vs Monte Carlo variance", eaves_cf, mc.eaves);
    if (eaves_chain) {
        mc_pair("eaves: chain oracle vs Monte Carlo variance", eaves_chain->value, mc.eaves);
    }
    mc_pair("eaves: closed form vs Monte Carlo squared error", eaves_cf, mc.eaves_sq_err);
    return report;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const VerifyHooks& hooks) {
    CLI::App app{"Remote state estimation with noise-injection secrecy: design, sweep, simulate, verify"};
    app.name("secest");
    app.set_version_flag("--version", SECEST_VERSION);
    app.require_subcommand(1);

    CommonOptions common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", common.config_path, "Experiment configuration file")->required();
        sub->add_option("--seed", common.seed, "Override simulation.master_seed");
        sub->add_option("--workers", common.workers, "Parallel trial workers (0 = hardware concurrency)");
    };

    std::string out_path;
    bool json_stdout = false;
    auto* design = app.add_subcommand("design", "Noise probability mu_op and the secrecy range");
    add_common(design);
    design->add_option("--out", out_path, "Write the design result as JSON");
    design->add_flag("--json", json_stdout, "Print JSON instead of the text summary");

    std::int64_t grid_points = 99;
    std::vector<double> explicit_grid;
    bool with_mc = false;
    auto* sweep = app.add_subcommand("sweep", "Expected long-run variances over a mu grid (CSV)");
    add_common(sweep);
    sweep->add_option("--grid", grid_points, "Number of interior grid points i/(N+1)");
    sweep->add_option("--mu", explicit_grid, "Explicit comma-separated mu values")->delimiter(',');
    sweep->add_flag("--mc", with_mc, "Add Monte Carlo columns");
    sweep->add_option("--out", out_path, "CSV output path (default: stdout)");

    std::uint64_t trial = 0;
    auto* simulate = app.add_subcommand("simulate", "Per-step trajectory of one trial (CSV)");
    add_common(simulate);
    simulate->add_option("--trial", trial, "Trial index");
    simulate->add_option("--out", out_path, "CSV output path (default: stdout)");

    double tolerance = 0.02;
    auto* verify = app.add_subcommand("verify", "Closed form vs chain oracle vs Monte Carlo");
    add_common(verify);
    verify->add_option("--tolerance", tolerance, "Relative tolerance for Monte Carlo comparisons");

    std::vector<const char*> argv;
    argv.push_back("secest");
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::kOk : exit_code::kConfigError;
    }

    try {
        if (design->parsed()) {
            return cmd_design(common, out_path, json_stdout, out, err);
        }
        if (sweep->parsed()) {
            return cmd_sweep(common, grid_points, explicit_grid, with_mc, out_path, out);
        }
        if (simulate->parsed()) {
            return cmd_simulate(common, trial, out_path, out);
        }
        return cmd_verify(common, tolerance, hooks, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return exit_code::kConfigError;
    } catch (const ParameterError& e) {
        err << "parameter error: " << e.what() << "\n";
        return exit_code::kConfigError;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return exit_code::kIoError;
    }
}

}// namespace secest
