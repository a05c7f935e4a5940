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

// Acceptance battery: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "secest/analysis.hpp"
#include "secest/cli.hpp"
#include "secest/config.hpp"
#include "secest/model.hpp"
#include "secest/montecarlo.hpp"

using namespace secest;
namespace fs = std::filesystem;

namespace {

const std::string kConfigs = SECEST_TEST_DATA_DIR;
const SystemParams kParams(0.6, 0.01, 0.01);

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) {
                detail += "; ";
            }
            detail += what;
        }
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

int failures = 0;

void criterion(const std::string& id, const std::string& title, const std::function<Check()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
        c = body();
    } catch (const std::exception& e) {
        c.ok = false;
        c.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s %s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", id.c_str(), title.c_str(), secs,
                c.detail.empty() ? "" : ": ", c.detail.c_str());
    std::fflush(stdout);
    if (!c.ok) {
        ++failures;
    }
}

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

SimConfig reference_config() { return load_config(kConfigs + "/reference.yaml"); }

}// namespace

int main() {
    criterion("AC1", "steady-state constants", [] {
        Check c;
        const double p_bar = riccati_fixed_point(kParams);
        const double b = 0.01 + 0.01 * (1 - 0.36);
        const double root = 2 * 0.01 * 0.01 / (b + std::sqrt(b * b + 4 * 0.36 * 0.01 * 0.01));
        const double p_op = open_loop_variance(kParams);
        c.require(std::abs(p_bar - 0.0054) <= 5e-4, "P_bar vs 0.0054: " + fmt("%.10g", p_bar));
        c.require(std::abs(p_bar - 0.005446) <= 1e-6, "P_bar vs 0.005446");
        c.require(std::abs(p_bar - root) <= 1e-15, "P_bar vs quadratic root");
        c.require(std::abs(p_op - 0.015625) <= 1e-15, "P_op");
        c.require(std::abs(p_op + 0.01 - 0.025625) <= 1e-15, "P_n");
        c.detail = c.ok ? "P_bar=" + fmt("%.9g", p_bar) + " P_op=" + fmt("%.9g", p_op) + " P_n=" +
                              fmt("%.9g", p_op + 0.01)
                        : c.detail;
        return c;
    });

    criterion("AC2", "mu_op reproduction", [] {
        Check c;
        const DesignResult d = design_mu_op(kParams, 0.3);
        c.require(d.feasible, "infeasible");
        c.require(std::abs(d.mu_op - 0.504) <= 0.001, "mu_op=" + fmt("%.10g", d.mu_op));
        if (c.ok) {
            c.detail = "mu_op=" + fmt("%.10g", d.mu_op);
        }
        return c;
    });

    criterion("AC3", "eavesdropper fixed point at mu_op", [] {
        Check c;
        const double mu_op = design_mu_op(kParams, 0.3).mu_op;
        const double e = expected_eaves_variance(kParams, 0.3, mu_op);
        const double r = rel(e, open_loop_variance(kParams));
        c.require(r <= 1e-10, "relative error " + fmt("%.3g", r));
        if (c.ok) {
            c.detail = "relative error " + fmt("%.3g", r);
        }
        return c;
    });

    criterion("AC4", "99-point sweep, closed form", [] {
        Check c;
        const auto start = std::chrono::steady_clock::now();
        std::ostringstream out, err;
        const int code = run_cli({"sweep", kConfigs + "/reference.yaml", "--grid", "99"}, out, err);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        c.require(code == 0, "exit code " + std::to_string(code));
        c.require(secs < 1.0, "runtime " + fmt("%.3f", secs));
        const std::vector<double> grid = interior_mu_grid(99);
        const auto rows = sweep_mu(reference_config(), grid, false);
        c.require(rows.size() == 99, "row count");
        const double p_op = open_loop_variance(kParams);
        int crossings = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            c.require(rows[i].expected_legit <= p_op, "legit above P_op at mu=" + fmt("%g", rows[i].mu));
            c.require(rows[i].expected_eaves >= rows[i].expected_legit, "eaves below legit at mu=" + fmt("%g", rows[i].mu));
            if (i > 0) {
                c.require(rows[i].expected_legit > rows[i - 1].expected_legit, "legit gap to P_op not shrinking");
                if (rows[i - 1].expected_eaves < p_op && rows[i].expected_eaves >= p_op) {
                    ++crossings;
                    c.require(rows[i - 1].mu > 0.50 - 1e-12 && rows[i].mu < 0.51 + 1e-12 &&
                                  rows[i - 1].mu < 0.5044 && rows[i].mu > 0.5044,
                              "crossing outside (0.50, 0.51)");
                }
            }
        }
        c.require(crossings == 1, "crossings=" + std::to_string(crossings));
        // Gap to P_op at mu = 0.99 is under 2% of the gap at mu = 0.01.
        const double gap_end = p_op - rows.back().expected_legit;
        c.require(gap_end < 0.02 * (p_op - rows.front().expected_legit), "legit gap at mu=0.99 " + fmt("%.3g", gap_end));
        c.require(p_op - expected_legit_variance(kParams, 0.3, 1.0 - 1e-9) < 1e-10, "legit limit at mu -> 1");
        if (c.ok) {
            c.detail = "crossing in (0.50, 0.51), closed-form runtime " + fmt("%.3f", secs) + " s";
        }
        return c;
    });

    criterion("AC4", "99-point sweep with Monte Carlo at horizon 1e5, 100 trials", [] {
        Check c;
        const auto start = std::chrono::steady_clock::now();
        std::ostringstream out, err;
        const int code = run_cli({"sweep", kConfigs + "/reference.yaml", "--grid", "99", "--mc"}, out, err);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        c.require(code == 0, "exit code " + std::to_string(code));
        c.require(secs < 120.0, "runtime " + fmt("%.1f", secs) + " s exceeds 120 s");
        std::istringstream in(out.str());
        std::string line;
        std::getline(in, line);
        c.require(line == std::string(kSweepHeader) + kSweepMcHeader, "header");
        int rows = 0;
        double worst = 0.0;
        while (std::getline(in, line)) {
            std::vector<double> v;
            std::istringstream ls(line);
            std::string cell;
            while (std::getline(ls, cell, ',')) {
                v.push_back(std::stod(cell));
            }
            if (v.size() != 11) {
                c.require(false, "row width");
                break;
            }
            worst = std::max({worst, rel(v[7], v[1]), rel(v[9], v[2])});
            ++rows;
        }
        c.require(rows == 99, "row count");
        c.require(worst < 0.02, "worst MC relative deviation " + fmt("%.4f", worst));
        if (c.ok) {
            c.detail = "runtime " + fmt("%.1f", secs) + " s, worst MC deviation " + fmt("%.4f", worst);
        }
        return c;
    });

    criterion("AC5", "chain oracles match closed forms on the 375-point grid", [] {
        Check c;
        int points = 0;
        double worst = 0.0;
        for (double a : {0.2, 0.6, 0.9}) {
            const SystemParams p(a, 0.01, 0.01);
            for (int i = 0; i < 5; ++i) {
                const double mu = 0.9 * i / 4;
                for (int j = 0; j < 5; ++j) {
                    const double gamma = 0.9 * j / 4;
                    const std::int64_t jl = std::max<std::int64_t>(kDefaultChainStates,
                                                                    required_chain_states_legit(gamma, mu, 1e-12));
                    const std::int64_t je = std::max<std::int64_t>(kDefaultChainStates,
                                                                    required_chain_states_eaves(gamma, mu, 1e-12));
                    const ChainOracleResult ol = chain_oracle_legit(p, gamma, mu, jl, 1e-12);
                    const ChainOracleResult oe = chain_oracle_eaves(p, gamma, mu, je, 1e-12);
                    const double dl = std::abs(ol.value - expected_legit_variance(p, gamma, mu));
                    const double de = std::abs(oe.value - expected_eaves_variance(p, gamma, mu));
                    c.require(dl <= ol.tail_bound + 1e-10, "legit a=" + fmt("%g", a) + " mu=" + fmt("%g", mu) +
                                                               " gamma=" + fmt("%g", gamma));
                    c.require(de <= oe.tail_bound + 1e-10, "eaves a=" + fmt("%g", a) + " mu=" + fmt("%g", mu) +
                                                               " gamma=" + fmt("%g", gamma));
                    worst = std::max({worst, dl, de});
                    ++points;
                }
            }
        }
        c.require(points == 75, "grid size");
        if (c.ok) {
            c.detail = std::to_string(points * 5) + " oracle evaluations, worst |diff| " + fmt("%.3g", worst);
        }
        return c;
    });

    criterion("AC6", "Monte Carlo consistency at mu in {0.1, 0.3, 0.504, 0.75, 0.9}", [] {
        Check c;
        double worst = 0.0;
        for (double mu : {0.1, 0.3, 0.504, 0.75, 0.9}) {
            SimConfig cfg = reference_config();
            cfg.policy = EncodingPolicy(mu, cfg.policy.seed());
            const LongRunEstimate est = estimate_long_run(cfg);
            const double el = expected_legit_variance(cfg.system, cfg.channels.gamma_user(), mu);
            const double ee = expected_eaves_variance(cfg.system, cfg.channels.gamma_eaves(), mu);
            const std::string at = " at mu=" + fmt("%g", mu);
            c.require(rel(est.legit.mean, el) <= 0.02, "legit variance" + at);
            c.require(rel(est.eaves.mean, ee) <= 0.02, "eaves variance" + at);
            c.require(std::abs(est.legit_sq_err.mean - est.legit.mean) <=
                          est.legit_sq_err.ci_half_width + est.legit.ci_half_width,
                      "legit squared-error CI" + at);
            c.require(std::abs(est.eaves_sq_err.mean - est.eaves.mean) <=
                          est.eaves_sq_err.ci_half_width + est.eaves.ci_half_width,
                      "eaves squared-error CI" + at);
            worst = std::max({worst, rel(est.legit.mean, el), rel(est.eaves.mean, ee)});
        }
        if (c.ok) {
            c.detail = "worst relative deviation " + fmt("%.4f", worst);
        }
        return c;
    });

    criterion("AC7", "secrecy range on 20 random parameter sets", [] {
        Check c;
        std::mt19937_64 gen(20240601);
        std::uniform_real_distribution<double> ua(-0.95, 0.95), uqr(1e-4, 1.0), ug(0.0, 0.9);
        int sets = 0, draws = 0;
        while (sets < 20 && draws < 10000) {
            ++draws;
            const SystemParams p(ua(gen), uqr(gen), uqr(gen));
            const double gu = ug(gen), ge = ug(gen);
            const DesignResult d = secrecy_range(p, gu, ge);
            if (!d.feasible) {
                continue;
            }
            ++sets;
            const double p_op = open_loop_variance(p);
            for (int k = 1; k <= 4; ++k) {
                const double mu = d.mu_op + k * (1.0 - d.mu_op) / 5;
                c.require(expected_legit_variance(p, gu, mu) < p_op, "legit not below P_op in set " + std::to_string(sets));
                c.require(expected_eaves_variance(p, ge, mu) > p_op, "eaves not above P_op in set " + std::to_string(sets));
            }
        }
        c.require(sets == 20, "only " + std::to_string(sets) + " feasible sets");
        if (c.ok) {
            c.detail = "20 sets, 80 points";
        }
        return c;
    });

    criterion("AC8", "boundary branches", [] {
        Check c;
        const double p_op = open_loop_variance(kParams);
        c.require(expected_legit_variance(kParams, 1.0, 0.4) == p_op, "legit at gamma_user=1");
        c.require(expected_legit_variance(kParams, 0.3, 1.0) == p_op, "legit at mu=1");
        c.require(expected_eaves_variance(kParams, 1.0, 0.4) == p_op, "eaves at gamma_eaves=1");
        c.require(expected_eaves_variance(kParams, 1.0, 0.0) == p_op, "eaves at gamma_eaves=1, mu=0");
        const SimConfig cfg = load_config(kConfigs + "/user_blackout.yaml");
        const LongRunEstimate est = estimate_long_run(cfg);
        c.require(rel(est.legit.mean, p_op) <= 0.01, "simulated legit mean " + fmt("%.8g", est.legit.mean));
        c.require(rel(est.legit_sq_err.mean, p_op) <= 0.02, "simulated legit squared error " +
                                                               fmt("%.8g", est.legit_sq_err.mean));
        if (c.ok) {
            c.detail = "simulated legit mean " + fmt("%.8g", est.legit.mean);
        }
        return c;
    });

    criterion("AC9", "determinism", [] {
        Check c;
        const fs::path dir = fs::temp_directory_path() / "secest_acceptance";
        fs::create_directories(dir);
        const std::string a = (dir / "a.csv").string(), b = (dir / "b.csv").string();
        std::ostringstream out, err;
        const std::string cfg = kConfigs + "/reference.yaml";
        c.require(run_cli({"simulate", cfg, "--seed", "7", "--out", a}, out, err) == 0, "first simulate");
        c.require(run_cli({"simulate", cfg, "--seed", "7", "--out", b}, out, err) == 0, "second simulate");
        const std::string ta = slurp(a);
        c.require(!ta.empty() && ta == slurp(b), "simulate CSVs differ");
        fs::remove_all(dir);

        SimConfig sim = reference_config();
        sim.horizon = 20000;
        sim.trials = 40;
        const LongRunEstimate one = estimate_long_run(sim, 1);
        const LongRunEstimate four = estimate_long_run(sim, 4);
        const LongRunEstimate eight = estimate_long_run(sim, 8);
        c.require(one == four && one == eight, "estimate_long_run differs across worker counts");
        if (c.ok) {
            c.detail = "CSV " + std::to_string(ta.size()) + " bytes identical; 1/4/8 workers bit-identical";
        }
        return c;
    });

    std::printf("%s: %d criterion line(s) failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
