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

#ifndef SECEST_MONTECARLO_HPP_
#define SECEST_MONTECARLO_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "secest/channel.hpp"
#include "secest/model.hpp"
#include "secest/secrecy.hpp"

namespace secest {

struct SimConfig {
    SystemParams system;
    ChannelParams channels;
    EncodingPolicy policy;
    std::int64_t horizon = 100000;
    std::int64_t burn_in = 1000;
    std::int64_t trials = 100;
    std::uint64_t master_seed = 1;
    // When false each trial re-mixes the policy seed with its trial index so
    // that trials are i.i.d.; when true every trial shares one indicator
    // sequence.
    bool common_indicator = false;

    /// Throws ParameterError unless 0 <= burn_in < horizon and trials >= 1.
    void validate() const;
};

struct StepRecord {
    std::int64_t k = 0;
    double x = 0.0;
    double y = 0.0;
    bool u = true;
    double z = 0.0;
    bool lambda_user = true;
    bool lambda_eaves = true;
    double x_hat_s = 0.0;
    double x_hat = 0.0;
    double x_hat_e = 0.0;
    double p = 0.0;
    double p_e = 0.0;
    double sq_err_user = 0.0;
    double sq_err_eaves = 0.0;

    bool operator==(const StepRecord&) const = default;
};

struct TrajectoryRecord {
    std::uint64_t trial_index = 0;
    std::vector<StepRecord> steps;

    bool operator==(const TrajectoryRecord&) const = default;
};

struct EstimateWithCI {
    double mean = 0.0;
    double ci_half_width = 0.0;// 95%, across trial means
    std::int64_t n_samples = 0;

    bool operator==(const EstimateWithCI&) const = default;
};

struct LongRunEstimate {
    EstimateWithCI legit;
    EstimateWithCI eaves;
    EstimateWithCI legit_sq_err;
    EstimateWithCI eaves_sq_err;

    bool operator==(const LongRunEstimate&) const = default;
};

/// Key of the master-seed substreams for one trial.
std::uint64_t trial_seed(const SimConfig& config, std::uint64_t trial_index);

/// Indicator policy a given trial runs with.
EncodingPolicy trial_policy(const SimConfig& config, std::uint64_t trial_index);

/// Full closed-loop trajectory of one trial; deterministic in
/// (config, trial_index).
TrajectoryRecord run_trial(const SimConfig& config, std::uint64_t trial_index);

/// Mean and 95% half-width 1.96 s / sqrt(n) of i.i.d. samples, accumulated in
/// the given order. With fewer than two samples the half-width is infinite.
EstimateWithCI summarize(std::span<const double> samples);

/// Time average over steps [burn_in, horizon) within each trial, then mean and
/// CI across trials. workers = 0 uses the hardware concurrency. The result does
/// not depend on the number of workers.
LongRunEstimate estimate_long_run(const SimConfig& config, unsigned workers = 0);

struct SweepMonteCarlo {
    EstimateWithCI legit;
    EstimateWithCI eaves;
};

struct SweepRow {
    double mu = 0.0;
    double expected_legit = 0.0;
    double expected_eaves = 0.0;
    double p_bar = 0.0;
    double p_op = 0.0;
    double p_n = 0.0;
    double mu_op = 0.0;// NaN when undefined
    std::optional<SweepMonteCarlo> mc;
};

/// N interior points i / (N + 1), i = 1..N.
std::vector<double> interior_mu_grid(std::int64_t points);

/// One row per grid value, sorted by mu. Grid values must lie in [0, 1).
/// Monte Carlo columns reuse config with policy.mu replaced per row.
std::vector<SweepRow> sweep_mu(const SimConfig& config, std::span<const double> grid, bool with_mc,
                               unsigned workers = 0);

}// namespace secest

#endif// SECEST_MONTECARLO_HPP_
