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

#include "secest/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "secest/analysis.hpp"
#include "secest/error.hpp"
#include "secest/estimators.hpp"
#include "secest/rng.hpp"

namespace secest {

namespace {

// Per-step wiring: plant -> measurement -> sensor filter -> indicator ->
// packet -> channels -> both estimators -> sink.
template <typename Sink>
void simulate_trial(const SimConfig& config, std::uint64_t trial_index, Sink&& sink) {
    using rng::CounterStream;
    using rng::SequentialDraws;
    using rng::StreamTag;

    const SystemParams& system = config.system;
    const std::uint64_t seed = trial_seed(config, trial_index);
    const CounterStream initial_stream(seed, StreamTag::InitialState);
    SequentialDraws process_draws(CounterStream(seed, StreamTag::ProcessNoise));
    SequentialDraws measurement_draws(CounterStream(seed, StreamTag::MeasurementNoise));
    SequentialDraws user_draws(CounterStream(seed, StreamTag::UserChannel));
    SequentialDraws eaves_draws(CounterStream(seed, StreamTag::EavesChannel));
    SequentialDraws noise_draws(CounterStream(seed, StreamTag::NoisePacket));
    const EncodingPolicy policy = trial_policy(config, trial_index);
    SequentialDraws indicator_draws(CounterStream(policy.seed(), StreamTag::Indicator));

    const double p_bar = riccati_fixed_point(system);
    const double p_n = noise_use_variance(system);
    const double process_sd = std::sqrt(system.q());
    const double measurement_sd = std::sqrt(system.r());

    PlantState plant{std::sqrt(system.sigma0()) * initial_stream.normal(0), 0};
    SensorEstimate sensor;
    EstimatorState legit = initial_estimator_state(system);
    EstimatorState eaves = initial_estimator_state(system);

    for (std::int64_t k = 0; k < config.horizon; ++k) {
        const auto index = static_cast<std::uint64_t>(k);
        if (k > 0) {
            plant = step_plant(plant, system, process_sd * process_draws.normal(index - 1));
        }
        const double y = measure(plant, measurement_sd * measurement_draws.normal(index));
        sensor = k == 0 ? sensor_filter_init(y, system, p_bar) : sensor_filter_update(sensor, y, system);

        // Same values as indicator_at(policy, k); noise is only drawn when sent.
        const bool u = indicator_from_uniform(policy.mu(), indicator_draws.uniform(index));
        const double noise = u ? 0.0 : gen_noise(system.q(), noise_draws.normal(index));
        const Packet packet = form_packet(sensor.x_hat_s, noise, u, k);

        const ReceptionOutcome outcome =
            step_channels(config.channels, user_draws.uniform(index), eaves_draws.uniform(index));
        legit = legit_update(legit, outcome.lambda_user, u, packet.z, system, p_bar);
        eaves = eaves_update(eaves, outcome.lambda_eaves, u, packet.z, system, p_bar, p_n);

        const double err_user = plant.x - legit.x_hat;
        const double err_eaves = plant.x - eaves.x_hat;
        sink(StepRecord{k, plant.x, y, u, packet.z, outcome.lambda_user, outcome.lambda_eaves, sensor.x_hat_s,
                        legit.x_hat, eaves.x_hat, legit.p, eaves.p, err_user * err_user, err_eaves * err_eaves});
    }
}

// Time averages of one trial, in LongRunEstimate field order.
using TrialMeans = std::array<double, 4>;

TrialMeans trial_means(const SimConfig& config, std::uint64_t trial_index) {
    TrialMeans sums{};
    simulate_trial(config, trial_index, [&](const StepRecord& step) {
        if (step.k < config.burn_in) {
            return;
        }
        sums[0] += step.p;
        sums[1] += step.p_e;
        sums[2] += step.sq_err_user;
        sums[3] += step.sq_err_eaves;
    });
    const auto count = static_cast<double>(config.horizon - config.burn_in);
    for (double& s : sums) {
        s /= count;
    }
    return sums;
}

}// namespace

void SimConfig::validate() const {
    if (horizon < 1) {
        throw ParameterError("simulation.horizon must be >= 1");
    }
    if (burn_in < 0 || burn_in >= horizon) {
        throw ParameterError("simulation.burn_in must satisfy 0 <= burn_in < horizon");
    }
    if (trials < 1) {
        throw ParameterError("simulation.trials must be >= 1");
    }
}

std::uint64_t trial_seed(const SimConfig& config, std::uint64_t trial_index) {
    return rng::derive_seed(config.master_seed, trial_index);
}

EncodingPolicy trial_policy(const SimConfig& config, std::uint64_t trial_index) {
    if (config.common_indicator) {
        return config.policy;
    }
    return {config.policy.mu(), rng::derive_seed(config.policy.seed(), trial_index)};
}

TrajectoryRecord run_trial(const SimConfig& config, std::uint64_t trial_index) {
    config.validate();
    TrajectoryRecord record;
    record.trial_index = trial_index;
    record.steps.reserve(static_cast<std::size_t>(config.horizon));
    simulate_trial(config, trial_index, [&](const StepRecord& step) { record.steps.push_back(step); });
    return record;
}

EstimateWithCI summarize(std::span<const double> samples) {
    EstimateWithCI out;
    out.n_samples = static_cast<std::int64_t>(samples.size());
    if (samples.empty()) {
        out.mean = std::numeric_limits<double>::quiet_NaN();
        out.ci_half_width = std::numeric_limits<double>::infinity();
        return out;
    }
    double sum = 0.0;
    for (double s : samples) {
        sum += s;
    }
    const double n = static_cast<double>(samples.size());
    out.mean = sum / n;
    if (samples.size() < 2) {
        out.ci_half_width = std::numeric_limits<double>::infinity();
        return out;
    }
    double sq = 0.0;
    for (double s : samples) {
        sq += (s - out.mean) * (s - out.mean);
    }
    out.ci_half_width = 1.96 * std::sqrt(sq / (n - 1.0)) / std::sqrt(n);
    return out;
}

LongRunEstimate estimate_long_run(const SimConfig& config, unsigned workers) {
    config.validate();
    const auto trials = static_cast<std::size_t>(config.trials);
    std::vector<TrialMeans> per_trial(trials);

    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, trials));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < trials; i = next++) {
            per_trial[i] = trial_means(config, i);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }

    // Reduction in trial order so the result is independent of scheduling.
    std::array<EstimateWithCI, 4> summaries;
    std::vector<double> column(trials);
    for (std::size_t field = 0; field < 4; ++field) {
        for (std::size_t i = 0; i < trials; ++i) {
            column[i] = per_trial[i][field];
        }
        summaries[field] = summarize(column);
    }
    return {summaries[0], summaries[1], summaries[2], summaries[3]};
}

std::vector<double> interior_mu_grid(std::int64_t points) {
    if (points < 1) {
        throw ParameterError("grid needs at least one point");
    }
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    for (std::int64_t i = 1; i <= points; ++i) {
        grid.push_back(static_cast<double>(i) / static_cast<double>(points + 1));
    }
    return grid;
}

std::vector<SweepRow> sweep_mu(const SimConfig& config, std::span<const double> grid, bool with_mc,
                               unsigned workers) {
    for (double mu : grid) {
        if (!(mu >= 0.0 && mu < 1.0)) {
            throw ParameterError("sweep grid values must lie in [0, 1), got " + std::to_string(mu));
        }
    }
    std::vector<double> sorted(grid.begin(), grid.end());
    std::sort(sorted.begin(), sorted.end());

    const SystemParams& system = config.system;
    const double p_bar = riccati_fixed_point(system);
    const double p_op = open_loop_variance(system);
    const double p_n = noise_use_variance(system);
    double mu_op = std::numeric_limits<double>::quiet_NaN();
    if (config.channels.gamma_eaves() < 1.0) {
        mu_op = design_mu_op(system, config.channels.gamma_eaves()).mu_op;
    }

    std::vector<SweepRow> rows;
    rows.reserve(sorted.size());
    for (double mu : sorted) {
        SweepRow row;
        row.mu = mu;
        row.expected_legit = expected_legit_variance(system, config.channels.gamma_user(), mu);
        row.expected_eaves = expected_eaves_variance(system, config.channels.gamma_eaves(), mu);
        row.p_bar = p_bar;
        row.p_op = p_op;
        row.p_n = p_n;
        row.mu_op = mu_op;
        if (with_mc) {
            SimConfig point = config;
            point.policy = EncodingPolicy(mu, config.policy.seed());
            const LongRunEstimate est = estimate_long_run(point, workers);
            row.mc = SweepMonteCarlo{est.legit, est.eaves};
        }
        rows.push_back(row);
    }
    return rows;
}

}// namespace secest
