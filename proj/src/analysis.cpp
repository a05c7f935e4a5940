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

#include "secest/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "secest/error.hpp"
#include "secest/estimators.hpp"

namespace secest {

namespace {

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ParameterError(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
    }
}

void check_open_probability(double p, const char* name) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw ParameterError(std::string(name) + " must lie in [0, 1), got " + std::to_string(p));
    }
}

// Probability that a step delivers nothing usable to the user.
double legit_miss_probability(double gamma_user, double mu) { return gamma_user + (1.0 - gamma_user) * mu; }

double legit_tail_mass(double gamma_user, double mu, std::int64_t max_states) {
    return std::pow(legit_miss_probability(gamma_user, mu), static_cast<double>(max_states + 1));
}

double eaves_tail_mass(double gamma_eaves, double mu, std::int64_t max_states) {
    // First dropped index on each track: even 2m > J, odd 2m + 1 > J.
    const auto even_first = static_cast<double>(max_states / 2 + 1);
    const auto odd_first = static_cast<double>((max_states + 1) / 2);
    return std::pow(gamma_eaves, even_first) * (1.0 - mu) + std::pow(gamma_eaves, odd_first) * mu;
}

template <typename TailFn>
std::int64_t smallest_depth(TailFn tail, double tail_tolerance) {
    std::int64_t lo = 0;
    std::int64_t hi = std::int64_t{1} << 40;
    if (tail(hi) > tail_tolerance) {
        throw TruncationError("no finite truncation depth reaches the requested tail tolerance");
    }
    while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (tail(mid) <= tail_tolerance) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

void check_truncation(double tail_mass, double tail_tolerance, std::int64_t max_states) {
    if (tail_mass > tail_tolerance) {
        throw TruncationError("chain truncation at " + std::to_string(max_states) + " states drops mass " +
                              std::to_string(tail_mass) + " > tolerance " + std::to_string(tail_tolerance) +
                              "; widen the truncation");
    }
}

}// namespace

double expected_legit_variance(const SystemParams& params, double gamma_user, double mu) {
    check_probability(gamma_user, "gamma_user");
    check_probability(mu, "mu");
    if (gamma_user == 1.0 || mu == 1.0) {
        return open_loop_variance(params);
    }
    const double p_bar = riccati_fixed_point(params);
    const double miss = legit_miss_probability(gamma_user, mu);
    const double a2 = params.a() * params.a();
    return (p_bar * (1.0 - gamma_user) * (1.0 - mu) + params.q() * miss) / (1.0 - a2 * miss);
}

double expected_eaves_variance(const SystemParams& params, double gamma_eaves, double mu) {
    check_probability(gamma_eaves, "gamma_eaves");
    check_probability(mu, "mu");
    if (gamma_eaves == 1.0) {
        return open_loop_variance(params);
    }
    const double p_bar = riccati_fixed_point(params);
    const double p_n = noise_use_variance(params);
    const double a2 = params.a() * params.a();
    const double received = 1.0 - gamma_eaves;
    return (p_bar * received * (1.0 - mu) + params.q() * gamma_eaves + p_n * received * mu) /
           (1.0 - a2 * gamma_eaves);
}

DesignResult design_mu_op(const SystemParams& params, double gamma_eaves) {
    check_probability(gamma_eaves, "gamma_eaves");
    if (gamma_eaves == 1.0) {
        throw DesignError("eavesdropper already at open loop (gamma_eaves = 1)");
    }
    const double p_bar = riccati_fixed_point(params);
    const double p_op = open_loop_variance(params);
    const double p_n = noise_use_variance(params);
    const double a2 = params.a() * params.a();
    const double g = gamma_eaves;
    const double numerator = p_op * (a2 * g - 1.0) - g * p_bar + g * params.q() + p_bar;
    const double denominator = (g - 1.0) * (p_n - p_bar);

    DesignResult result;
    result.mu_op = denominator != 0.0 ? numerator / denominator : std::numeric_limits<double>::quiet_NaN();
    result.feasible = result.mu_op >= 0.0 && result.mu_op < 1.0;
    if (result.feasible) {
        result.mu_lo = result.mu_op;
        result.mu_hi = 1.0;
    } else {
        result.mu_lo = std::numeric_limits<double>::quiet_NaN();
        result.mu_hi = std::numeric_limits<double>::quiet_NaN();
    }
    return result;
}

DesignResult secrecy_range(const SystemParams& params, double gamma_user, double gamma_eaves) {
    check_open_probability(gamma_user, "gamma_user");
    check_open_probability(gamma_eaves, "gamma_eaves");
    return design_mu_op(params, gamma_eaves);
}

double stationary_legit(double gamma_user, double mu, std::int64_t j) {
    check_open_probability(gamma_user, "gamma_user");
    check_open_probability(mu, "mu");
    if (j < 0) {
        throw ParameterError("chain state index must be >= 0");
    }
    return std::pow(legit_miss_probability(gamma_user, mu), static_cast<double>(j)) * (1.0 - gamma_user) *
           (1.0 - mu);
}

double stationary_eaves(double gamma_eaves, double mu, std::int64_t j) {
    check_open_probability(gamma_eaves, "gamma_eaves");
    check_probability(mu, "mu");
    if (j < 0) {
        throw ParameterError("chain state index must be >= 0");
    }
    const double root = (j % 2 == 0) ? (1.0 - gamma_eaves) * (1.0 - mu) : (1.0 - gamma_eaves) * mu;
    return std::pow(gamma_eaves, static_cast<double>(j / 2)) * root;
}

std::int64_t required_chain_states_legit(double gamma_user, double mu, double tail_tolerance) {
    check_open_probability(gamma_user, "gamma_user");
    check_open_probability(mu, "mu");
    return std::max<std::int64_t>(
        1, smallest_depth([&](std::int64_t n) { return legit_tail_mass(gamma_user, mu, n); }, tail_tolerance));
}

std::int64_t required_chain_states_eaves(double gamma_eaves, double mu, double tail_tolerance) {
    check_open_probability(gamma_eaves, "gamma_eaves");
    check_probability(mu, "mu");
    return std::max<std::int64_t>(
        1, smallest_depth([&](std::int64_t n) { return eaves_tail_mass(gamma_eaves, mu, n); }, tail_tolerance));
}

ChainOracleResult chain_oracle_legit(const SystemParams& params, double gamma_user, double mu,
                                     std::int64_t max_states, double tail_tolerance) {
    check_open_probability(gamma_user, "gamma_user");
    check_open_probability(mu, "mu");
    if (max_states < 1) {
        throw ParameterError("chain truncation needs at least one state");
    }
    const double tail_mass = legit_tail_mass(gamma_user, mu, max_states);
    check_truncation(tail_mass, tail_tolerance, max_states);

    const double a2 = params.a() * params.a();
    const double miss = legit_miss_probability(gamma_user, mu);
    double weight = (1.0 - gamma_user) * (1.0 - mu);// pi_0
    double conditional = riccati_fixed_point(params);// E[P | S = 0]
    double sum = 0.0;
    for (std::int64_t j = 0; j <= max_states; ++j) {
        sum += weight * conditional;
        weight *= miss;
        conditional = a2 * conditional + params.q();
    }
    return {sum, {max_states, tail_mass}, tail_mass * open_loop_variance(params)};
}

ChainOracleResult chain_oracle_eaves(const SystemParams& params, double gamma_eaves, double mu,
                                     std::int64_t max_states, double tail_tolerance) {
    check_open_probability(gamma_eaves, "gamma_eaves");
    check_probability(mu, "mu");
    if (max_states < 1) {
        throw ParameterError("chain truncation needs at least one state");
    }
    const double tail_mass = eaves_tail_mass(gamma_eaves, mu, max_states);
    check_truncation(tail_mass, tail_tolerance, max_states);

    const double a2 = params.a() * params.a();
    const double p_n = noise_use_variance(params);
    // Track 0 roots at P-bar (genuine estimate), track 1 at P_n (noise).
    double weight[2] = {(1.0 - gamma_eaves) * (1.0 - mu), (1.0 - gamma_eaves) * mu};
    double conditional[2] = {riccati_fixed_point(params), p_n};
    double sum = 0.0;
    for (std::int64_t j = 0; j <= max_states; ++j) {
        const auto track = static_cast<std::size_t>(j % 2);
        sum += weight[track] * conditional[track];
        weight[track] *= gamma_eaves;
        conditional[track] = a2 * conditional[track] + params.q();
    }
    return {sum, {max_states, tail_mass}, tail_mass * std::max(p_n, open_loop_variance(params))};
}

}// namespace secest
