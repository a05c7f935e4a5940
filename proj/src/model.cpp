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

#include "secest/model.hpp"

#include <cmath>
#include <string>

#include "secest/error.hpp"

namespace secest {

SystemParams::SystemParams(double a, double q, double r, std::optional<double> sigma0)
    : a_(a), q_(q), r_(r), sigma0_(0.0) {
    if (!std::isfinite(a) || std::abs(a) >= 1.0) {
        throw ParameterError("system.a must satisfy |a| < 1 (stable plant), got " + std::to_string(a));
    }
    if (!std::isfinite(q) || q < 0.0) {
        throw ParameterError("system.q must be >= 0, got " + std::to_string(q));
    }
    if (!std::isfinite(r) || r <= 0.0) {
        throw ParameterError("system.r must be > 0, got " + std::to_string(r));
    }
    sigma0_ = sigma0.value_or(q / (1.0 - a * a));
    if (!std::isfinite(sigma0_) || sigma0_ < 0.0) {
        throw ParameterError("system.sigma0 must be >= 0, got " + std::to_string(sigma0_));
    }
}

double riccati_map(const SystemParams& params, double p) {
    const double m = params.a() * params.a() * p + params.q();
    return m - m * m / (m + params.r());
}

double riccati_fixed_point(const SystemParams& params) {
    const double a2 = params.a() * params.a();
    const double q = params.q();
    const double r = params.r();
    // a^2 P^2 + (q + r(1 - a^2)) P - q r = 0, positive root in the
    // cancellation-free form (also valid for a = 0).
    const double b = q + r * (1.0 - a2);
    double p = 2.0 * q * r / (b + std::sqrt(b * b + 4.0 * a2 * q * r));
    // The map is a contraction near the root; a few passes absorb rounding.
    for (int i = 0; i < 8; ++i) {
        const double next = riccati_map(params, p);
        if (next == p) {
            break;
        }
        p = next;
    }
    return p;
}

double open_loop_variance(const SystemParams& params) {
    return params.q() / (1.0 - params.a() * params.a());
}

double steady_state_gain(const SystemParams& params, double p_bar) {
    const double m = params.a() * params.a() * p_bar + params.q();
    return m / (m + params.r());
}

PlantState step_plant(const PlantState& state, const SystemParams& params, double noise_draw) {
    return {params.a() * state.x + noise_draw, state.k + 1};
}

double measure(const PlantState& state, double noise_draw) { return state.x + noise_draw; }

SensorEstimate sensor_filter_init(double y0, const SystemParams& params, double p_bar) {
    return {steady_state_gain(params, p_bar) * y0, p_bar};
}

SensorEstimate sensor_filter_update(const SensorEstimate& prev, double y, const SystemParams& params) {
    const double gain = steady_state_gain(params, prev.p_bar);
    const double predicted = params.a() * prev.x_hat_s;
    return {predicted + gain * (y - predicted), prev.p_bar};
}

}// namespace secest
