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

#ifndef SECEST_MODEL_HPP_
#define SECEST_MODEL_HPP_

#include <cstdint>
#include <optional>

namespace secest {

/**
 * Parameters of the scalar plant
 *
 *     x_{k+1} = a x_k + w_k,   y_k = x_k + v_k,
 *
 * with w_k ~ N(0, q), v_k ~ N(0, r) and x_0 ~ N(0, sigma0).
 * Construction validates |a| < 1, q >= 0, r > 0, sigma0 >= 0. When sigma0 is
 * omitted the plant starts in its stationary distribution, sigma0 = q/(1-a^2).
 */
class SystemParams {
  public:
    SystemParams(double a, double q, double r, std::optional<double> sigma0 = std::nullopt);

    double a() const { return a_; }
    double q() const { return q_; }
    double r() const { return r_; }
    double sigma0() const { return sigma0_; }

    bool operator==(const SystemParams&) const = default;

  private:
    double a_;
    double q_;
    double r_;
    double sigma0_;
};

struct PlantState {
    double x = 0.0;
    std::int64_t k = 0;
};

/// Sensor-side steady-state estimate. p_bar is carried along unchanged.
struct SensorEstimate {
    double x_hat_s = 0.0;
    double p_bar = 0.0;
};

/// Right-hand side of the steady-state Riccati equation.
double riccati_map(const SystemParams& params, double p);

/// Steady-state error variance of the sensor's Kalman filter (P-bar).
/// Closed-form root of the scalar quadratic, polished by fixed-point iteration.
double riccati_fixed_point(const SystemParams& params);

/// Asymptotic open-loop prediction variance q / (1 - a^2).
double open_loop_variance(const SystemParams& params);

/// Steady-state Kalman gain (a^2 P + q) / (a^2 P + q + r).
double steady_state_gain(const SystemParams& params, double p_bar);

PlantState step_plant(const PlantState& state, const SystemParams& params, double noise_draw);

double measure(const PlantState& state, double noise_draw);

/// Filter start at k = 0 with the steady-state gain: x_hat = K y_0.
SensorEstimate sensor_filter_init(double y0, const SystemParams& params, double p_bar);

SensorEstimate sensor_filter_update(const SensorEstimate& prev, double y, const SystemParams& params);

}// namespace secest

#endif// SECEST_MODEL_HPP_
