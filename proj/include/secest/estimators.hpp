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

#ifndef SECEST_ESTIMATORS_HPP_
#define SECEST_ESTIMATORS_HPP_

#include <cstdint>

#include "secest/model.hpp"

namespace secest {

/// Estimate and sensor-viewpoint error variance of one receiving party.
struct EstimatorState {
    double x_hat = 0.0;
    double p = 0.0;
    std::int64_t k = -1;

    bool operator==(const EstimatorState&) const = default;
};

/// Prior before the first packet: x_hat = 0, p = sigma0, k = -1.
EstimatorState initial_estimator_state(const SystemParams& params);

/// Error variance of an eavesdropper that adopts a noise packet as its
/// estimate: P_n = q / (1 - a^2) + q.
double noise_use_variance(const SystemParams& params);

/// Legitimate user. Synchronizes with the sensor when a packet arrives and
/// u = 1; otherwise predicts (a dropped packet and a known noise packet are
/// handled identically; the noise payload is discarded).
EstimatorState legit_update(const EstimatorState& prev, bool lambda, bool u, double z,
                            const SystemParams& params, double p_bar);

/// Eavesdropper. Adopts every received payload; u only selects the variance
/// branch (P-bar vs P_n), never the estimate.
EstimatorState eaves_update(const EstimatorState& prev, bool lambda_e, bool u, double z,
                            const SystemParams& params, double p_bar, double p_n);

/// Variance the eavesdropper itself believes it has: it treats every
/// received payload as a sensor estimate.
double eaves_believed_variance(double prev_believed, bool lambda_e, const SystemParams& params,
                               double p_bar);

}// namespace secest

#endif// SECEST_ESTIMATORS_HPP_
