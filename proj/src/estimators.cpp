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

#include "secest/estimators.hpp"

namespace secest {

namespace {

double predict_variance(const SystemParams& params, double p) {
    return params.a() * params.a() * p + params.q();
}

}// namespace

EstimatorState initial_estimator_state(const SystemParams& params) { return {0.0, params.sigma0(), -1}; }

double noise_use_variance(const SystemParams& params) { return open_loop_variance(params) + params.q(); }

EstimatorState legit_update(const EstimatorState& prev, bool lambda, bool u, double z,
                            const SystemParams& params, double p_bar) {
    if (lambda && u) {
        return {z, p_bar, prev.k + 1};
    }
    return {params.a() * prev.x_hat, predict_variance(params, prev.p), prev.k + 1};
}

EstimatorState eaves_update(const EstimatorState& prev, bool lambda_e, bool u, double z,
                            const SystemParams& params, double p_bar, double p_n) {
    if (lambda_e) {
        return {z, u ? p_bar : p_n, prev.k + 1};
    }
    return {params.a() * prev.x_hat, predict_variance(params, prev.p), prev.k + 1};
}

double eaves_believed_variance(double prev_believed, bool lambda_e, const SystemParams& params,
                               double p_bar) {
    return lambda_e ? p_bar : predict_variance(params, prev_believed);
}

}// namespace secest
