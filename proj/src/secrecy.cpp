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

#include "secest/secrecy.hpp"

#include <cmath>
#include <string>

#include "secest/error.hpp"
#include "secest/rng.hpp"

namespace secest {

EncodingPolicy::EncodingPolicy(double mu, std::uint64_t seed) : mu_(mu), seed_(seed) {
    if (!(mu >= 0.0 && mu < 1.0)) {
        throw ParameterError("encoding.mu must satisfy 0 <= mu < 1, got " + std::to_string(mu));
    }
}

bool indicator_at(const EncodingPolicy& policy, std::uint64_t k) {
    const rng::CounterStream stream(policy.seed(), rng::StreamTag::Indicator);
    return indicator_from_uniform(policy.mu(), stream.uniform(k));
}

double gen_noise(double q, double standard_normal_draw) {
    if (q < 0.0) {
        throw ParameterError("noise variance must be >= 0");
    }
    return std::sqrt(q) * standard_normal_draw;
}

Packet form_packet(double x_hat_s, double n, bool u, std::int64_t k) { return {u ? x_hat_s : n, k}; }

}// namespace secest
