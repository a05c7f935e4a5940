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

#ifndef SECEST_SECRECY_HPP_
#define SECEST_SECRECY_HPP_

#include <cstdint>

namespace secest {

/// Noise-injection policy shared by the sensor and the legitimate user.
/// mu is the probability of transmitting noise; it must lie in [0, 1).
class EncodingPolicy {
  public:
    EncodingPolicy(double mu, std::uint64_t seed);

    double mu() const { return mu_; }
    std::uint64_t seed() const { return seed_; }

    bool operator==(const EncodingPolicy&) const = default;

  private:
    double mu_;
    std::uint64_t seed_;
};

struct Packet {
    double z = 0.0;
    std::int64_t k = 0;
};

/// Pre-arranged indicator u_k: false (send noise) with probability mu.
/// Pure random-access function of (seed, k).
bool indicator_at(const EncodingPolicy& policy, std::uint64_t k);

/// Thresholding shared by indicator_at and sequential readers of the
/// indicator substream.
inline bool indicator_from_uniform(double mu, double uniform) { return !(uniform < mu); }

/// Noise payload sqrt(q) * draw for a standard-normal draw.
double gen_noise(double q, double standard_normal_draw);

/// z_k = x_hat_s when u = 1, z_k = n when u = 0.
Packet form_packet(double x_hat_s, double n, bool u, std::int64_t k);

}// namespace secest

#endif// SECEST_SECRECY_HPP_
