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

#ifndef SECEST_RNG_HPP_
#define SECEST_RNG_HPP_

// Counter-based random streams. Every draw is a pure function of
// (key, stream tag, index), so any party holding the key can reproduce the
// value at index k without replaying indices 0..k-1.
//
// The block function is Philox4x32-10. Normals come
// from inverting the Gaussian CDF so that each draw consumes exactly one
// 64-bit word.

#include <array>
#include <cmath>
#include <cstdint>

namespace secest::rng {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

namespace detail {

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

constexpr PhiloxCounter philox_round(const PhiloxCounter& ctr, const PhiloxKey& key) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    return {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
            static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
}

}// namespace detail

/// Philox4x32 with 10 rounds.
constexpr PhiloxCounter philox4x32(PhiloxCounter ctr, PhiloxKey key) {
    for (int round = 0; round < 10; ++round) {
        ctr = detail::philox_round(ctr, key);
        key[0] += detail::kPhiloxW0;
        key[1] += detail::kPhiloxW1;
    }
    return ctr;
}

/// SplitMix64 finalizer; used to derive keys, never to produce draws.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Key for a sub-entity (e.g. a trial) of a parent seed.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
    return mix64(mix64(parent) ^ mix64(index + 0x632BE59BD9B4E019ull));
}

/// Substream tags. The numeric values are part of the reproducibility
/// contract; do not renumber.
enum class StreamTag : std::uint32_t {
    ProcessNoise = 1,
    MeasurementNoise = 2,
    UserChannel = 3,
    EavesChannel = 4,
    NoisePacket = 5,
    Indicator = 6,
    InitialState = 7,
};

/// Standard normal quantile, Wichura's AS 241 (PPND16); about 1e-16 relative
/// accuracy on (0, 1).
inline double normal_quantile(double p) {
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r + 6.7265770927008700853e+4) * r +
                    4.5921953931549871457e+4) * r + 1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r + 3.9307895800092710610e+4) * r +
                    2.1213794301586595867e+4) * r + 5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }
    double r = std::sqrt(-std::log(q < 0.0 ? p : 1.0 - p));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r + 2.41780725177450611770e-1) * r +
                     1.27045825245236838258e+0) * r + 3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
                  4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
                (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r + 1.51986665636164571966e-2) * r +
                     1.48103976427480074590e-1) * r + 6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
                  2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r + 1.24266094738807843860e-3) * r +
                     2.65321895265761230930e-2) * r + 2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
                  5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
                (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r + 1.84631831751005468180e-5) * r +
                     7.86869131145613259100e-4) * r + 1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                  5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -value : value;
}

/// Maps 32 random bits to [0, 1).
constexpr double unit_from_word(std::uint32_t x) { return static_cast<double>(x) * 0x1.0p-32; }

/// Maps 64 random bits to the open interval (0, 1) with 53-bit resolution.
constexpr double unit_open(std::uint64_t x) { return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53; }

constexpr std::uint64_t join_words(std::uint32_t lo, std::uint32_t hi) {
    return (static_cast<std::uint64_t>(hi) << 32) | lo;
}

/// One tagged substream under a 64-bit key.
///
/// Uniform draw k is 32-bit lane (k & 3) of Philox block (k >> 2); normal draw
/// k inverts the 64-bit half (k & 1) of block (k >> 1). A stream is meant to be
/// read through one of the two kinds only.
class CounterStream {
  public:
    constexpr CounterStream(std::uint64_t seed, StreamTag tag)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, tag_(tag) {}

    constexpr PhiloxCounter block(std::uint64_t block_index) const {
        return philox4x32({static_cast<std::uint32_t>(block_index), static_cast<std::uint32_t>(block_index >> 32),
                           static_cast<std::uint32_t>(tag_), 0u},
                          key_);
    }

    /// Uniform on [0, 1) with 32-bit resolution.
    constexpr double uniform(std::uint64_t index) const { return unit_from_word(block(index >> 2)[index & 3]); }

    /// Standard normal by inversion of a 53-bit open uniform.
    double normal(std::uint64_t index) const {
        const PhiloxCounter b = block(index >> 1);
        const std::size_t lane = 2 * (index & 1);
        return normal_quantile(unit_open(join_words(b[lane], b[lane + 1])));
    }

    StreamTag tag() const { return tag_; }

  private:
    PhiloxKey key_;
    StreamTag tag_;
};

/// Sequential reader over a CounterStream that reuses each Philox block for
/// all of its lanes. Produces exactly the values of the random-access calls.
class SequentialDraws {
  public:
    explicit SequentialDraws(CounterStream stream) : stream_(stream) {}

    double uniform(std::uint64_t index) { return unit_from_word(fetch(index >> 2)[index & 3]); }

    double normal(std::uint64_t index) {
        const PhiloxCounter& b = fetch(index >> 1);
        const std::size_t lane = 2 * (index & 1);
        return normal_quantile(unit_open(join_words(b[lane], b[lane + 1])));
    }

  private:
    const PhiloxCounter& fetch(std::uint64_t block_index) {
        if (!valid_ || block_index != cached_index_) {
            cached_ = stream_.block(block_index);
            cached_index_ = block_index;
            valid_ = true;
        }
        return cached_;
    }

    CounterStream stream_;
    PhiloxCounter cached_{};
    std::uint64_t cached_index_ = 0;
    bool valid_ = false;
};

}// namespace secest::rng

#endif// SECEST_RNG_HPP_
