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

#ifndef SECEST_ANALYSIS_HPP_
#define SECEST_ANALYSIS_HPP_

#include <cstdint>

#include "secest/model.hpp"

namespace secest {

/// Outcome of the noise-probability design. The secrecy range is the open
/// interval (mu_lo, mu_hi).
struct DesignResult {
    double mu_op = 0.0;
    double mu_lo = 0.0;
    double mu_hi = 1.0;
    bool feasible = false;
};

/// Long-run expected error variance of the legitimate user. Returns P^OP
/// exactly when gamma_user = 1 or mu = 1.
double expected_legit_variance(const SystemParams& params, double gamma_user, double mu);

/// Long-run expected error variance of the eavesdropper (sensor viewpoint).
/// Independent of the user channel. Returns P^OP exactly when gamma_eaves = 1.
double expected_eaves_variance(const SystemParams& params, double gamma_eaves, double mu);

/// Noise probability that puts the eavesdropper exactly at open-loop
/// performance. Throws DesignError when gamma_eaves = 1. A value outside
/// [0, 1) is reported with feasible = false, not clamped.
DesignResult design_mu_op(const SystemParams& params, double gamma_eaves);

/// Range of mu for which the user beats open loop and the eavesdropper does
/// not. Both probabilities must lie in [0, 1).
DesignResult secrecy_range(const SystemParams& params, double gamma_user, double gamma_eaves);

/// Stationary probability of j consecutive non-informative steps at the user.
double stationary_legit(double gamma_user, double mu, std::int64_t j);

/// Stationary distribution of the eavesdropper's two-track chain: even j are
/// j/2 dropouts after a genuine estimate, odd j are (j-1)/2 dropouts after a
/// noise packet.
double stationary_eaves(double gamma_eaves, double mu, std::int64_t j);

struct ChainTruncation {
    std::int64_t max_states = 200;
    double tail_mass = 0.0;
};

struct ChainOracleResult {
    double value = 0.0;
    ChainTruncation truncation;
    /// Upper bound on |value - infinite sum|.
    double tail_bound = 0.0;
};

inline constexpr std::int64_t kDefaultChainStates = 200;
inline constexpr double kDefaultTailTolerance = 1e-9;

/// Truncated sum of stationary probability times conditional variance over
/// chain states 0..max_states. Throws TruncationError when the dropped mass
/// exceeds tail_tolerance.
ChainOracleResult chain_oracle_legit(const SystemParams& params, double gamma_user, double mu,
                                     std::int64_t max_states = kDefaultChainStates,
                                     double tail_tolerance = kDefaultTailTolerance);

ChainOracleResult chain_oracle_eaves(const SystemParams& params, double gamma_eaves, double mu,
                                     std::int64_t max_states = kDefaultChainStates,
                                     double tail_tolerance = kDefaultTailTolerance);

/// Smallest truncation depth whose dropped mass is at most tail_tolerance.
std::int64_t required_chain_states_legit(double gamma_user, double mu, double tail_tolerance);
std::int64_t required_chain_states_eaves(double gamma_eaves, double mu, double tail_tolerance);

}// namespace secest

#endif// SECEST_ANALYSIS_HPP_
