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

#ifndef SECEST_CONFIG_HPP_
#define SECEST_CONFIG_HPP_

#include <string>
#include <string_view>

#include <json.hpp>

#include "secest/montecarlo.hpp"

namespace secest {

/**
 * Experiment configuration file (YAML; JSON is accepted as a subset):
 *
 *     system:     { a: 0.6, q: 0.01, r: 0.01, sigma0: 0.015625 }   # sigma0 optional
 *     channels:   { gamma_user: 0.3, gamma_eaves: 0.3 }
 *     encoding:   { mu: 0.6, seed: 42, common_indicator: false }    # optional
 *     simulation: { horizon: 100000, burn_in: 1000, trials: 100, master_seed: 1 }  # optional
 *
 * Unknown keys are rejected. Errors are raised as ConfigError with a
 * "source:line: message" prefix.
 */
SimConfig parse_config(std::string_view text, const std::string& source_name = "<config>");

SimConfig load_config(const std::string& path);

/// Fully resolved echo of a configuration (sigma0 explicit). Feeding
/// config_to_json(c).dump() back into parse_config reproduces c exactly.
nlohmann::ordered_json config_to_json(const SimConfig& config);

}// namespace secest

#endif// SECEST_CONFIG_HPP_
