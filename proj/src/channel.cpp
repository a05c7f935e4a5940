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

#include "secest/channel.hpp"

#include <string>

#include "secest/error.hpp"

namespace secest {

namespace {

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ParameterError(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
    }
}

}// namespace

ChannelParams::ChannelParams(double gamma_user, double gamma_eaves)
    : gamma_user_(gamma_user), gamma_eaves_(gamma_eaves) {
    check_probability(gamma_user, "channels.gamma_user");
    check_probability(gamma_eaves, "channels.gamma_eaves");
}

ReceptionOutcome step_channels(const ChannelParams& params, double draw_user, double draw_eaves) {
    return {!(draw_user < params.gamma_user()), !(draw_eaves < params.gamma_eaves())};
}

}// namespace secest
