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

#ifndef SECEST_CHANNEL_HPP_
#define SECEST_CHANNEL_HPP_

namespace secest {

/// Dropout probabilities of the two i.i.d. Bernoulli erasure channels.
class ChannelParams {
  public:
    ChannelParams(double gamma_user, double gamma_eaves);

    double gamma_user() const { return gamma_user_; }
    double gamma_eaves() const { return gamma_eaves_; }

    bool operator==(const ChannelParams&) const = default;

  private:
    double gamma_user_;
    double gamma_eaves_;
};

struct ReceptionOutcome {
    bool lambda_user = true;
    bool lambda_eaves = true;

    bool operator==(const ReceptionOutcome&) const = default;
};

/// lambda = 0 iff the uniform draw falls below the dropout probability.
ReceptionOutcome step_channels(const ChannelParams& params, double draw_user, double draw_eaves);

}// namespace secest

#endif// SECEST_CHANNEL_HPP_
