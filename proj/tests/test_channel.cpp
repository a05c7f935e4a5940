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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "secest/channel.hpp"
#include "secest/error.hpp"
#include "secest/rng.hpp"
#include "secest/secrecy.hpp"

using namespace secest;

namespace {

double correlation(const std::vector<bool>& a, const std::vector<bool>& b) {
    const double n = static_cast<double>(a.size());
    double sa = 0, sb = 0, sab = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sa += a[i];
        sb += b[i];
        sab += a[i] && b[i];
    }
    const double ma = sa / n, mb = sb / n;
    return (sab / n - ma * mb) / std::sqrt(ma * (1 - ma) * mb * (1 - mb));
}

}// namespace

TEST_CASE("channel parameter validation") {
    CHECK_NOTHROW(ChannelParams(0.0, 1.0));
    CHECK_THROWS_AS(ChannelParams(-0.1, 0.3), ParameterError);
    CHECK_THROWS_AS(ChannelParams(0.3, 1.01), ParameterError);
}

TEST_CASE("perfect and blacked-out channels") {
    const ChannelParams perfect(0.0, 0.0);
    const ChannelParams blackout(1.0, 1.0);
    for (double d : {0.0, 0.25, 0.5, 0.999999}) {
        CHECK(step_channels(perfect, d, d) == ReceptionOutcome{true, true});
        CHECK(step_channels(blackout, d, d) == ReceptionOutcome{false, false});
    }
    CHECK(step_channels(ChannelParams(0.3, 0.3), 0.29, 0.3) == ReceptionOutcome{false, true});
}

TEST_CASE("dropout frequency and independence of the three bit streams") {
    const ChannelParams params(0.3, 0.3);
    const rng::CounterStream user(8, rng::StreamTag::UserChannel);
    const rng::CounterStream eaves(8, rng::StreamTag::EavesChannel);
    const EncodingPolicy policy(0.5, 8);

    constexpr std::uint64_t n = 1000000;
    std::vector<bool> lu, le, u;
    lu.reserve(n);
    le.reserve(n);
    u.reserve(n);
    int drops = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
        const auto outcome = step_channels(params, user.uniform(k), eaves.uniform(k));
        lu.push_back(outcome.lambda_user);
        le.push_back(outcome.lambda_eaves);
        u.push_back(indicator_at(policy, k));
        drops += !outcome.lambda_user;
    }
    CHECK(std::abs(static_cast<double>(drops) / n - 0.3) < 0.002);
    CHECK(std::abs(correlation(lu, le)) < 0.005);
    CHECK(std::abs(correlation(lu, u)) < 0.005);
    CHECK(std::abs(correlation(le, u)) < 0.005);
}
