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

#ifndef SECEST_CLI_HPP_
#define SECEST_CLI_HPP_

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "secest/montecarlo.hpp"

namespace secest {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 2;
inline constexpr int kInfeasible = 3;
inline constexpr int kIoError = 4;
inline constexpr int kVerifyFailed = 5;
}// namespace exit_code

inline constexpr const char* kSweepHeader = "mu,expected_legit,expected_eaves,p_bar,p_op,p_n,mu_op";
inline constexpr const char* kSweepMcHeader = ",mc_legit,mc_legit_ci,mc_eaves,mc_eaves_ci";
inline constexpr const char* kTrajectoryHeader = "k,x,y,u,z,lambda,lambda_e,xhat_s,xhat,xhat_e,p,p_e,sqerr,sqerr_e";

/// 12 significant digits.
std::string format_number(double v);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool with_mc);
void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record);

/// Closed-form routes used by the verification battery; replaceable so a
/// corrupted formula can be injected as a negative control.
struct VerifyHooks {
    std::function<double(const SystemParams&, double, double)> legit_closed_form;
    std::function<double(const SystemParams&, double, double)> eaves_closed_form;

    static VerifyHooks standard();
};

struct VerifyComparison {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double allowance = 0.0;
    bool skipped = false;
    std::string note;

    bool passed() const;
    /// |lhs - rhs| / allowance; > 1 means failure.
    double severity() const;
};

struct VerifyReport {
    std::vector<VerifyComparison> comparisons;

    bool passed() const;
    /// Comparison with the largest severity, or nullptr when none ran.
    const VerifyComparison* worst() const;
};

/// Pairwise closed form / chain oracle / Monte Carlo battery for both
/// parties. The chain pair is held to its tail bound + 1e-10; pairs involving
/// Monte Carlo to tolerance * |reference| + CI half-width.
VerifyReport verify_config(const SimConfig& config, double tolerance, unsigned workers = 0,
                           const VerifyHooks& hooks = VerifyHooks::standard());

/// Entry point of the secest tool; returns the process exit code. hooks
/// replace the closed forms used by `verify`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const VerifyHooks& hooks = VerifyHooks::standard());

}// namespace secest

#endif// SECEST_CLI_HPP_
