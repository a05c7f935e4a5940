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

#ifndef SECEST_ERROR_HPP_
#define SECEST_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace secest {

/// Raised when a parameter violates a documented precondition.
class ParameterError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by the chain oracles when the dropped stationary mass exceeds the
/// configured tolerance. Widen the truncation and retry.
class TruncationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when the noise-probability design is undefined (eavesdropper channel
/// fully lost).
class DesignError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed or invalid experiment configuration. what() carries a
/// "source:line: message" location prefix when one is known.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}// namespace secest

#endif// SECEST_ERROR_HPP_
