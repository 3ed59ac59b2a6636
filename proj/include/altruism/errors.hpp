// Copyright 2026 The Altruism Learning Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ALTRUISM_ERRORS_HPP_
#define ALTRUISM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace altruism {

// Raised for out-of-range arguments, malformed matrices and mismatched
// partitions.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when an observation assigns zero probability to every region the
// belief still considers possible.
class InferenceContradiction : public std::runtime_error {
 public:
  explicit InferenceContradiction(const std::string& what)
      : std::runtime_error(what) {}
};

namespace internal {

inline void Require(bool condition, const std::string& message) {
  if (!condition) throw InputError(message);
}

inline void RequireUnitInterval(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InputError(std::string(name) + " must lie in [0,1], got " +
                     std::to_string(value));
  }
}

}  // namespace internal
}  // namespace altruism

#endif  // ALTRUISM_ERRORS_HPP_
