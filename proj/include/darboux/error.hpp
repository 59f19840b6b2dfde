/* Copyright 2026 darboux developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace darboux {

// Failure classes raised by the library. CONFIG-class codes indicate bad
// input data, NUMERIC-class codes indicate a well-posed request that failed
// during evaluation (singular systems, divergent tails, sign constraints).
enum class ErrorCode {
  NON_POSITIVE_SPAN,
  BAD_POINT_COUNT,
  LENGTH_MISMATCH,
  TOO_FEW_POINTS,
  OUT_OF_SUPPORT,
  OUT_OF_DOMAIN,
  DIMENSION_MISMATCH,
  KIND_MISMATCH,
  SINGULAR_SYSTEM,
  SINGULAR_GAMMA,
  NONCONVERGENT_TAIL,
  NONPOSITIVE_GAMMA,
  ZERO_DENOMINATOR,
  ETA_NOT_POSITIVE,
  UNKNOWN_ID,
  DEGENERATE_PARAMS,
  CONFIG_ERROR,
};

const char *error_code_name(ErrorCode code);

// True for codes caused by malformed or inconsistent user input, as opposed
// to numerical breakdown of a structurally valid computation.
bool is_config_error(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

} // namespace darboux
