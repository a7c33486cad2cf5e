/**
 * Copyright 2026 The CAPRICEP Toolkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CAPRICEP_ERROR_HPP_
#define CAPRICEP_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace capricep {

/// Machine-readable error categories. The CLI prints these as `E_...` tags.
enum class ErrorCode {
  kInvalidArgument,
  kPoleAliasing,
  kUnstablePole,
  kTooFewSections,
  kPhaseAsymmetry,
  kTruncationLoss,
  kSequenceOverlap,
  kLengthMismatch,
  kSampleRateMismatch,
  kRecordingTooShort,
  kOverflow,
  kZeroMass,
  kEmptyInput,
  kWavFormat,
  kIo,
  kMetadata,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace capricep

#endif  // CAPRICEP_ERROR_HPP_
