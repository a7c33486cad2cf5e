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

#include "capricep/error.hpp"

namespace capricep {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "E_INVALID_ARGUMENT";
    case ErrorCode::kPoleAliasing: return "E_POLE_ALIASING";
    case ErrorCode::kUnstablePole: return "E_UNSTABLE_POLE";
    case ErrorCode::kTooFewSections: return "E_TOO_FEW_SECTIONS";
    case ErrorCode::kPhaseAsymmetry: return "E_PHASE_ASYMMETRY";
    case ErrorCode::kTruncationLoss: return "E_TRUNCATION_LOSS";
    case ErrorCode::kSequenceOverlap: return "E_SEQUENCE_OVERLAP";
    case ErrorCode::kLengthMismatch: return "E_LENGTH_MISMATCH";
    case ErrorCode::kSampleRateMismatch: return "E_SAMPLE_RATE_MISMATCH";
    case ErrorCode::kRecordingTooShort: return "E_RECORDING_TOO_SHORT";
    case ErrorCode::kOverflow: return "E_OVERFLOW";
    case ErrorCode::kZeroMass: return "E_ZERO_MASS";
    case ErrorCode::kEmptyInput: return "E_EMPTY_INPUT";
    case ErrorCode::kWavFormat: return "E_WAV_FORMAT";
    case ErrorCode::kIo: return "E_IO";
    case ErrorCode::kMetadata: return "E_METADATA";
  }
  return "E_UNKNOWN";
}

}  // namespace capricep
