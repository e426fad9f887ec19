// Copyright 2026 The TLXS Authors
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

#ifndef TLXS_ERROR_HPP_
#define TLXS_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace tlxs {

enum class ErrorCode {
  kInvalidArgument,
  kShapeMismatch,
  kMalformedHeader,
  kTruncated,
  kSampleOutOfRange,
  kBadMagic,
  kLengthMismatch,
  kChecksumMismatch,
  kUnsupportedVersion,
  kCorruptPayload,
  kMissingBaseLayer,
  kIo,
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kShapeMismatch: return "shape mismatch";
    case ErrorCode::kMalformedHeader: return "malformed header";
    case ErrorCode::kTruncated: return "truncated data";
    case ErrorCode::kSampleOutOfRange: return "sample out of range";
    case ErrorCode::kBadMagic: return "bad magic";
    case ErrorCode::kLengthMismatch: return "length mismatch";
    case ErrorCode::kChecksumMismatch: return "checksum mismatch";
    case ErrorCode::kUnsupportedVersion: return "unsupported version";
    case ErrorCode::kCorruptPayload: return "corrupt payload";
    case ErrorCode::kMissingBaseLayer: return "no base layer";
    case ErrorCode::kIo: return "i/o error";
  }
  return "unknown error";
}

// All library failures are reported as tlxs::Error; code() lets callers and
// tests tell the failure classes apart without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void Check(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) Fail(code, what);
}

}  // namespace tlxs

#endif  // TLXS_ERROR_HPP_
