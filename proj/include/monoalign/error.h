// include/monoalign/error.h

// Copyright 2026 The monoalign Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef MONOALIGN_ERROR_H_
#define MONOALIGN_ERROR_H_

#include <stdexcept>
#include <string>

namespace monoalign {

enum class ErrorKind {
  kInvalidShape,
  kNonFinite,
  kNoValidPath,
  kInvalidPath,
  kDomainError,
  kShapeMismatch,
  kDimensionMismatch,
  kPathUnsupported,
  kLengthMismatch,
  kParseError,
  kUnsupportedDtype,
  kFortranOrderUnsupported,
  kIoError,
};

const char* ErrorKindName(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so that
// front ends (CLI exit codes, C ABI status codes) can map them without
// string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace monoalign

#endif  // MONOALIGN_ERROR_H_
