// src/error.cc

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

#include "monoalign/error.h"

namespace monoalign {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidShape: return "InvalidShape";
    case ErrorKind::kNonFinite: return "NonFinite";
    case ErrorKind::kNoValidPath: return "NoValidPath";
    case ErrorKind::kInvalidPath: return "InvalidPath";
    case ErrorKind::kDomainError: return "DomainError";
    case ErrorKind::kShapeMismatch: return "ShapeMismatch";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kPathUnsupported: return "PathUnsupported";
    case ErrorKind::kLengthMismatch: return "LengthMismatch";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kUnsupportedDtype: return "UnsupportedDtype";
    case ErrorKind::kFortranOrderUnsupported: return "FortranOrderUnsupported";
    case ErrorKind::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace monoalign
