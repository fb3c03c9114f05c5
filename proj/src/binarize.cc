// src/binarize.cc

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

#include "monoalign/binarize.h"

#include <string>

#include "monoalign/error.h"

namespace monoalign {

MonotonicArgmaxResult MonotonicArgmax(const Matrix& attn) {
  if (attn.empty()) {
    throw Error(ErrorKind::kInvalidShape, "attention matrix is empty");
  }
  const std::size_t tokens = attn.cols();
  MonotonicArgmaxResult result;
  auto& path = result.alignment.path;
  path.reserve(attn.rows());
  std::size_t current = 0;
  for (std::size_t t = 0; t < attn.rows(); ++t) {
    if (t > 0 && current + 1 < tokens && attn(t, current + 1) > attn(t, current)) {
      ++current;
    }
    path.push_back(static_cast<int>(current));
  }
  result.incomplete_coverage = current + 1 < tokens;
  return result;
}

Durations DurationsFromHard(const HardAlignment& hard, std::size_t n_tokens) {
  const auto& path = hard.path;
  if (path.empty() || n_tokens == 0) {
    throw Error(ErrorKind::kInvalidPath, "empty hard alignment");
  }
  if (path.front() != 0) {
    throw Error(ErrorKind::kInvalidPath, "hard alignment must start at token 0");
  }
  Durations durations{std::vector<int>(n_tokens, 0)};
  for (std::size_t t = 0; t < path.size(); ++t) {
    if (path[t] < 0 || static_cast<std::size_t>(path[t]) >= n_tokens) {
      throw Error(ErrorKind::kInvalidPath,
                  "token index " + std::to_string(path[t]) + " at frame " +
                      std::to_string(t) + " is out of range");
    }
    if (t > 0 && path[t] != path[t - 1] && path[t] != path[t - 1] + 1) {
      throw Error(ErrorKind::kInvalidPath,
                  "hard alignment is not monotonic at frame " + std::to_string(t));
    }
    ++durations.counts[static_cast<std::size_t>(path[t])];
  }
  return durations;
}

HardAlignment HardFromDurations(const Durations& durations) {
  HardAlignment hard;
  for (std::size_t i = 0; i < durations.counts.size(); ++i) {
    if (durations.counts[i] < 0) {
      throw Error(ErrorKind::kDomainError, "durations must be nonnegative");
    }
    hard.path.insert(hard.path.end(), static_cast<std::size_t>(durations.counts[i]),
                     static_cast<int>(i));
  }
  return hard;
}

}  // namespace monoalign
