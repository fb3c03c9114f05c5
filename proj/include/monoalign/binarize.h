// include/monoalign/binarize.h

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

#ifndef MONOALIGN_BINARIZE_H_
#define MONOALIGN_BINARIZE_H_

#include <cstddef>

#include "monoalign/matrix.h"

namespace monoalign {

struct MonotonicArgmaxResult {
  HardAlignment alignment;
  // Set when the greedy pass never reached the last token. The path is still
  // monotonic but trailing tokens get zero frames.
  bool incomplete_coverage = false;
};

// Greedy binarization of autoregressive attention: walk the frames keeping a
// current token i, and advance to i+1 when attn(t, i+1) > attn(t, i). Frame 0
// is always token 0. Ties hold the current token; at most one advance per
// frame.
MonotonicArgmaxResult MonotonicArgmax(const Matrix& attn);

// counts[i] = #{t : path[t] == i}. Accepts paths that stop short of the last
// token (trailing zeros); throws kInvalidPath if the path does not start at
// 0, moves backward, skips, or leaves [0, n_tokens).
Durations DurationsFromHard(const HardAlignment& hard, std::size_t n_tokens);

// Expands durations back into a path. Inverse of DurationsFromHard whenever
// every count is >= 1 (trailing zero counts also round-trip).
HardAlignment HardFromDurations(const Durations& durations);

}  // namespace monoalign

#endif  // MONOALIGN_BINARIZE_H_
