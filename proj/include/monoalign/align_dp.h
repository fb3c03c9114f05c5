// include/monoalign/align_dp.h

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

#ifndef MONOALIGN_ALIGN_DP_H_
#define MONOALIGN_ALIGN_DP_H_

#include <cstddef>

#include "monoalign/matrix.h"

namespace monoalign {

// Exact dynamic programming over monotonic alignments of T frames to N
// tokens. A valid alignment starts at token 0, ends at token N-1 and moves
// by 0 or 1 tokens per frame; there is no blank symbol.
//
// All functions require T >= N >= 1 and entries that are finite or -inf.
// Violations raise Error with kInvalidShape or kNonFinite; if every path has
// zero probability they raise kNoValidPath.

// -log sum_{s} prod_t exp(log_probs(t, s_t)), via the log-space forward
// recursion.
double ForwardSumLoss(const LogProbMatrix& log_probs);

// Per-frame token marginals gamma(t, i) from forward-backward. Rows sum to 1;
// unreachable cells are exactly 0.
Matrix Posteriors(const LogProbMatrix& log_probs);

// d ForwardSumLoss / d log_probs(t, i) = -gamma(t, i), each entry treated as
// an independent parameter.
Matrix ForwardSumGrad(const LogProbMatrix& log_probs);

// Loss and gradient from a single forward-backward pass.
struct ForwardSumResult {
  double loss = 0.0;
  Matrix grad;
};
ForwardSumResult ForwardSumWithGrad(const LogProbMatrix& log_probs);

struct ViterbiResult {
  HardAlignment alignment;
  double score = 0.0;  // sum of log_probs along the path
};

// Most likely monotonic path. Among equally scored paths the one that
// advances as late as possible is returned (during backtracking an exact
// tie between staying and advancing resolves toward the advance, i.e. the
// lower predecessor token), which makes the result the pointwise-lowest
// optimal path.
ViterbiResult Viterbi(const LogProbMatrix& log_probs);

// Throws kInvalidPath unless path is a full-coverage monotonic path over
// n_tokens tokens.
void ValidateHardAlignment(const HardAlignment& hard, std::size_t n_tokens);

// One-hot T x N matrix with a single 1 per row at column path[t].
Matrix HardToOneHot(const HardAlignment& hard, std::size_t n_tokens);

}  // namespace monoalign

#endif  // MONOALIGN_ALIGN_DP_H_
