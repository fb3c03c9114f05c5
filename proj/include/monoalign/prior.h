// include/monoalign/prior.h

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

#ifndef MONOALIGN_PRIOR_H_
#define MONOALIGN_PRIOR_H_

#include <cstddef>

#include "monoalign/matrix.h"

namespace monoalign {

struct PriorConfig {
  std::size_t n_tokens = 1;
  std::size_t n_frames = 1;
  double omega = 1.0;  // width factor; smaller is wider
};

// Beta-binomial pmf C(n,k) B(k+alpha, n-k+beta) / B(alpha, beta), evaluated
// with log-gamma. Throws kDomainError for k > n or non-positive alpha/beta.
double BetaBinomialPmf(std::size_t k, std::size_t n, double alpha, double beta);

// Static T x N diagonal prior. Row t (1-based) is the beta-binomial pmf over
// token slots k = 0..N-1 with alpha = omega*t and beta = omega*(T-t+1).
Matrix BuildPrior(const PriorConfig& config);

// out(t, i) = log_probs(t, i) + log prior(t, i); -inf where the prior is 0.
// With renormalize each row is log-softmaxed afterwards.
LogProbMatrix ApplyPrior(const LogProbMatrix& log_probs, const Matrix& prior,
                         bool renormalize);

}  // namespace monoalign

#endif  // MONOALIGN_PRIOR_H_
