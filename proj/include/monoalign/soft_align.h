// include/monoalign/soft_align.h

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

#ifndef MONOALIGN_SOFT_ALIGN_H_
#define MONOALIGN_SOFT_ALIGN_H_

#include "monoalign/align_dp.h"
#include "monoalign/matrix.h"

namespace monoalign {

// One embedding vector per row (L x C).
using EmbeddingSequence = Matrix;

// D(i, j) = ||text_enc[i] - mel_enc[j]||_2, shape N x T.
Matrix PairwiseL2(const EmbeddingSequence& text_enc,
                  const EmbeddingSequence& mel_enc);

// softmax(-D) over the token axis of an N x T distance matrix, returned in
// the frame-major T x N layout used everywhere else.
Matrix SoftAlignment(const Matrix& distances);

// -sum_t log soft(t, path[t]). The path must start at token 0 and step by 0
// or +1 but need not reach the last token. Throws kPathUnsupported if soft is
// 0 on the path.
double BinLoss(const Matrix& soft, const HardAlignment& hard);

struct ParallelAlignLoss {
  double total = 0.0;
  double forward_sum = 0.0;
  double bin = 0.0;
  HardAlignment hard;
};

// forward_sum(log soft) + bin_weight * BinLoss(soft, viterbi(log soft)).
ParallelAlignLoss AlignLossParallel(const Matrix& soft, double bin_weight);

}  // namespace monoalign

#endif  // MONOALIGN_SOFT_ALIGN_H_
