// src/soft_align.cc

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

#include "monoalign/soft_align.h"

#include <cmath>
#include <string>
#include <vector>

#include "monoalign/error.h"
#include "monoalign/log_math.h"

namespace monoalign {
namespace {

void RequireFinite(const Matrix& m, const char* what) {
  for (double v : m.data()) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::kNonFinite, std::string(what) + " has non-finite entries");
    }
  }
}

}  // namespace

Matrix PairwiseL2(const EmbeddingSequence& text_enc,
                  const EmbeddingSequence& mel_enc) {
  if (text_enc.empty() || mel_enc.empty()) {
    throw Error(ErrorKind::kInvalidShape, "embedding sequences must be non-empty");
  }
  if (text_enc.cols() != mel_enc.cols()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "text embedding dimension " + std::to_string(text_enc.cols()) +
                    " != mel embedding dimension " + std::to_string(mel_enc.cols()));
  }
  RequireFinite(text_enc, "text embedding");
  RequireFinite(mel_enc, "mel embedding");

  Matrix dist(text_enc.rows(), mel_enc.rows());
  for (std::size_t i = 0; i < text_enc.rows(); ++i) {
    const auto phi = text_enc.row(i);
    for (std::size_t j = 0; j < mel_enc.rows(); ++j) {
      const auto x = mel_enc.row(j);
      double sq = 0.0;
      for (std::size_t c = 0; c < phi.size(); ++c) {
        const double d = phi[c] - x[c];
        sq += d * d;
      }
      dist(i, j) = std::sqrt(sq);
    }
  }
  return dist;
}

Matrix SoftAlignment(const Matrix& distances) {
  if (distances.empty()) {
    throw Error(ErrorKind::kInvalidShape, "distance matrix is empty");
  }
  RequireFinite(distances, "distance matrix");
  // The transpose is the single point where the N x T distance layout
  // becomes frame-major.
  Matrix soft = distances.Transposed();
  for (std::size_t t = 0; t < soft.rows(); ++t) {
    auto row = soft.row(t);
    for (double& v : row) v = -v;
    LogSoftmaxInPlace(row);
    for (double& v : row) v = std::exp(v);
  }
  return soft;
}

double BinLoss(const Matrix& soft, const HardAlignment& hard) {
  if (soft.rows() != hard.frames()) {
    throw Error(ErrorKind::kShapeMismatch,
                "soft alignment has " + std::to_string(soft.rows()) +
                    " frames but the hard path has " + std::to_string(hard.frames()));
  }
  for (std::size_t t = 0; t < hard.frames(); ++t) {
    const int token = hard.path[t];
    const int lo = t > 0 ? hard.path[t - 1] : 0;
    const int hi = t > 0 ? lo + 1 : 0;
    if (token < lo || token > hi || token >= static_cast<int>(soft.cols())) {
      throw Error(ErrorKind::kInvalidPath,
                  "hard path is not monotonic from token 0 at frame " + std::to_string(t));
    }
  }
  double loss = 0.0;
  for (std::size_t t = 0; t < soft.rows(); ++t) {
    const double p = soft(t, static_cast<std::size_t>(hard.path[t]));
    if (!(p > 0.0)) {
      throw Error(ErrorKind::kPathUnsupported,
                  "soft alignment is zero on the hard path at frame " +
                      std::to_string(t));
    }
    loss -= std::log(p);
  }
  return loss;
}

ParallelAlignLoss AlignLossParallel(const Matrix& soft, double bin_weight) {
  if (!(bin_weight >= 0.0) || !std::isfinite(bin_weight)) {
    throw Error(ErrorKind::kDomainError, "bin_weight must be nonnegative");
  }
  LogProbMatrix log_soft(soft.rows(), soft.cols());
  for (std::size_t k = 0; k < soft.size(); ++k) {
    const double p = soft.data()[k];
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorKind::kNonFinite,
                  "soft alignment entries must be finite and nonnegative");
    }
    log_soft.data()[k] = p == 0.0 ? kLogZero : std::log(p);
  }

  ParallelAlignLoss result;
  result.forward_sum = ForwardSumLoss(log_soft);
  result.hard = Viterbi(log_soft).alignment;
  result.bin = BinLoss(soft, result.hard);
  result.total = bin_weight == 0.0 ? result.forward_sum
                                   : result.forward_sum + bin_weight * result.bin;
  return result;
}

}  // namespace monoalign
