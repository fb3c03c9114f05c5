// src/align_dp.cc

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

#include "monoalign/align_dp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "monoalign/error.h"
#include "monoalign/log_math.h"

namespace monoalign {
namespace {

void ValidateLogProbs(const LogProbMatrix& log_probs) {
  const std::size_t frames = log_probs.rows(), tokens = log_probs.cols();
  if (frames == 0 || tokens == 0) {
    throw Error(ErrorKind::kInvalidShape, "log-prob matrix has no rows or columns");
  }
  if (frames < tokens) {
    throw Error(ErrorKind::kInvalidShape, "no valid monotonic alignment: T < N");
  }
  for (double v : log_probs.data()) {
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
      throw Error(ErrorKind::kNonFinite, "log-prob matrix contains NaN or +inf");
    }
  }
}

// Tokens reachable at frame t lie in [first, last]: at most one advance per
// frame from token 0, and enough frames left to reach token N-1.
struct Band {
  std::size_t first;
  std::size_t last;
};

Band ReachableTokens(std::size_t t, std::size_t frames, std::size_t tokens) {
  const std::size_t remaining = frames - t;  // frames t..T-1
  const std::size_t first = tokens > remaining ? tokens - remaining : 0;
  const std::size_t last = std::min(t, tokens - 1);
  return {first, last};
}

// alpha(t, i): log mass of all prefixes ending in token i at frame t.
Matrix Forward(const LogProbMatrix& lp) {
  const std::size_t frames = lp.rows(), tokens = lp.cols();
  Matrix alpha(frames, tokens, kLogZero);
  alpha(0, 0) = lp(0, 0);
  for (std::size_t t = 1; t < frames; ++t) {
    const Band band = ReachableTokens(t, frames, tokens);
    for (std::size_t i = band.first; i <= band.last; ++i) {
      const double stay = alpha(t - 1, i);
      const double advance = i > 0 ? alpha(t - 1, i - 1) : kLogZero;
      alpha(t, i) = LogAdd(stay, advance) + lp(t, i);
    }
  }
  return alpha;
}

// beta(t, i): log mass of all suffixes from frame t+1 given token i at t.
Matrix Backward(const LogProbMatrix& lp) {
  const std::size_t frames = lp.rows(), tokens = lp.cols();
  Matrix beta(frames, tokens, kLogZero);
  beta(frames - 1, tokens - 1) = 0.0;
  for (std::size_t t = frames - 1; t-- > 0;) {
    const Band band = ReachableTokens(t, frames, tokens);
    for (std::size_t i = band.first; i <= band.last; ++i) {
      const double stay = beta(t + 1, i) + lp(t + 1, i);
      const double advance =
          i + 1 < tokens ? beta(t + 1, i + 1) + lp(t + 1, i + 1) : kLogZero;
      beta(t, i) = LogAdd(stay, advance);
    }
  }
  return beta;
}

double TerminalLogMass(const Matrix& alpha) {
  const double log_z = alpha(alpha.rows() - 1, alpha.cols() - 1);
  if (log_z == kLogZero) {
    throw Error(ErrorKind::kNoValidPath,
                "every monotonic alignment has zero probability");
  }
  return log_z;
}

Matrix PosteriorsFrom(const LogProbMatrix& lp, const Matrix& alpha,
                      double log_z) {
  const Matrix beta = Backward(lp);
  Matrix gamma(lp.rows(), lp.cols(), 0.0);
  for (std::size_t t = 0; t < lp.rows(); ++t) {
    for (std::size_t i = 0; i < lp.cols(); ++i) {
      const double joint = alpha(t, i) + beta(t, i);
      if (joint != kLogZero) gamma(t, i) = std::exp(joint - log_z);
    }
  }
  return gamma;
}

}  // namespace

double ForwardSumLoss(const LogProbMatrix& log_probs) {
  ValidateLogProbs(log_probs);
  return 0.0 - TerminalLogMass(Forward(log_probs));
}

Matrix Posteriors(const LogProbMatrix& log_probs) {
  ValidateLogProbs(log_probs);
  const Matrix alpha = Forward(log_probs);
  return PosteriorsFrom(log_probs, alpha, TerminalLogMass(alpha));
}

ForwardSumResult ForwardSumWithGrad(const LogProbMatrix& log_probs) {
  ValidateLogProbs(log_probs);
  const Matrix alpha = Forward(log_probs);
  const double log_z = TerminalLogMass(alpha);
  ForwardSumResult result{0.0 - log_z, PosteriorsFrom(log_probs, alpha, log_z)};
  for (double& g : result.grad.data()) g = -g;
  return result;
}

Matrix ForwardSumGrad(const LogProbMatrix& log_probs) {
  return ForwardSumWithGrad(log_probs).grad;
}

ViterbiResult Viterbi(const LogProbMatrix& log_probs) {
  ValidateLogProbs(log_probs);
  const std::size_t frames = log_probs.rows(), tokens = log_probs.cols();

  Matrix best(frames, tokens, kLogZero);
  best(0, 0) = log_probs(0, 0);
  for (std::size_t t = 1; t < frames; ++t) {
    const Band band = ReachableTokens(t, frames, tokens);
    for (std::size_t i = band.first; i <= band.last; ++i) {
      const double stay = best(t - 1, i);
      const double advance = i > 0 ? best(t - 1, i - 1) : kLogZero;
      best(t, i) = std::max(stay, advance) + log_probs(t, i);
    }
  }

  ViterbiResult result;
  result.score = best(frames - 1, tokens - 1);
  if (result.score == kLogZero) {
    throw Error(ErrorKind::kNoValidPath,
                "every monotonic alignment has zero probability");
  }

  // Ties go to the lower predecessor so the advance happens as late as
  // possible.
  auto& path = result.alignment.path;
  path.assign(frames, 0);
  std::size_t token = tokens - 1;
  for (std::size_t t = frames - 1; t > 0; --t) {
    path[t] = static_cast<int>(token);
    if (token > 0 && best(t - 1, token - 1) >= best(t - 1, token)) --token;
  }
  path[0] = static_cast<int>(token);
  return result;
}

void ValidateHardAlignment(const HardAlignment& hard, std::size_t n_tokens) {
  const auto& path = hard.path;
  if (path.empty() || n_tokens == 0) {
    throw Error(ErrorKind::kInvalidPath, "empty hard alignment");
  }
  if (path.front() != 0) {
    throw Error(ErrorKind::kInvalidPath, "hard alignment must start at token 0");
  }
  if (path.back() != static_cast<int>(n_tokens) - 1) {
    throw Error(ErrorKind::kInvalidPath,
                "hard alignment must end at token " + std::to_string(n_tokens - 1));
  }
  for (std::size_t t = 1; t < path.size(); ++t) {
    const int step = path[t] - path[t - 1];
    if (step != 0 && step != 1) {
      throw Error(ErrorKind::kInvalidPath,
                  "hard alignment step at frame " + std::to_string(t) +
                      " is not 0 or +1");
    }
  }
}

Matrix HardToOneHot(const HardAlignment& hard, std::size_t n_tokens) {
  ValidateHardAlignment(hard, n_tokens);
  Matrix onehot(hard.frames(), n_tokens, 0.0);
  for (std::size_t t = 0; t < hard.frames(); ++t)
    onehot(t, static_cast<std::size_t>(hard.path[t])) = 1.0;
  return onehot;
}

}  // namespace monoalign
