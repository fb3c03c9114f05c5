// src/prior.cc

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

#include "monoalign/prior.h"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "monoalign/error.h"
#include "monoalign/log_math.h"

namespace monoalign {
namespace {

// std::lgamma writes the global signgam; the reentrant variant keeps the
// prior pure across threads. Arguments here are always positive.
double LogGamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double LogBeta(double a, double b) {
  return LogGamma(a) + LogGamma(b) - LogGamma(a + b);
}

}  // namespace

double BetaBinomialPmf(std::size_t k, std::size_t n, double alpha, double beta) {
  if (k > n) {
    throw Error(ErrorKind::kDomainError, "beta-binomial support violated: k > n");
  }
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) ||
      !std::isfinite(beta)) {
    throw Error(ErrorKind::kDomainError,
                "beta-binomial parameters must be positive and finite");
  }
  const double kd = static_cast<double>(k), nd = static_cast<double>(n);
  const double log_choose =
      LogGamma(nd + 1.0) - LogGamma(kd + 1.0) - LogGamma(nd - kd + 1.0);
  return std::exp(log_choose + LogBeta(kd + alpha, nd - kd + beta) -
                  LogBeta(alpha, beta));
}

namespace {

// One prior row over k = 0..n. Unnormalized log weights follow the pmf ratio
// f(k+1)/f(k) = (n-k)(k+alpha) / ((k+1)(n-k-1+beta)); the row is then
// max-shifted, exponentiated and normalized. Uniform rows (alpha = beta = 1)
// come out exact.
void FillPriorRow(std::span<double> row, double alpha, double beta) {
  const std::size_t n = row.size() - 1;
  row[0] = 0.0;
  double peak = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double kd = static_cast<double>(k), rest = static_cast<double>(n - k);
    row[k + 1] = row[k] + std::log(rest * (kd + alpha)) -
                 std::log((kd + 1.0) * (rest - 1.0 + beta));
    peak = std::max(peak, row[k + 1]);
  }
  double total = 0.0;
  for (double& v : row) {
    v = std::exp(v - peak);
    total += v;
  }
  for (double& v : row) v /= total;
}

}  // namespace

Matrix BuildPrior(const PriorConfig& config) {
  if (config.n_tokens == 0 || config.n_frames == 0) {
    throw Error(ErrorKind::kDomainError, "prior needs at least one token and frame");
  }
  if (!(config.omega > 0.0) || !std::isfinite(config.omega)) {
    throw Error(ErrorKind::kDomainError, "prior width omega must be positive");
  }
  const std::size_t frames = config.n_frames, tokens = config.n_tokens;
  Matrix prior(frames, tokens);
  for (std::size_t t = 1; t <= frames; ++t) {
    const double alpha = config.omega * static_cast<double>(t);
    const double beta = config.omega * static_cast<double>(frames - t + 1);
    FillPriorRow(prior.row(t - 1), alpha, beta);
  }
  return prior;
}

LogProbMatrix ApplyPrior(const LogProbMatrix& log_probs, const Matrix& prior,
                         bool renormalize) {
  if (log_probs.rows() != prior.rows() || log_probs.cols() != prior.cols()) {
    throw Error(ErrorKind::kShapeMismatch,
                "prior shape " + std::to_string(prior.rows()) + "x" +
                    std::to_string(prior.cols()) + " does not match log-probs " +
                    std::to_string(log_probs.rows()) + "x" +
                    std::to_string(log_probs.cols()));
  }
  LogProbMatrix out(log_probs.rows(), log_probs.cols());
  for (std::size_t t = 0; t < out.rows(); ++t) {
    for (std::size_t i = 0; i < out.cols(); ++i) {
      const double w = prior(t, i);
      if (!(w >= 0.0 && w <= 1.0)) {
        throw Error(ErrorKind::kDomainError, "prior entries must lie in [0, 1]");
      }
      out(t, i) = w == 0.0 ? kLogZero : log_probs(t, i) + std::log(w);
    }
    if (renormalize) LogSoftmaxInPlace(out.row(t));
  }
  return out;
}

}  // namespace monoalign
