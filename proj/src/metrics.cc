// src/metrics.cc

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

#include "monoalign/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

#include "monoalign/error.h"

namespace monoalign {
namespace {

void RequireFinite(const Matrix& m, const char* what) {
  for (double v : m.data()) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::kNonFinite, std::string(what) + " has non-finite entries");
    }
  }
}

void CheckPair(const CepstralSequence& ref, const CepstralSequence& hyp) {
  if (ref.empty() || hyp.empty()) {
    throw Error(ErrorKind::kInvalidShape, "DTW inputs must be non-empty");
  }
  if (ref.cols() != hyp.cols()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "reference has " + std::to_string(ref.cols()) +
                    " coefficients but hypothesis has " + std::to_string(hyp.cols()));
  }
  RequireFinite(ref, "reference sequence");
  RequireFinite(hyp, "hypothesis sequence");
}

double Euclidean(std::span<const double> a, std::span<const double> b) {
  double sq = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    sq += d * d;
  }
  return std::sqrt(sq);
}

}  // namespace

CepstralSequence MelToCepstrum(const MelSpectrogram& mel, std::size_t n_coeffs) {
  if (mel.empty()) throw Error(ErrorKind::kInvalidShape, "mel spectrogram is empty");
  const std::size_t channels = mel.cols();
  if (n_coeffs == 0 || n_coeffs >= channels) {
    throw Error(ErrorKind::kDimensionMismatch,
                "need 1 <= coefficients < mel channels (" + std::to_string(n_coeffs) +
                    " vs " + std::to_string(channels) + ")");
  }
  RequireFinite(mel, "mel spectrogram");

  // Orthonormal DCT-II basis rows 1..K.
  const double m = static_cast<double>(channels);
  const double scale = std::sqrt(2.0 / m);
  Matrix basis(n_coeffs, channels);
  for (std::size_t k = 1; k <= n_coeffs; ++k)
    for (std::size_t c = 0; c < channels; ++c)
      basis(k - 1, c) = scale * std::cos(std::numbers::pi * static_cast<double>(k) *
                                         (2.0 * static_cast<double>(c) + 1.0) / (2.0 * m));

  CepstralSequence cep(mel.rows(), n_coeffs);
  for (std::size_t t = 0; t < mel.rows(); ++t) {
    const auto frame = mel.row(t);
    for (std::size_t k = 0; k < n_coeffs; ++k) {
      double acc = 0.0;
      for (std::size_t c = 0; c < channels; ++c) acc += basis(k, c) * frame[c];
      cep(t, k) = acc;
    }
  }
  return cep;
}

DtwResult Dtw(const CepstralSequence& ref, const CepstralSequence& hyp,
              const DtwOptions& options) {
  CheckPair(ref, hyp);
  const std::size_t rows = ref.rows(), cols = hyp.rows();
  auto admissible = [&](std::size_t i, std::size_t j) {
    if (!options.band) return true;
    const std::size_t gap = i > j ? i - j : j - i;
    return gap <= *options.band;
  };
  if (!admissible(rows - 1, cols - 1)) {
    throw Error(ErrorKind::kInvalidShape,
                "DTW band is narrower than the length difference");
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  Matrix acc(rows, cols, kInf);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (!admissible(i, j)) continue;
      const double local = Euclidean(ref.row(i), hyp.row(j));
      if (i == 0 && j == 0) {
        acc(i, j) = local;
        continue;
      }
      double prev = kInf;
      if (i > 0 && j > 0) prev = std::min(prev, acc(i - 1, j - 1));
      if (i > 0) prev = std::min(prev, acc(i - 1, j));
      if (j > 0) prev = std::min(prev, acc(i, j - 1));
      acc(i, j) = prev + local;
    }
  }

  DtwResult result;
  result.cost = acc(rows - 1, cols - 1);
  std::size_t i = rows - 1, j = cols - 1;
  result.path.emplace_back(i, j);
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const double diag = acc(i - 1, j - 1);
      const double vert = acc(i - 1, j);
      const double horiz = acc(i, j - 1);
      if (diag <= vert && diag <= horiz) {
        --i;
        --j;
      } else if (vert <= horiz) {
        --i;
      } else {
        --j;
      }
    } else if (i > 0) {
      --i;
    } else {
      --j;
    }
    result.path.emplace_back(i, j);
  }
  std::reverse(result.path.begin(), result.path.end());
  return result;
}

double FrameMcd(std::span<const double> ref, std::span<const double> hyp) {
  double sq = 0.0;
  for (std::size_t k = 0; k < ref.size(); ++k) {
    const double d = ref[k] - hyp[k];
    sq += d * d;
  }
  return 10.0 / std::numbers::ln10 * std::sqrt(2.0 * sq);
}

McdResult Mcd(const CepstralSequence& ref, const CepstralSequence& hyp,
              const DtwOptions& options) {
  const DtwResult warp = Dtw(ref, hyp, options);
  double sum = 0.0;
  for (const auto& [r, h] : warp.path) sum += FrameMcd(ref.row(r), hyp.row(h));
  return {sum / static_cast<double>(warp.path.size()), warp.path.size()};
}

double DurationL1(const Durations& pred, const Durations& truth) {
  if (pred.counts.size() != truth.counts.size()) {
    throw Error(ErrorKind::kLengthMismatch,
                "duration vectors differ in length (" +
                    std::to_string(pred.counts.size()) + " vs " +
                    std::to_string(truth.counts.size()) + ")");
  }
  if (pred.counts.empty()) {
    throw Error(ErrorKind::kLengthMismatch, "duration vectors are empty");
  }
  long long total = 0;
  for (std::size_t i = 0; i < pred.counts.size(); ++i)
    total += std::llabs(static_cast<long long>(pred.counts[i]) - truth.counts[i]);
  return static_cast<double>(total) / static_cast<double>(pred.counts.size());
}

}  // namespace monoalign
