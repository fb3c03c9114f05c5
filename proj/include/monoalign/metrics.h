// include/monoalign/metrics.h

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

#ifndef MONOALIGN_METRICS_H_
#define MONOALIGN_METRICS_H_

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "monoalign/matrix.h"

namespace monoalign {

// T x M log-mel magnitudes.
using MelSpectrogram = Matrix;
// T x K cepstral coefficients c1..cK (c0 excluded).
using CepstralSequence = Matrix;

inline constexpr std::size_t kDefaultMcdCoeffs = 13;

// Orthonormal DCT-II of every frame, keeping coefficients 1..n_coeffs.
// Throws kDimensionMismatch unless 1 <= n_coeffs < M.
CepstralSequence MelToCepstrum(const MelSpectrogram& mel, std::size_t n_coeffs);

struct DtwResult {
  std::vector<std::pair<std::size_t, std::size_t>> path;  // (ref, hyp)
  double cost = 0.0;
};

struct DtwOptions {
  // Sakoe-Chiba band: only cells with |ref - hyp| <= band are admissible.
  std::optional<std::size_t> band;
};

// Minimum-cost warping under Euclidean local cost and steps (1,0), (0,1),
// (1,1). Backtracking prefers the diagonal, then the ref-only step
// ("vertical"), then the hyp-only step ("horizontal").
DtwResult Dtw(const CepstralSequence& ref, const CepstralSequence& hyp,
              const DtwOptions& options = {});

// (10 / ln 10) * sqrt(2 * sum_k dc_k^2) for one pair of frames.
double FrameMcd(std::span<const double> ref, std::span<const double> hyp);

struct McdResult {
  double mcd = 0.0;  // dB, mean over DTW path pairs
  std::size_t path_length = 0;
};

McdResult Mcd(const CepstralSequence& ref, const CepstralSequence& hyp,
              const DtwOptions& options = {});

// (1/N) sum_i |pred[i] - truth[i]|, in frames.
double DurationL1(const Durations& pred, const Durations& truth);

}  // namespace monoalign

#endif  // MONOALIGN_METRICS_H_
