// include/monoalign/log_math.h

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

#ifndef MONOALIGN_LOG_MATH_H_
#define MONOALIGN_LOG_MATH_H_

#include <cmath>
#include <limits>
#include <span>
#include <utility>

namespace monoalign {

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)), shifted by the max. LogAdd(-inf, -inf) = -inf.
inline double LogAdd(double a, double b) {
  if (a < b) std::swap(a, b);
  if (a == kLogZero) return kLogZero;
  return a + std::log1p(std::exp(b - a));
}

double LogSumExp(std::span<const double> values);

// In-place log-softmax of one row. A row that is entirely -inf is left as is.
void LogSoftmaxInPlace(std::span<double> row);

}  // namespace monoalign

#endif  // MONOALIGN_LOG_MATH_H_
