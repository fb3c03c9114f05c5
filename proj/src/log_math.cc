// src/log_math.cc

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

#include "monoalign/log_math.h"

#include <algorithm>

namespace monoalign {

double LogSumExp(std::span<const double> values) {
  if (values.empty()) return kLogZero;
  const double max = *std::max_element(values.begin(), values.end());
  if (max == kLogZero) return kLogZero;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - max);
  return max + std::log(sum);
}

void LogSoftmaxInPlace(std::span<double> row) {
  const double norm = LogSumExp(row);
  if (norm == kLogZero) return;
  for (double& v : row) v -= norm;
}

}  // namespace monoalign
