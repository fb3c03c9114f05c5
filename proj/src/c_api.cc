// src/c_api.cc

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

#include "monoalign/c_api.h"

#include <algorithm>
#include <exception>
#include <string>

#include "monoalign/align_dp.h"
#include "monoalign/error.h"
#include "monoalign/prior.h"
#include "monoalign/soft_align.h"

namespace {

thread_local std::string last_error;

int StatusFor(monoalign::ErrorKind kind) {
  using monoalign::ErrorKind;
  switch (kind) {
    case ErrorKind::kInvalidShape:
    case ErrorKind::kShapeMismatch:
    case ErrorKind::kDimensionMismatch:
    case ErrorKind::kLengthMismatch:
      return MONOALIGN_ERR_SHAPE;
    case ErrorKind::kNonFinite: return MONOALIGN_ERR_NON_FINITE;
    case ErrorKind::kNoValidPath: return MONOALIGN_ERR_NO_VALID_PATH;
    case ErrorKind::kDomainError: return MONOALIGN_ERR_DOMAIN;
    case ErrorKind::kPathUnsupported: return MONOALIGN_ERR_PATH_UNSUPPORTED;
    default: return MONOALIGN_ERR_INTERNAL;
  }
}

template <typename Fn>
int Guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return MONOALIGN_OK;
  } catch (const monoalign::Error& e) {
    last_error = e.what();
    return StatusFor(e.kind());
  } catch (const std::exception& e) {
    last_error = e.what();
    return MONOALIGN_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return MONOALIGN_ERR_INTERNAL;
  }
}

int InvalidArgument(const char* what) {
  last_error = what;
  return MONOALIGN_ERR_INVALID_ARGUMENT;
}

bool BadShape(int64_t rows, int64_t cols) {
  if (rows < 0 || cols < 0) {
    last_error = "negative dimension";
    return true;
  }
  return false;
}

monoalign::Matrix CopyIn(const double* data, int64_t rows, int64_t cols) {
  const auto n = static_cast<std::size_t>(rows * cols);
  return monoalign::Matrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
                           std::vector<double>(data, data + n));
}

}  // namespace

extern "C" {

const char* monoalign_last_error(void) { return last_error.c_str(); }

int monoalign_forward_sum(const double* log_probs, int64_t T, int64_t N,
                          double* loss, double* grad) {
  if (!log_probs || !loss) return InvalidArgument("null pointer argument");
  if (BadShape(T, N)) return MONOALIGN_ERR_SHAPE;
  return Guarded([&] {
    const auto r = monoalign::ForwardSumWithGrad(CopyIn(log_probs, T, N));
    *loss = r.loss;
    if (grad) std::copy(r.grad.data().begin(), r.grad.data().end(), grad);
  });
}

int monoalign_viterbi(const double* log_probs, int64_t T, int64_t N,
                      int64_t* path, double* score) {
  if (!log_probs || !path || !score) return InvalidArgument("null pointer argument");
  if (BadShape(T, N)) return MONOALIGN_ERR_SHAPE;
  return Guarded([&] {
    const auto r = monoalign::Viterbi(CopyIn(log_probs, T, N));
    std::copy(r.alignment.path.begin(), r.alignment.path.end(), path);
    *score = r.score;
  });
}

int monoalign_build_prior(int64_t n_tokens, int64_t n_frames, double omega,
                          double* out) {
  if (!out) return InvalidArgument("null pointer argument");
  if (n_tokens < 1 || n_frames < 1) {
    last_error = "prior needs at least one token and frame";
    return MONOALIGN_ERR_SHAPE;
  }
  return Guarded([&] {
    const auto p = monoalign::BuildPrior({static_cast<std::size_t>(n_tokens),
                                          static_cast<std::size_t>(n_frames), omega});
    std::copy(p.data().begin(), p.data().end(), out);
  });
}

int monoalign_align_loss_parallel(const double* soft, int64_t T, int64_t N,
                                  double bin_weight, double* total,
                                  double* forward_sum, double* bin,
                                  int64_t* path) {
  if (!soft || !total || !forward_sum || !bin) {
    return InvalidArgument("null pointer argument");
  }
  if (BadShape(T, N)) return MONOALIGN_ERR_SHAPE;
  return Guarded([&] {
    const auto r = monoalign::AlignLossParallel(CopyIn(soft, T, N), bin_weight);
    *total = r.total;
    *forward_sum = r.forward_sum;
    *bin = r.bin;
    if (path) std::copy(r.hard.path.begin(), r.hard.path.end(), path);
  });
}

}  // extern "C"
