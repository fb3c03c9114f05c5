// include/monoalign/c_api.h

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

#ifndef MONOALIGN_C_API_H_
#define MONOALIGN_C_API_H_

/* C-compatible entry points for language bindings. All arrays are
 * contiguous row-major float64; T is the frame count, N the token count.
 * Functions return a status code; on failure monoalign_last_error() returns a
 * thread-local message describing the most recent error on this thread. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum monoalign_status {
  MONOALIGN_OK = 0,
  MONOALIGN_ERR_SHAPE = 1,       /* T < N, N = 0, shape mismatch */
  MONOALIGN_ERR_NON_FINITE = 2,  /* NaN or +inf in input */
  MONOALIGN_ERR_NO_VALID_PATH = 3,
  MONOALIGN_ERR_DOMAIN = 4,      /* e.g. omega <= 0 */
  MONOALIGN_ERR_PATH_UNSUPPORTED = 5,
  MONOALIGN_ERR_INVALID_ARGUMENT = 6, /* null pointers */
  MONOALIGN_ERR_INTERNAL = 7
} monoalign_status;

const char* monoalign_last_error(void);

/* loss and grad (T x N, may be NULL) of the forward-sum objective. */
int monoalign_forward_sum(const double* log_probs, int64_t T, int64_t N,
                          double* loss, double* grad);

/* path receives T token indices. */
int monoalign_viterbi(const double* log_probs, int64_t T, int64_t N,
                      int64_t* path, double* score);

/* out receives n_frames x n_tokens prior weights. */
int monoalign_build_prior(int64_t n_tokens, int64_t n_frames, double omega,
                          double* out);

/* soft is a T x N row-stochastic alignment; path (may be NULL) receives the
 * Viterbi hard alignment. */
int monoalign_align_loss_parallel(const double* soft, int64_t T, int64_t N,
                                  double bin_weight, double* total,
                                  double* forward_sum, double* bin,
                                  int64_t* path);

#ifdef __cplusplus
}
#endif

#endif /* MONOALIGN_C_API_H_ */
