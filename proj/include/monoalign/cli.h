// include/monoalign/cli.h

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

#ifndef MONOALIGN_CLI_H_
#define MONOALIGN_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace monoalign::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNumeric = 3;

// Runs one CLI invocation. args excludes the program name. Scalar results go
// to out as JSON, diagnostics to err as a single line.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace monoalign::cli

#endif  // MONOALIGN_CLI_H_
