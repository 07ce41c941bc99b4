// Copyright 2026 The nullvalue Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NULLVALUE_TOOLS_NVSIM_H_
#define NULLVALUE_TOOLS_NVSIM_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace nvsim {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kDegenerate = 3,
};

/// Runs one nvsim invocation. `args` excludes the program name. Environment
/// variable CI (any value) makes --seed mandatory for randomized commands.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string version();

}  // namespace nvsim

#endif  // NULLVALUE_TOOLS_NVSIM_H_
