// Copyright 2026 The polarcover Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POLARCOVER_CLI_HPP_
#define POLARCOVER_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace polarcover {

enum ExitCode : int {
  kExitOk = 0,
  kExitDomain = 1,
  kExitVerification = 2,
  kExitBudget = 3,
};

/// Runs the polarcover command line; args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace polarcover

#endif  // POLARCOVER_CLI_HPP_
