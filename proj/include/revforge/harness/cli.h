// Copyright 2026 The revforge Authors
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

#ifndef REVFORGE_HARNESS_CLI_H_
#define REVFORGE_HARNESS_CLI_H_

#include <exception>
#include <ostream>
#include <string>
#include <vector>

namespace revforge::harness {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // anything unexpected
  kExitConfig = 2,
  kExitData = 3,
  kExitBackend = 4,
};

// Maps the library's error types to process exit codes.
int ExitCodeFor(const std::exception& error);

// Entry point of the revforge command line; args[0] is the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace revforge::harness

#endif  // REVFORGE_HARNESS_CLI_H_
