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

#ifndef REVFORGE_COMMON_LOGGING_H_
#define REVFORGE_COMMON_LOGGING_H_

#include <spdlog/spdlog.h>

namespace revforge {

// Shared stderr logger. The level comes from REVFORGE_LOG
// (trace|debug|info|warn|error|off; default warn).
spdlog::logger& Log();

// Re-reads REVFORGE_LOG. Called by the CLI at start-up.
void ConfigureLoggingFromEnv();

}  // namespace revforge

#endif  // REVFORGE_COMMON_LOGGING_H_
