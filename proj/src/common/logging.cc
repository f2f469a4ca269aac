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

#include "revforge/common/logging.h"

#include <spdlog/sinks/stdout_color_sinks.h>

#include <cstdlib>
#include <memory>
#include <string>

namespace revforge {
namespace {

spdlog::level::level_enum LevelFromEnv() {
  const char* raw = std::getenv("REVFORGE_LOG");
  if (raw == nullptr || *raw == '\0') return spdlog::level::warn;
  const auto level = spdlog::level::from_str(raw);
  // from_str maps unknown names to "off"; only honour it when asked for.
  if (level == spdlog::level::off && std::string(raw) != "off") {
    return spdlog::level::warn;
  }
  return level;
}

std::shared_ptr<spdlog::logger> MakeLogger() {
  auto logger = spdlog::stderr_color_mt("revforge");
  logger->set_pattern("[%Y-%m-%d %H:%M:%S.%e] [%^%l%$] %v");
  logger->set_level(LevelFromEnv());
  return logger;
}

}  // namespace

spdlog::logger& Log() {
  static std::shared_ptr<spdlog::logger> logger = MakeLogger();
  return *logger;
}

void ConfigureLoggingFromEnv() { Log().set_level(LevelFromEnv()); }

}  // namespace revforge
