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

#ifndef REVFORGE_GENERATION_BACKEND_CONFIG_H_
#define REVFORGE_GENERATION_BACKEND_CONFIG_H_

#include <string>

#include <json.hpp>

namespace revforge::generation {

// Connection settings for any model service (completion, coherence
// scorer, external classifier). Model identity is configuration: the same
// code talks to an English generator or a Chinese one.
//
// An endpoint of the form "mock://..." selects the built-in deterministic
// mock where one exists.
struct BackendConfig {
  std::string endpoint = "mock://";
  std::string model_name;
  // Name of the environment variable holding the bearer token; empty means
  // no Authorization header. The token itself is never stored or logged.
  std::string api_key_env;
  double timeout = 30.0;  // seconds, per request
  int max_retries = 3;    // <= 5
  double temperature = 0.9;
  int max_tokens = 60;
  double retry_backoff = 0.5;  // seconds before the first retry; doubles after

  bool IsMock() const;
  // Throws ConfigError naming the first invalid field.
  void Validate() const;
};

// Missing keys keep their defaults; unknown keys are rejected.
BackendConfig BackendConfigFromJson(const nlohmann::json& j);
nlohmann::ordered_json BackendConfigToJson(const BackendConfig& config);

}  // namespace revforge::generation

#endif  // REVFORGE_GENERATION_BACKEND_CONFIG_H_
