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

#include "revforge/generation/backend_config.h"

#include <set>

#include "revforge/common/error.h"

namespace revforge::generation {

bool BackendConfig::IsMock() const { return endpoint.rfind("mock://", 0) == 0; }

void BackendConfig::Validate() const {
  if (endpoint.empty()) throw ConfigError("backend endpoint is empty");
  if (!IsMock() && endpoint.rfind("http://", 0) != 0 &&
      endpoint.rfind("https://", 0) != 0) {
    throw ConfigError("backend endpoint '" + endpoint +
                      "' must start with http://, https:// or mock://");
  }
  if (max_retries < 0 || max_retries > 5) {
    throw ConfigError("max_retries must be within 0..5, got " + std::to_string(max_retries));
  }
  if (!(temperature >= 0.0 && temperature <= 2.0)) {
    throw ConfigError("temperature must be within [0, 2], got " + std::to_string(temperature));
  }
  if (max_tokens <= 0) throw ConfigError("max_tokens must be positive");
  if (!(timeout > 0.0)) throw ConfigError("timeout must be positive");
  if (!(retry_backoff >= 0.0)) throw ConfigError("retry_backoff must be non-negative");
}

BackendConfig BackendConfigFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("backend config must be a JSON object");
  static const std::set<std::string> kKnown = {
      "endpoint", "model_name", "api_key_env", "timeout", "max_retries",
      "temperature", "max_tokens", "retry_backoff"};
  for (const auto& [key, value] : j.items()) {
    if (!kKnown.count(key)) throw ConfigError("unknown backend config key '" + key + "'");
  }
  BackendConfig c;
  try {
    c.endpoint = j.value("endpoint", c.endpoint);
    c.model_name = j.value("model_name", c.model_name);
    c.api_key_env = j.value("api_key_env", c.api_key_env);
    c.timeout = j.value("timeout", c.timeout);
    c.max_retries = j.value("max_retries", c.max_retries);
    c.temperature = j.value("temperature", c.temperature);
    c.max_tokens = j.value("max_tokens", c.max_tokens);
    c.retry_backoff = j.value("retry_backoff", c.retry_backoff);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad backend config: ") + e.what());
  }
  c.Validate();
  return c;
}

nlohmann::ordered_json BackendConfigToJson(const BackendConfig& c) {
  return {{"endpoint", c.endpoint},       {"model_name", c.model_name},
          {"api_key_env", c.api_key_env}, {"timeout", c.timeout},
          {"max_retries", c.max_retries}, {"temperature", c.temperature},
          {"max_tokens", c.max_tokens},   {"retry_backoff", c.retry_backoff}};
}

}  // namespace revforge::generation
