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

#ifndef REVFORGE_GENERATION_HTTP_TRANSPORT_H_
#define REVFORGE_GENERATION_HTTP_TRANSPORT_H_

#include <string>
#include <string_view>

#include <json.hpp>

#include "revforge/generation/backend_config.h"

namespace revforge::generation {

// Blocking JSON-over-HTTP client shared by every model-service adapter.
//
// Connection failures, 429 and 5xx answers are retried up to
// config.max_retries times with exponential backoff, then surface as
// TransportError. Other non-2xx answers and unparsable bodies are
// ProtocolError. Each call opens its own connection, so one instance may be
// used from several threads.
class HttpJsonClient {
 public:
  explicit HttpJsonClient(BackendConfig config);

  nlohmann::json PostJson(std::string_view path, const nlohmann::json& body) const;
  nlohmann::json PostRaw(std::string_view path, const std::string& body,
                         std::string_view content_type) const;
  nlohmann::json GetJson(std::string_view path) const;

  const BackendConfig& config() const { return config_; }

 private:
  enum class Method { kGet, kPost };
  nlohmann::json Send(Method method, std::string_view path, const std::string& body,
                      std::string_view content_type) const;

  BackendConfig config_;
  std::string origin_;       // scheme://host[:port]
  std::string path_prefix_;  // optional path below the origin
};

}  // namespace revforge::generation

#endif  // REVFORGE_GENERATION_HTTP_TRANSPORT_H_
