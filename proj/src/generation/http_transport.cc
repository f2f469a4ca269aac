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

#include "revforge/generation/http_transport.h"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "revforge/common/error.h"
#include "revforge/common/logging.h"

namespace revforge::generation {
namespace {

std::string BearerToken(const BackendConfig& config) {
  if (config.api_key_env.empty()) return {};
  const char* value = std::getenv(config.api_key_env.c_str());
  if (value == nullptr || *value == '\0') {
    throw ConfigError("environment variable " + config.api_key_env +
                      " (api_key_env) is not set");
  }
  return value;
}

}  // namespace

HttpJsonClient::HttpJsonClient(BackendConfig config) : config_(std::move(config)) {
  config_.Validate();
  const auto scheme_end = config_.endpoint.find("://");
  const auto path_start = config_.endpoint.find('/', scheme_end + 3);
  origin_ = config_.endpoint.substr(0, path_start);
  if (path_start != std::string::npos) {
    path_prefix_ = config_.endpoint.substr(path_start);
    while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
  }
}

nlohmann::json HttpJsonClient::PostJson(std::string_view path,
                                        const nlohmann::json& body) const {
  return Send(Method::kPost, path,
              body.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace),
              "application/json");
}

nlohmann::json HttpJsonClient::PostRaw(std::string_view path, const std::string& body,
                                       std::string_view content_type) const {
  return Send(Method::kPost, path, body, content_type);
}

nlohmann::json HttpJsonClient::GetJson(std::string_view path) const {
  return Send(Method::kGet, path, {}, {});
}

nlohmann::json HttpJsonClient::Send(Method method, std::string_view path,
                                    const std::string& body,
                                    std::string_view content_type) const {
  const std::string full_path = path_prefix_ + std::string(path);
  const std::string url = origin_ + full_path;
  const std::string token = BearerToken(config_);
  httplib::Headers headers;
  if (!token.empty()) headers.emplace("Authorization", "Bearer " + token);

  const auto seconds = static_cast<time_t>(config_.timeout);
  const auto micros = static_cast<time_t>((config_.timeout - seconds) * 1e6);
  const int attempts = 1 + config_.max_retries;
  std::string last_failure;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    if (attempt > 1) {
      const double delay = config_.retry_backoff * std::pow(2.0, attempt - 2);
      std::this_thread::sleep_for(std::chrono::duration<double>(delay));
    }
    httplib::Client client(origin_);
    client.set_connection_timeout(seconds, micros);
    client.set_read_timeout(seconds, micros);
    client.set_write_timeout(seconds, micros);

    Log().debug("{} {} ({} bytes, attempt {}/{})",
                method == Method::kPost ? "POST" : "GET", url, body.size(),
                attempt, attempts);
    httplib::Result result =
        method == Method::kPost
            ? client.Post(full_path, headers, body, std::string(content_type))
            : client.Get(full_path, headers);
    if (!result) {
      last_failure = httplib::to_string(result.error());
      Log().warn("{} failed: {}", url, last_failure);
      continue;
    }
    const int status = result->status;
    Log().debug("{} -> HTTP {} ({} bytes)", url, status, result->body.size());
    if (status == 429 || status >= 500) {
      last_failure = "HTTP " + std::to_string(status);
      Log().warn("{} answered {}", url, last_failure);
      continue;
    }
    if (status < 200 || status >= 300) {
      throw ProtocolError(url + " answered HTTP " + std::to_string(status),
                          Excerpt(result->body));
    }
    try {
      return nlohmann::json::parse(result->body);
    } catch (const nlohmann::json::parse_error&) {
      throw ProtocolError("malformed JSON response from " + url, Excerpt(result->body));
    }
  }
  throw TransportError(config_.endpoint, attempts, last_failure);
}

}  // namespace revforge::generation
