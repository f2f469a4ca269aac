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

#ifndef REVFORGE_COMMON_ERROR_H_
#define REVFORGE_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace revforge {

// Root of every error the library throws. The CLI maps subclasses onto
// process exit codes (see ExitCodeFor in harness/cli.h).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Bad configuration: unknown preset, missing dataset tag, invalid field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input data could not be loaded or failed validation.
class DataError : public Error {
 public:
  using Error::Error;
};

// Training data intersects the held-out test set.
class LeakageError : public DataError {
 public:
  LeakageError(std::string message, std::vector<std::string> offending_ids)
      : DataError(std::move(message)), offending_ids_(std::move(offending_ids)) {}

  const std::vector<std::string>& offending_ids() const { return offending_ids_; }

 private:
  std::vector<std::string> offending_ids_;
};

// Anything that went wrong talking to a model service.
class BackendError : public Error {
 public:
  using Error::Error;
};

// The service could not be reached (or kept failing) after all retries.
class TransportError : public BackendError {
 public:
  TransportError(std::string endpoint, int attempts, const std::string& detail)
      : BackendError("transport error talking to " + endpoint + " after " +
                     std::to_string(attempts) + " attempt(s): " + detail),
        endpoint_(std::move(endpoint)),
        attempts_(attempts) {}

  TransportError WithPrefix(const std::string& prefix) const {
    TransportError copy = *this;
    static_cast<std::runtime_error&>(copy) =
        std::runtime_error(prefix + ": " + what());
    return copy;
  }

  const std::string& endpoint() const { return endpoint_; }
  int attempts() const { return attempts_; }

 private:
  std::string endpoint_;
  int attempts_;
};

// The service answered, but with something we cannot interpret.
class ProtocolError : public BackendError {
 public:
  ProtocolError(const std::string& detail, std::string payload_excerpt)
      : BackendError(detail + (payload_excerpt.empty()
                                   ? std::string()
                                   : " (payload: " + payload_excerpt + ")")),
        payload_excerpt_(std::move(payload_excerpt)) {}

  ProtocolError WithPrefix(const std::string& prefix) const {
    ProtocolError copy = *this;
    static_cast<std::runtime_error&>(copy) =
        std::runtime_error(prefix + ": " + what());
    return copy;
  }

  const std::string& payload_excerpt() const { return payload_excerpt_; }

 private:
  std::string payload_excerpt_;
};

// A remote training job did not finish within its deadline.
class JobTimeoutError : public BackendError {
 public:
  JobTimeoutError(std::string job_id, double waited_seconds)
      : BackendError("classifier job " + job_id + " did not finish within " +
                     std::to_string(waited_seconds) + " s"),
        job_id_(std::move(job_id)) {}

  const std::string& job_id() const { return job_id_; }

 private:
  std::string job_id_;
};

// Keeps payload excerpts in error messages short and single-line.
std::string Excerpt(std::string_view payload, std::size_t max_bytes = 200);

}  // namespace revforge

#endif  // REVFORGE_COMMON_ERROR_H_
