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

#include "revforge/common/error.h"

namespace revforge {

std::string Excerpt(std::string_view payload, std::size_t max_bytes) {
  std::string out;
  for (char c : payload.substr(0, max_bytes)) {
    out.push_back(c == '\n' || c == '\r' ? ' ' : c);
  }
  if (payload.size() > max_bytes) out += "...";
  return out;
}

}  // namespace revforge
