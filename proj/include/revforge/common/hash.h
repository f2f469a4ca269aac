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

#ifndef REVFORGE_COMMON_HASH_H_
#define REVFORGE_COMMON_HASH_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace revforge {

// 64-bit FNV-1a over raw bytes. Platform independent.
std::uint64_t Fnv1a64(std::string_view bytes);

// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t Mix64(std::uint64_t x);

// Order-sensitive combination of two 64-bit values.
std::uint64_t HashCombine(std::uint64_t a, std::uint64_t b);

// Uniform integer in [0, bound) drawn from a mt19937_64 stream by rejection.
// Unlike std::uniform_int_distribution the result is identical on every
// standard library.
std::uint64_t UniformBelow(std::mt19937_64& engine, std::uint64_t bound);

// Fisher-Yates shuffle with UniformBelow.
template <typename T>
void DeterministicShuffle(std::vector<T>& items, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(UniformBelow(engine, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace revforge

#endif  // REVFORGE_COMMON_HASH_H_
