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

#include "revforge/corpus/split.h"

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "revforge/common/error.h"
#include "revforge/common/hash.h"

namespace revforge::corpus {
namespace {

// floor(n * f), forgiving the representation error of f (0.8 * 10 must be 8).
std::size_t FloorShare(std::size_t n, double f) {
  return static_cast<std::size_t>(std::floor(static_cast<double>(n) * f + 1e-9));
}

}  // namespace

SplitResult Split(const LabeledDataset& dataset, double train_fraction,
                  std::uint64_t seed, bool stratify) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ContractError("train_fraction must lie in (0, 1), got " +
                        std::to_string(train_fraction));
  }
  if (dataset.empty()) throw ContractError("cannot split an empty dataset");

  const std::size_t n = dataset.size();
  std::vector<bool> in_train(n, false);

  if (!stratify) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    DeterministicShuffle(order, seed);
    const std::size_t take = FloorShare(n, train_fraction);
    for (std::size_t i = 0; i < take; ++i) in_train[order[i]] = true;
  } else {
    std::array<std::vector<std::size_t>, 2> members;
    for (std::size_t i = 0; i < n; ++i) {
      members[dataset.reviews[i].label == Label::kFake ? 1 : 0].push_back(i);
    }
    std::array<std::size_t, 2> quota{};
    std::array<double, 2> remainder{};
    std::size_t assigned = 0;
    for (int c = 0; c < 2; ++c) {
      const double exact = static_cast<double>(members[c].size()) * train_fraction;
      quota[c] = FloorShare(members[c].size(), train_fraction);
      remainder[c] = exact - static_cast<double>(quota[c]);
      assigned += quota[c];
    }
    std::size_t leftover = FloorShare(n, train_fraction) - assigned;
    // At most one item per class; Real wins ties.
    while (leftover > 0) {
      const int c = remainder[1] > remainder[0] ? 1 : 0;
      if (quota[c] < members[c].size()) ++quota[c];
      remainder[c] = -1.0;
      --leftover;
    }
    for (int c = 0; c < 2; ++c) {
      DeterministicShuffle(members[c], HashCombine(seed, static_cast<std::uint64_t>(c)));
      for (std::size_t i = 0; i < quota[c]; ++i) in_train[members[c][i]] = true;
    }
  }

  SplitResult out;
  out.train.name = out.test.name = dataset.name;
  out.train.language = out.test.language = dataset.language;
  for (std::size_t i = 0; i < n; ++i) {
    (in_train[i] ? out.train : out.test).reviews.push_back(dataset.reviews[i]);
  }
  return out;
}

}  // namespace revforge::corpus
