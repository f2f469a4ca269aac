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

#ifndef REVFORGE_CORPUS_SPLIT_H_
#define REVFORGE_CORPUS_SPLIT_H_

#include <cstdint>

#include "revforge/corpus/review.h"

namespace revforge::corpus {

struct SplitResult {
  LabeledDataset train;
  LabeledDataset test;
};

// Deterministic train/test partition. The train side gets floor(N * f)
// reviews. When stratified, that total is distributed over the label
// classes by largest remainder of n_c * f, so every class lands within one
// item of its exact share. Both halves keep the input order.
//
// Throws ContractError for an empty dataset or f outside (0, 1).
SplitResult Split(const LabeledDataset& dataset, double train_fraction,
                  std::uint64_t seed, bool stratify = true);

}  // namespace revforge::corpus

#endif  // REVFORGE_CORPUS_SPLIT_H_
