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

#ifndef REVFORGE_TESTS_TESTING_FIXTURES_H_
#define REVFORGE_TESTS_TESTING_FIXTURES_H_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>

#include "revforge/common/text.h"
#include "revforge/corpus/review.h"

namespace revforge::testing {

// Fresh, empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

void WriteFile(const std::filesystem::path& path, const std::string& text);
std::string ReadFile(const std::filesystem::path& path);

struct ToyCorpusOptions {
  std::size_t n_real = 10;
  std::size_t n_fake = 10;
  std::size_t min_sentences = 2;
  std::size_t max_sentences = 4;
  Language language = Language::kEnglish;
  std::uint64_t seed = 1;
  // Appended to the first and last sentence of fake reviews when non-empty.
  std::string fake_marker;
  // Probability that a fake review carries the marker.
  double marker_rate = 1.0;
  std::string name = "toy";
};

// Reviews assembled from a small shared vocabulary, so classes are not
// separable unless a marker is used.
corpus::LabeledDataset ToyCorpus(const ToyCorpusOptions& options);

// Random short ASCII sentence of 3-12 words from a 40-word vocabulary.
std::string RandomSentence(std::mt19937_64& rng, bool terminate = true);

// A reference text of one to three sentences with commas and apostrophes
// mixed in, and a candidate derived from it by random word drops, swaps and
// substitutions, so n-gram overlap ranges from none to total.
struct TextPair {
  std::string candidate;
  std::string reference;
};
TextPair RandomTextPair(std::mt19937_64& rng);

// A self-contained experiment: one toy dataset written as generic JSONL and
// a config that holds out part of it, generates with the mock backend and
// trains the native SVM. Returns the config path.
struct ToyExperimentOptions {
  std::string tag = "dianping";
  ToyCorpusOptions corpus;
  std::vector<std::string> presets;
  double test_fraction = 0.2;
  std::uint64_t split_seed = 7;
  std::uint64_t generation_seed = 3;
  int target_length = 5;
  int hash_bits = 16;
  int max_parallel_cells = 1;
  std::string output_dir = "out";
};
std::filesystem::path WriteToyExperiment(const std::filesystem::path& dir,
                                         const ToyExperimentOptions& options);

// httplib server on an ephemeral localhost port, running on its own thread.
class StubServer {
 public:
  StubServer();
  ~StubServer();
  StubServer(const StubServer&) = delete;
  StubServer& operator=(const StubServer&) = delete;

  httplib::Server& server() { return server_; }
  // Starts listening; register handlers first.
  void Start();
  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_); }
  int port() const { return port_; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace revforge::testing

#endif  // REVFORGE_TESTS_TESTING_FIXTURES_H_
