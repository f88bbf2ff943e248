// Copyright 2026 The digitrec Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Subcommand implementations for the digitrec tool. Each returns the process
// exit code and writes tables to `out`, one status line per file to `err`.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "digitrec/dataset_io.hpp"
#include "digitrec/pipeline.hpp"

namespace digitrec::cli {

struct CommonOptions {
  ExtractionOptions extraction;
  std::optional<std::size_t> legacy_header_skip;  // engages LegacySkip when set
  bool tsv = false;

  ExtractionOptions resolved() const;
};

struct ExtractOptions {
  CommonOptions common;
  std::vector<std::string> inputs;
  std::string manifest;  // optional; supplies labels and adds to inputs
  std::string out_dir = ".";
  std::optional<int> label;
};

struct TrainOptions {
  CommonOptions common;
  std::string manifest;
  std::string out_model = "model.txt";
  std::size_t hidden = 16;
  TrainingConfig training;
  std::size_t log_every = 100;
};

struct EvalOptions {
  CommonOptions common;
  std::string manifest;
  std::string model;
};

struct PredictOptions {
  CommonOptions common;
  std::string model;
  std::string input;
};

struct SynthOptions {
  std::string out_dir;
  std::uint64_t seed = 42;
  std::size_t per_class = 30;
  int rate_hz = 8000;
};

int run_extract(const ExtractOptions& opts, std::ostream& out, std::ostream& err);
int run_train(const TrainOptions& opts, std::ostream& out, std::ostream& err);
int run_eval(const EvalOptions& opts, std::ostream& out, std::ostream& err);
int run_predict(const PredictOptions& opts, std::ostream& out, std::ostream& err);
int run_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace digitrec::cli
