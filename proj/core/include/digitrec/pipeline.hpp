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

// Training loop, classification and recognition-rate reporting.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "digitrec/features.hpp"
#include "digitrec/neuralnet.hpp"

namespace digitrec {

inline constexpr std::size_t kDigitClasses = 10;

struct Dataset {
  std::vector<FeatureVector> items;
  std::size_t class_count = kDigitClasses;

  bool empty() const noexcept { return items.empty(); }
  std::size_t size() const noexcept { return items.size(); }
  /// Throws EmptyDataset, or DimensionMismatch when lengths disagree or an
  /// item is unlabeled / out of range.
  void validate(std::size_t expected_len) const;
};

struct TrainingConfig {
  double learning_rate = 0.2;
  std::size_t max_epochs = 10000;
  double target_sse = 0.01;
  std::uint64_t seed = 42;
  bool shuffle_each_epoch = true;
};

enum class StopReason { TargetReached, MaxEpochs };

struct TrainingResult {
  Mlp net;
  std::vector<double> history;  // epoch SSE, one entry per completed epoch
  StopReason reason = StopReason::MaxEpochs;

  std::size_t epochs() const noexcept { return history.size(); }
};

/// Called after each epoch with (1-based epoch, epoch SSE).
using EpochCallback = std::function<void(std::size_t, double)>;

std::vector<double> one_hot_target(int label, std::size_t n);

/// Online backpropagation. The network comes from init_network(topology, seed);
/// the per-epoch shuffle draws from the same xorshift stream, continuing after
/// the initialization draws. Epoch SSE sums each pattern's pre-update SSE.
TrainingResult train_network(const Dataset& data, const TrainingConfig& cfg,
                             std::span<const std::size_t> topology,
                             const EpochCallback& on_epoch = {});

/// Same loop, continuing from an existing network.
TrainingResult continue_training(Mlp net, const Dataset& data, const TrainingConfig& cfg,
                                 const EpochCallback& on_epoch = {});

struct Classification {
  int label = 0;
  std::vector<double> scores;
};

/// Argmax of the output activations; ties go to the lowest index.
Classification classify(const Mlp& net, const FeatureVector& fv);
int argmax_lowest(std::span<const double> scores);

struct ClassRow {
  std::size_t tested = 0;
  std::size_t correct = 0;
  double rate_percent = 0.0;  // rounded to 2 decimals
};

struct EvaluationReport {
  std::vector<ClassRow> rows;
  std::size_t total_tested = 0;
  std::size_t total_correct = 0;
  double total_rate_percent = 0.0;       // 100 * sum correct / sum tested, 2 decimals
  double mean_class_rate_percent = 0.0;  // mean of the rounded per-class rates
  std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
};

double round_to(double value, int decimals);

EvaluationReport evaluate(const Mlp& net, const Dataset& data);

/// Builds a report from (true, predicted) label pairs.
EvaluationReport tabulate(std::span<const int> truth, std::span<const int> predicted,
                          std::size_t class_count = kDigitClasses);

/// Fixed-width table (digit, tested, correct, rate%), totals, both aggregate
/// rates and the confusion matrix. With `tsv` the same content is emitted as
/// tab-separated records.
std::string format_report(const EvaluationReport& report, bool tsv = false);

}  // namespace digitrec
