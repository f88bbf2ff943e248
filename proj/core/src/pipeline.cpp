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

#include "digitrec/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "digitrec/error.hpp"

namespace digitrec {

void Dataset::validate(std::size_t expected_len) const {
  if (items.empty()) fail(ErrorCode::EmptyDataset, "dataset has no items");
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& fv = items[i];
    if (!fv.label || *fv.label < 0 || static_cast<std::size_t>(*fv.label) >= class_count)
      fail(ErrorCode::DimensionMismatch, "item " + std::to_string(i) + " has no valid label");
    if (fv.values.size() != expected_len)
      fail(ErrorCode::DimensionMismatch, "item " + std::to_string(i) + " has " +
                                             std::to_string(fv.values.size()) +
                                             " values, expected " + std::to_string(expected_len));
  }
}

std::vector<double> one_hot_target(int label, std::size_t n) {
  if (label < 0 || static_cast<std::size_t>(label) >= n)
    fail(ErrorCode::IndexError, "label " + std::to_string(label) + " outside [0, " +
                                    std::to_string(n) + ")");
  std::vector<double> t(n, 0.0);
  t[static_cast<std::size_t>(label)] = 1.0;
  return t;
}

namespace {

TrainingResult run_epochs(Mlp net, Rng rng, const Dataset& data, const TrainingConfig& cfg,
                          const EpochCallback& on_epoch) {
  if (!(cfg.learning_rate > 0.0) || cfg.max_epochs == 0 || !(cfg.target_sse > 0.0))
    fail(ErrorCode::ConfigError, "learning rate, max epochs and target SSE must be positive");
  if (net.output_size() != data.class_count)
    fail(ErrorCode::DimensionMismatch, "output layer has " + std::to_string(net.output_size()) +
                                           " units for " + std::to_string(data.class_count) +
                                           " classes");
  data.validate(net.input_size());

  std::vector<std::vector<double>> targets;
  targets.reserve(data.size());
  for (const auto& fv : data.items) targets.push_back(one_hot_target(*fv.label, data.class_count));

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  TrainingResult result;
  result.history.reserve(std::min<std::size_t>(cfg.max_epochs, 1u << 16));
  for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    if (cfg.shuffle_each_epoch)
      for (std::size_t i = order.size(); i-- > 1;) std::swap(order[i], order[rng.next_index(i + 1)]);

    double sse = 0.0;
    for (std::size_t idx : order)
      sse += train_pattern(net, data.items[idx].values, targets[idx], cfg.learning_rate);
    result.history.push_back(sse);
    if (on_epoch) on_epoch(epoch, sse);
    if (!std::isfinite(sse)) fail(ErrorCode::ConfigError, "training diverged (non-finite SSE)");
    if (sse <= cfg.target_sse) {
      result.reason = StopReason::TargetReached;
      break;
    }
  }
  result.net = std::move(net);
  return result;
}

}  // namespace

TrainingResult train_network(const Dataset& data, const TrainingConfig& cfg,
                             std::span<const std::size_t> topology,
                             const EpochCallback& on_epoch) {
  if (data.empty()) fail(ErrorCode::EmptyDataset, "no training patterns");
  Mlp net = init_network(topology, cfg.seed);
  Rng rng(cfg.seed);
  for (std::size_t i = 0; i < net.parameter_count(); ++i) rng.next_u64();
  return run_epochs(std::move(net), rng, data, cfg, on_epoch);
}

TrainingResult continue_training(Mlp net, const Dataset& data, const TrainingConfig& cfg,
                                 const EpochCallback& on_epoch) {
  if (data.empty()) fail(ErrorCode::EmptyDataset, "no training patterns");
  net.validate();
  return run_epochs(std::move(net), Rng(cfg.seed), data, cfg, on_epoch);
}

int argmax_lowest(std::span<const double> scores) {
  if (scores.empty()) fail(ErrorCode::DimensionMismatch, "no scores");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i)
    if (scores[i] > scores[best]) best = i;
  return static_cast<int>(best);
}

Classification classify(const Mlp& net, const FeatureVector& fv) {
  Classification c;
  c.scores = forward(net, fv.values).output();
  c.label = argmax_lowest(c.scores);
  return c;
}

double round_to(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

EvaluationReport tabulate(std::span<const int> truth, std::span<const int> predicted,
                          std::size_t class_count) {
  if (truth.empty()) fail(ErrorCode::EmptyDataset, "nothing to evaluate");
  if (truth.size() != predicted.size())
    fail(ErrorCode::DimensionMismatch, "truth and prediction counts differ");

  EvaluationReport r;
  r.rows.assign(class_count, {});
  r.confusion.assign(class_count, std::vector<std::size_t>(class_count, 0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const int t = truth[i], p = predicted[i];
    if (t < 0 || p < 0 || static_cast<std::size_t>(t) >= class_count ||
        static_cast<std::size_t>(p) >= class_count)
      fail(ErrorCode::IndexError, "label outside class range");
    const auto ti = static_cast<std::size_t>(t), pi = static_cast<std::size_t>(p);
    ++r.rows[ti].tested;
    ++r.confusion[ti][pi];
    if (ti == pi) ++r.rows[ti].correct;
  }

  double rate_sum = 0.0;
  std::size_t populated = 0;
  for (auto& row : r.rows) {
    r.total_tested += row.tested;
    r.total_correct += row.correct;
    if (row.tested == 0) continue;
    row.rate_percent = round_to(100.0 * row.correct / row.tested, 2);
    rate_sum += row.rate_percent;
    ++populated;
  }
  r.total_rate_percent = round_to(100.0 * r.total_correct / r.total_tested, 2);
  r.mean_class_rate_percent = populated ? rate_sum / populated : 0.0;
  return r;
}

EvaluationReport evaluate(const Mlp& net, const Dataset& data) {
  if (data.empty()) fail(ErrorCode::EmptyDataset, "no test patterns");
  data.validate(net.input_size());
  std::vector<int> truth, predicted;
  truth.reserve(data.size());
  predicted.reserve(data.size());
  for (const auto& fv : data.items) {
    truth.push_back(*fv.label);
    predicted.push_back(classify(net, fv).label);
  }
  return tabulate(truth, predicted, data.class_count);
}

std::string format_report(const EvaluationReport& r, bool tsv) {
  std::string out;
  char buf[128];
  if (tsv) {
    out += "digit\ttested\tcorrect\trate\n";
    for (std::size_t d = 0; d < r.rows.size(); ++d) {
      std::snprintf(buf, sizeof buf, "%zu\t%zu\t%zu\t%.2f\n", d, r.rows[d].tested,
                    r.rows[d].correct, r.rows[d].rate_percent);
      out += buf;
    }
    std::snprintf(buf, sizeof buf, "total\t%zu\t%zu\t%.2f\n", r.total_tested, r.total_correct,
                  r.total_rate_percent);
    out += buf;
    std::snprintf(buf, sizeof buf, "mean_class_rate\t%.3f\n", r.mean_class_rate_percent);
    out += buf;
    for (std::size_t t = 0; t < r.confusion.size(); ++t) {
      out += "confusion\t" + std::to_string(t);
      for (std::size_t c : r.confusion[t]) out += "\t" + std::to_string(c);
      out += '\n';
    }
    return out;
  }

  out += "digit  tested  correct   rate%\n";
  for (std::size_t d = 0; d < r.rows.size(); ++d) {
    std::snprintf(buf, sizeof buf, "%5zu  %6zu  %7zu  %6.2f\n", d, r.rows[d].tested,
                  r.rows[d].correct, r.rows[d].rate_percent);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "total  %6zu  %7zu  %6.2f\n", r.total_tested, r.total_correct,
                r.total_rate_percent);
  out += buf;
  std::snprintf(buf, sizeof buf, "rate over all items (%%): %.2f\n", r.total_rate_percent);
  out += buf;
  std::snprintf(buf, sizeof buf, "mean of per-digit rates (%%): %.3f\n",
                r.mean_class_rate_percent);
  out += buf;

  out += "\nconfusion (rows: true digit, columns: predicted)\n     ";
  for (std::size_t c = 0; c < r.confusion.size(); ++c) {
    std::snprintf(buf, sizeof buf, " %4zu", c);
    out += buf;
  }
  out += '\n';
  for (std::size_t t = 0; t < r.confusion.size(); ++t) {
    std::snprintf(buf, sizeof buf, "%5zu", t);
    out += buf;
    for (std::size_t c : r.confusion[t]) {
      std::snprintf(buf, sizeof buf, " %4zu", c);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace digitrec
