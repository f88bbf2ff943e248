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

#include "digitrec/neuralnet.hpp"

#include <cmath>
#include <string>

#include "digitrec/error.hpp"

namespace digitrec {
namespace {

void check_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want)
    fail(ErrorCode::DimensionMismatch, std::string(what) + " has length " + std::to_string(got) +
                                           ", expected " + std::to_string(want));
}

}  // namespace

Rng::Rng(std::uint64_t seed) : state_(seed) {
  if (seed == 0) fail(ErrorCode::ConfigError, "RNG seed must be nonzero");
}

std::uint64_t Rng::next_u64() noexcept {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 2685821657736338717ULL;
}

double Rng::next_unit_interval() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_unit() noexcept { return 2.0 * next_unit_interval() - 1.0; }

std::size_t Rng::next_index(std::size_t bound) noexcept {
  return static_cast<std::size_t>(next_u64() % bound);
}

std::size_t Mlp::parameter_count() const noexcept {
  std::size_t n = 0;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l)
    n += layer_sizes[l + 1] * (layer_sizes[l] + 1);
  return n;
}

void Mlp::validate() const {
  if (layer_sizes.size() < 2) fail(ErrorCode::ConfigError, "network needs at least two layers");
  for (std::size_t s : layer_sizes)
    if (s == 0) fail(ErrorCode::ConfigError, "layer sizes must be positive");
  check_size(weights.size(), layer_sizes.size() - 1, "weight matrix list");
  check_size(biases.size(), layer_sizes.size() - 1, "bias vector list");
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    check_size(weights[l].rows(), layer_sizes[l + 1], "weight matrix rows");
    check_size(weights[l].cols(), layer_sizes[l], "weight matrix columns");
    check_size(biases[l].size(), layer_sizes[l + 1], "bias vector");
    for (double w : weights[l].data())
      if (!std::isfinite(w)) fail(ErrorCode::ConfigError, "non-finite weight");
    for (double b : biases[l])
      if (!std::isfinite(b)) fail(ErrorCode::ConfigError, "non-finite bias");
  }
}

Mlp init_network(std::span<const std::size_t> layer_sizes, std::uint64_t seed) {
  if (layer_sizes.size() < 2) fail(ErrorCode::ConfigError, "network needs at least two layers");
  for (std::size_t s : layer_sizes)
    if (s == 0) fail(ErrorCode::ConfigError, "layer sizes must be positive");

  Rng rng(seed);
  Mlp net;
  net.layer_sizes.assign(layer_sizes.begin(), layer_sizes.end());
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    Matrix w(layer_sizes[l + 1], layer_sizes[l]);
    for (double& v : w.data()) v = rng.next_unit();
    std::vector<double> b(layer_sizes[l + 1]);
    for (double& v : b) v = rng.next_unit();
    net.weights.push_back(std::move(w));
    net.biases.push_back(std::move(b));
  }
  return net;
}

double sigmoid(double s) noexcept { return 1.0 / (1.0 + std::exp(-s)); }

Activations forward(const Mlp& net, std::span<const double> input) {
  check_size(input.size(), net.input_size(), "input");
  Activations acts;
  acts.outputs.reserve(net.layer_count());
  acts.pre_activations.reserve(net.layer_count() - 1);
  acts.outputs.emplace_back(input.begin(), input.end());
  for (std::size_t l = 0; l + 1 < net.layer_count(); ++l) {
    const Matrix& w = net.weights[l];
    const auto& prev = acts.outputs.back();
    std::vector<double> s(w.rows()), y(w.rows());
    for (std::size_t k = 0; k < w.rows(); ++k) {
      double acc = net.biases[l][k];
      const auto row = w.row(k);
      for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * prev[j];
      s[k] = acc;
      y[k] = sigmoid(acc);
    }
    acts.pre_activations.push_back(std::move(s));
    acts.outputs.push_back(std::move(y));
  }
  return acts;
}

std::vector<double> output_deltas(std::span<const double> target, std::span<const double> actual) {
  check_size(actual.size(), target.size(), "actual output");
  std::vector<double> d(target.size());
  for (std::size_t o = 0; o < d.size(); ++o)
    d[o] = (target[o] - actual[o]) * sigmoid_slope(actual[o]);
  return d;
}

std::vector<double> hidden_deltas(const Mlp& net, std::size_t layer_index,
                                  const Activations& acts, std::span<const double> next_deltas) {
  if (layer_index == 0 || layer_index + 1 >= net.layer_count())
    fail(ErrorCode::IndexError, "layer " + std::to_string(layer_index) + " is not a hidden layer");
  if (acts.outputs.size() != net.layer_count())
    fail(ErrorCode::DimensionMismatch, "activations do not match the network depth");
  const Matrix& w = net.weights[layer_index];  // next layer x this layer
  check_size(next_deltas.size(), w.rows(), "next-layer deltas");
  const auto& y = acts.outputs[layer_index];
  check_size(y.size(), w.cols(), "hidden activations");

  std::vector<double> d(w.cols(), 0.0);
  for (std::size_t o = 0; o < w.rows(); ++o) {
    const auto row = w.row(o);
    for (std::size_t h = 0; h < row.size(); ++h) d[h] += next_deltas[o] * row[h];
  }
  for (std::size_t h = 0; h < d.size(); ++h) d[h] *= sigmoid_slope(y[h]);
  return d;
}

double sum_squared_error(std::span<const double> target, std::span<const double> actual) {
  check_size(actual.size(), target.size(), "actual output");
  double sse = 0.0;
  for (std::size_t o = 0; o < target.size(); ++o) {
    const double e = target[o] - actual[o];
    sse += e * e;
  }
  return sse;
}

Gradients backpropagate(const Mlp& net, std::span<const double> input,
                        std::span<const double> target) {
  check_size(target.size(), net.output_size(), "target");
  const Activations acts = forward(net, input);
  const std::size_t pairs = net.layer_count() - 1;

  Gradients g;
  g.sse = sum_squared_error(target, acts.output());
  g.weights.resize(pairs);
  g.biases.resize(pairs);

  std::vector<double> delta = output_deltas(target, acts.output());
  for (std::size_t l = pairs; l-- > 0;) {
    const auto& sender = acts.outputs[l];
    Matrix gw(delta.size(), sender.size());
    for (std::size_t k = 0; k < delta.size(); ++k)
      for (std::size_t j = 0; j < sender.size(); ++j) gw(k, j) = delta[k] * sender[j];
    g.weights[l] = std::move(gw);
    g.biases[l] = delta;
    if (l > 0) delta = hidden_deltas(net, l, acts, delta);
  }
  return g;
}

double train_pattern(Mlp& net, std::span<const double> input, std::span<const double> target,
                     double learning_rate) {
  if (!(learning_rate > 0.0)) fail(ErrorCode::ConfigError, "learning rate must be positive");
  const Gradients g = backpropagate(net, input, target);
  for (std::size_t l = 0; l < g.weights.size(); ++l) {
    auto w = net.weights[l].data();
    const auto dw = g.weights[l].data();
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += learning_rate * dw[i];
    auto& b = net.biases[l];
    for (std::size_t k = 0; k < b.size(); ++k) b[k] += learning_rate * g.biases[l][k];
  }
  return g.sse;
}

}  // namespace digitrec
