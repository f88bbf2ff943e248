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

// Fully connected sigmoid network trained online with the generalized delta
// rule (plain backpropagation, no momentum).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace digitrec {

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// xorshift64* generator. The recurrence and the mapping to reals are part
/// of the model format's reproducibility contract; do not change them.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64() noexcept;
  /// Top 53 bits of next_u64() as a real in [0, 1).
  double next_unit_interval() noexcept;
  /// 2 * next_unit_interval() - 1, in [-1, 1).
  double next_unit() noexcept;
  /// Uniform index in [0, bound) by modulo reduction; bound > 0.
  std::size_t next_index(std::size_t bound) noexcept;

  std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

struct Mlp {
  std::vector<std::size_t> layer_sizes;
  // weights[l] maps layer l to layer l+1: size(l+1) x size(l), entry (k, j) = w_jk.
  std::vector<Matrix> weights;
  // biases[l] belongs to layer l+1; the input layer has none.
  std::vector<std::vector<double>> biases;

  std::size_t layer_count() const noexcept { return layer_sizes.size(); }
  std::size_t input_size() const noexcept { return layer_sizes.front(); }
  std::size_t output_size() const noexcept { return layer_sizes.back(); }
  std::size_t parameter_count() const noexcept;

  /// Throws DimensionMismatch / ConfigError when the shapes are inconsistent
  /// or any parameter is non-finite.
  void validate() const;

  bool operator==(const Mlp&) const = default;
};

struct Activations {
  std::vector<std::vector<double>> outputs;          // y per layer, outputs[0] = input
  std::vector<std::vector<double>> pre_activations;  // s per non-input layer

  const std::vector<double>& output() const { return outputs.back(); }
};

/// Update direction for one pattern, delta_k * y_j for weights and delta_k for
/// biases. This equals minus the gradient of half the pattern SSE.
struct Gradients {
  std::vector<Matrix> weights;
  std::vector<std::vector<double>> biases;
  double sse = 0.0;
};

/// Parameters are drawn from Rng(seed).next_unit() layer by layer: all
/// weights of a layer pair in row-major order, then that layer's biases.
Mlp init_network(std::span<const std::size_t> layer_sizes, std::uint64_t seed);

double sigmoid(double s) noexcept;
/// Derivative expressed through the output, y (1 - y).
constexpr double sigmoid_slope(double y) noexcept { return y * (1.0 - y); }

Activations forward(const Mlp& net, std::span<const double> input);

std::vector<double> output_deltas(std::span<const double> target, std::span<const double> actual);

/// delta_h = y_h (1 - y_h) sum_o next_deltas[o] w_ho, for hidden layer
/// `layer_index` (1 .. layer_count - 2).
std::vector<double> hidden_deltas(const Mlp& net, std::size_t layer_index,
                                  const Activations& acts, std::span<const double> next_deltas);

Gradients backpropagate(const Mlp& net, std::span<const double> input,
                        std::span<const double> target);

/// One online step: w_jk += rate * delta_k * y_j, b_k += rate * delta_k, with
/// every delta computed from the pre-update weights. Returns the SSE of the
/// forward pass taken before the update.
double train_pattern(Mlp& net, std::span<const double> input, std::span<const double> target,
                     double learning_rate);

double sum_squared_error(std::span<const double> target, std::span<const double> actual);

}  // namespace digitrec
