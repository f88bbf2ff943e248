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

#include <cmath>
#include <random>
#include <vector>

#include "digitrec/neuralnet.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace digitrec;

namespace {

Mlp zero_net(std::vector<std::size_t> sizes) {
  Mlp net = init_network(sizes, 1);
  for (auto& w : net.weights)
    for (double& v : w.data()) v = 0.0;
  for (auto& b : net.biases)
    for (double& v : b) v = 0.0;
  return net;
}

}  // namespace

TEST_CASE("Rng follows the xorshift64* definition") {
  Rng rng(0x1234567ULL);
  oracle::XorShift64Star ref{0x1234567ULL};
  for (int i = 0; i < 1000; ++i) CHECK(rng.next_u64() == ref.next());

  Rng a(99), b(99);
  oracle::XorShift64Star r{99};
  for (int i = 0; i < 1000; ++i) {
    const double x = a.next_unit();
    CHECK(x == b.next_unit());
    CHECK(x == r.unit());
    CHECK(x >= -1.0);
    CHECK(x < 1.0);
  }

  Rng c(5);
  const double first = c.next_unit();
  CHECK(first != c.next_unit());
  CHECK_ERROR_CODE(Rng(0), ErrorCode::ConfigError);
}

TEST_CASE("Rng unit draws are centered") {
  Rng rng(42);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) sum += rng.next_unit();
  const double mean = sum / 100000.0;
  CHECK(mean > -0.02);
  CHECK(mean < 0.02);
}

TEST_CASE("init_network shapes, range and draw order") {
  const std::vector<std::size_t> sizes{250, 16, 10};
  const Mlp net = init_network(sizes, 42);
  REQUIRE(net.weights.size() == 2);
  REQUIRE(net.biases.size() == 2);
  CHECK(net.weights[0].rows() == 16);
  CHECK(net.weights[0].cols() == 250);
  CHECK(net.weights[1].rows() == 10);
  CHECK(net.weights[1].cols() == 16);
  CHECK(net.biases[0].size() == 16);
  CHECK(net.biases[1].size() == 10);
  CHECK(net.parameter_count() == 16 * 251 + 10 * 17);

  for (const auto& w : net.weights)
    for (double v : w.data()) CHECK((v >= -1.0 && v <= 1.0));
  for (const auto& b : net.biases)
    for (double v : b) CHECK((v >= -1.0 && v <= 1.0));

  CHECK(init_network(sizes, 42) == net);
  CHECK(!(init_network(sizes, 43) == net));

  // Layer-major: weights of pair 0 row by row, biases of layer 1, then pair 1.
  oracle::XorShift64Star ref{42};
  CHECK(net.weights[0](0, 0) == ref.unit());
  CHECK(net.weights[0](0, 1) == ref.unit());
  for (int i = 2; i < 16 * 250; ++i) ref.unit();
  CHECK(net.biases[0][0] == ref.unit());
  for (int i = 1; i < 16; ++i) ref.unit();
  CHECK(net.weights[1](0, 0) == ref.unit());

  CHECK_ERROR_CODE(init_network(std::vector<std::size_t>{}, 1), ErrorCode::ConfigError);
  CHECK_ERROR_CODE(init_network(std::vector<std::size_t>{4}, 1), ErrorCode::ConfigError);
  CHECK_ERROR_CODE(init_network(std::vector<std::size_t>{4, 0, 2}, 1), ErrorCode::ConfigError);
  CHECK_ERROR_CODE(init_network(sizes, 0), ErrorCode::ConfigError);
}

TEST_CASE("sigmoid") {
  CHECK(sigmoid(0.0) == 0.5);
  CHECK(sigmoid_slope(sigmoid(0.0)) == 0.25);
  CHECK(std::abs(sigmoid(50.0) - 1.0) <= 1e-15);
  CHECK(sigmoid(-50.0) > 0.0);
  double prev = 0.0;
  for (double s = -30.0; s <= 30.0; s += 0.25) {
    CHECK(sigmoid(s) > prev);
    prev = sigmoid(s);
  }
}

TEST_CASE("forward") {
  const Mlp zero = zero_net({5, 3, 2});
  const auto acts = forward(zero, std::vector<double>{1, 2, 3, 4, 5});
  REQUIRE(acts.outputs.size() == 3);
  for (double y : acts.outputs[1]) CHECK(y == 0.5);
  for (double y : acts.output()) CHECK(y == 0.5);
  CHECK(acts.output().size() == 2);

  Mlp tiny = zero_net({1, 1, 1});
  tiny.weights[0](0, 0) = 1.0;
  tiny.weights[1](0, 0) = 1.0;
  const auto t = forward(tiny, std::vector<double>{0.0});
  CHECK(t.outputs[1][0] == 0.5);
  CHECK(t.output()[0] == doctest::Approx(0.622459).epsilon(1e-6));
  CHECK(t.pre_activations[1][0] == 0.5);

  CHECK_ERROR_CODE(forward(tiny, std::vector<double>{1.0, 2.0}), ErrorCode::DimensionMismatch);
}

TEST_CASE("forward is pure on a 250-16-10 net") {
  const Mlp net = init_network(std::vector<std::size_t>{250, 16, 10}, 9);
  std::mt19937_64 gen(1);
  const auto x = oracle::random_vector(gen, 250, -7.0, 1.5);
  const auto a = forward(net, x);
  const auto b = forward(net, x);
  CHECK(a.outputs == b.outputs);
  for (double y : a.output()) CHECK((y > 0.0 && y < 1.0));
}

TEST_CASE("output_deltas") {
  CHECK(output_deltas(std::vector<double>{0.3, 0.7}, std::vector<double>{0.3, 0.7}) ==
        std::vector<double>{0.0, 0.0});
  CHECK(output_deltas(std::vector<double>{1.0}, std::vector<double>{0.5})[0] == 0.125);
  CHECK(output_deltas(std::vector<double>{0.0}, std::vector<double>{0.5})[0] == -0.125);
  CHECK_ERROR_CODE(output_deltas(std::vector<double>{1.0}, std::vector<double>{0.5, 0.5}),
                   ErrorCode::DimensionMismatch);
}

TEST_CASE("hidden_deltas") {
  Mlp net = zero_net({1, 1, 2});
  net.weights[1](0, 0) = 1.0;
  net.weights[1](1, 0) = -1.0;
  const auto acts = forward(net, std::vector<double>{0.0});
  REQUIRE(acts.outputs[1][0] == 0.5);
  const auto d = hidden_deltas(net, 1, acts, std::vector<double>{0.2, 0.1});
  REQUIRE(d.size() == 1);
  CHECK(d[0] == doctest::Approx(0.025).epsilon(1e-15));

  for (double v : hidden_deltas(net, 1, acts, std::vector<double>{0.0, 0.0})) CHECK(v == 0.0);

  Activations saturated = acts;
  saturated.outputs[1][0] = 1.0;
  CHECK(hidden_deltas(net, 1, saturated, std::vector<double>{0.2, 0.1})[0] == 0.0);
  saturated.outputs[1][0] = 0.0;
  CHECK(hidden_deltas(net, 1, saturated, std::vector<double>{0.2, 0.1})[0] == 0.0);

  CHECK_ERROR_CODE(hidden_deltas(net, 0, acts, std::vector<double>{0.2, 0.1}), ErrorCode::IndexError);
  CHECK_ERROR_CODE(hidden_deltas(net, 2, acts, std::vector<double>{0.2, 0.1}), ErrorCode::IndexError);
  CHECK_ERROR_CODE(hidden_deltas(net, 1, acts, std::vector<double>{0.2}), ErrorCode::DimensionMismatch);
}

TEST_CASE("train_pattern hand case on a 1-1 net") {
  Mlp net = zero_net({1, 1});
  const double sse = train_pattern(net, std::vector<double>{1.0}, std::vector<double>{1.0}, 1.0);
  CHECK(sse == 0.25);
  CHECK(net.weights[0](0, 0) == 0.125);
  CHECK(net.biases[0][0] == 0.125);
}

TEST_CASE("train_pattern leaves a net unchanged when the target is its own output") {
  const Mlp net = init_network(std::vector<std::size_t>{4, 3, 2}, 17);
  const std::vector<double> x{0.1, -0.4, 0.9, 0.3};
  Mlp copy = net;
  const auto y = forward(net, x).output();
  CHECK(train_pattern(copy, x, y, 0.5) == 0.0);
  CHECK(copy == net);
  CHECK_ERROR_CODE(train_pattern(copy, x, y, 0.0), ErrorCode::ConfigError);
  CHECK_ERROR_CODE(train_pattern(copy, x, std::vector<double>{1.0}, 0.1), ErrorCode::DimensionMismatch);
}

TEST_CASE("property: a small step never increases the pattern error") {
  std::mt19937_64 gen(31337);
  for (int trial = 0; trial < 100; ++trial) {
    Mlp net = init_network(std::vector<std::size_t>{6, 4, 3}, 1000 + trial);
    const auto x = oracle::random_vector(gen, 6, -2.0, 2.0);
    const auto t = oracle::random_vector(gen, 3, 0.0, 1.0);
    const double before = train_pattern(net, x, t, 0.01);
    const double after = sum_squared_error(t, forward(net, x).output());
    CHECK(after <= before);
  }
}

TEST_CASE("property: update direction equals the negative gradient of half the SSE") {
  std::mt19937_64 gen(606);
  for (int trial = 0; trial < 20; ++trial) {
    const Mlp net = init_network(std::vector<std::size_t>{6, 4, 3}, 500 + trial);
    const auto x = oracle::random_vector(gen, 6, -2.0, 2.0);
    const auto t = oracle::random_vector(gen, 3, 0.0, 1.0);
    const Gradients g = backpropagate(net, x, t);
    const auto num = oracle::numeric_descent_direction(net, x, t);
    for (std::size_t l = 0; l < g.weights.size(); ++l) {
      for (std::size_t i = 0; i < g.weights[l].data().size(); ++i)
        CHECK(oracle::relative_error(g.weights[l].data()[i], num.weights[l].data()[i]) < 1e-4);
      for (std::size_t k = 0; k < g.biases[l].size(); ++k)
        CHECK(oracle::relative_error(g.biases[l][k], num.biases[l][k]) < 1e-4);
    }

    // train_pattern applies exactly rate * direction.
    Mlp stepped = net;
    train_pattern(stepped, x, t, 0.5);
    for (std::size_t l = 0; l < g.weights.size(); ++l)
      for (std::size_t i = 0; i < g.weights[l].data().size(); ++i)
        CHECK(stepped.weights[l].data()[i] == net.weights[l].data()[i] + 0.5 * g.weights[l].data()[i]);
  }
}

TEST_CASE("deeper nets backpropagate through every hidden layer") {
  std::mt19937_64 gen(4);
  const Mlp net = init_network(std::vector<std::size_t>{5, 4, 4, 2}, 77);
  const auto x = oracle::random_vector(gen, 5);
  const std::vector<double> t{1.0, 0.0};
  const Gradients g = backpropagate(net, x, t);
  const auto num = oracle::numeric_descent_direction(net, x, t);
  for (std::size_t l = 0; l < 3; ++l)
    for (std::size_t i = 0; i < g.weights[l].data().size(); ++i)
      CHECK(oracle::relative_error(g.weights[l].data()[i], num.weights[l].data()[i]) < 1e-4);
}

TEST_CASE("XOR is learnable by a 2-2-1 net") {
  Mlp net = init_network(std::vector<std::size_t>{2, 2, 1}, 1);
  const std::vector<std::vector<double>> in{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  const std::vector<double> target{0, 1, 1, 0};
  double sse = 1.0;
  std::size_t epoch = 0;
  for (; epoch < 20000 && sse >= 0.01; ++epoch) {
    sse = 0.0;
    for (std::size_t p = 0; p < 4; ++p)
      sse += train_pattern(net, in[p], std::vector<double>{target[p]}, 0.5);
  }
  CHECK(sse < 0.01);
  for (std::size_t p = 0; p < 4; ++p)
    CHECK(std::abs(forward(net, in[p]).output()[0] - target[p]) < 0.1);
  MESSAGE("XOR converged after " << epoch << " epochs");
}
