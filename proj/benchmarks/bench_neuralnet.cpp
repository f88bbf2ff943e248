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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "digitrec/neuralnet.hpp"
#include "digitrec/pipeline.hpp"

namespace {

const std::vector<std::size_t> kTopology{250, 16, 10};

std::vector<double> input(unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> d(-7.0, 1.5);
  std::vector<double> v(250);
  for (double& x : v) x = d(gen);
  return v;
}

void BM_Forward(benchmark::State& state) {
  const auto net = digitrec::init_network(kTopology, 42);
  const auto x = input(1);
  for (auto _ : state) benchmark::DoNotOptimize(digitrec::forward(net, x));
}
BENCHMARK(BM_Forward);

void BM_TrainPattern(benchmark::State& state) {
  auto net = digitrec::init_network(kTopology, 42);
  const auto x = input(2);
  const auto t = digitrec::one_hot_target(3, 10);
  for (auto _ : state) benchmark::DoNotOptimize(digitrec::train_pattern(net, x, t, 0.2));
}
BENCHMARK(BM_TrainPattern);

}  // namespace
