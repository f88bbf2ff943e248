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

#include "digitrec/features.hpp"

namespace {

std::vector<double> noise(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> d(-0.5, 0.5);
  std::vector<double> v(n);
  for (double& x : v) x = d(gen);
  return v;
}

void BM_DftMagnitude(benchmark::State& state, digitrec::DftPath path) {
  const auto frame = noise(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(digitrec::dft_magnitude(frame, 8000.0, path));
}
BENCHMARK_CAPTURE(BM_DftMagnitude, fast, digitrec::DftPath::Fast)->Arg(256)->Arg(1024);
BENCHMARK_CAPTURE(BM_DftMagnitude, direct, digitrec::DftPath::Direct)->Arg(256)->Arg(1024);

void BM_MfccFrame(benchmark::State& state) {
  const digitrec::FeatureConfig cfg;
  const auto bank = digitrec::build_mel_filterbank(cfg, 8000);
  const auto frame = noise(cfg.frame_len_samples, 2);
  for (auto _ : state) benchmark::DoNotOptimize(digitrec::mfcc_frame(frame, cfg, bank));
}
BENCHMARK(BM_MfccFrame);

void BM_ExtractVoiced(benchmark::State& state) {
  const digitrec::MfccExtractor ex(digitrec::FeatureConfig{}, 8000);
  const auto samples = noise(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(ex.extract(samples));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExtractVoiced)->Arg(4000)->Arg(8000);

}  // namespace
