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

#include "digitrec/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "digitrec/error.hpp"
#include "digitrec/neuralnet.hpp"

namespace digitrec {
namespace {

// Vowel-like resonance triplets, one per class.
constexpr std::array<std::array<double, 3>, 10> kPartials{{
    {300, 870, 2240},
    {270, 2290, 3010},
    {390, 1990, 2550},
    {530, 1840, 2480},
    {660, 1720, 2410},
    {730, 1090, 2440},
    {570, 840, 2410},
    {440, 1020, 2240},
    {490, 1350, 1690},
    {350, 1500, 2600},
}};

constexpr double kFreqJitter = 0.02;
constexpr double kAmpJitter = 0.10;
constexpr double kPeakAmplitude = 0.5;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double gaussian(Rng& rng) {
  const double u1 = 1.0 - rng.next_unit_interval();  // (0, 1]
  const double u2 = rng.next_unit_interval();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double envelope(const ClassTemplate& t, double time) {
  if (time < t.attack_s) return 0.5 - 0.5 * std::cos(std::numbers::pi * time / t.attack_s);
  const double tail = t.duration_s - time;
  if (tail < t.release_s) return 0.5 - 0.5 * std::cos(std::numbers::pi * tail / t.release_s);
  return 1.0;
}

}  // namespace

ClassTemplate class_template(int digit) {
  if (digit < 0 || digit > 9) fail(ErrorCode::IndexError, "digit outside 0..9");
  const auto d = static_cast<std::size_t>(digit);
  ClassTemplate t;
  t.partial_hz = kPartials[d];
  t.partial_gain = {1.0, 0.6, 0.3};
  t.duration_s = 0.4 + 0.3 * static_cast<double>((d * 7) % 10) / 9.0;
  t.attack_s = 0.03 + 0.005 * static_cast<double>(d % 4);
  t.release_s = 0.06 + 0.01 * static_cast<double>(d % 3);
  t.tremolo_hz = 3.0 + static_cast<double>(d % 5);
  return t;
}

std::vector<SynthClip> synth_corpus(std::uint64_t seed, std::size_t clips_per_class,
                                    int sample_rate_hz) {
  if (clips_per_class < 2) fail(ErrorCode::ConfigError, "need at least 2 clips per class");
  double highest = 0.0;
  for (const auto& p : kPartials)
    for (double f : p) highest = std::max(highest, f * (1.0 + kFreqJitter));
  if (sample_rate_hz <= 0 || sample_rate_hz / 2.0 <= highest)
    fail(ErrorCode::ConfigError, "sample rate " + std::to_string(sample_rate_hz) +
                                     " Hz cannot represent the class partials");

  const double fs = sample_rate_hz;
  const auto pad = static_cast<std::size_t>(std::lround(kSynthSilenceSeconds * fs));
  const double noise_ratio = std::pow(10.0, -kSynthSnrDb / 20.0);

  std::vector<SynthClip> corpus;
  corpus.reserve(clips_per_class * 10);
  for (int digit = 0; digit < 10; ++digit) {
    const ClassTemplate t = class_template(digit);
    const auto tone_len = static_cast<std::size_t>(std::lround(t.duration_s * fs));
    for (std::size_t index = 0; index < clips_per_class; ++index) {
      std::uint64_t stream =
          splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(digit) * 1000003ULL + index));
      if (stream == 0) stream = 1;
      Rng rng(stream);

      std::array<double, 3> freq{}, phase{};
      for (std::size_t p = 0; p < 3; ++p) {
        freq[p] = t.partial_hz[p] * (1.0 + kFreqJitter * rng.next_unit());
        phase[p] = 2.0 * std::numbers::pi * rng.next_unit_interval();
      }
      const double amp = kPeakAmplitude * (1.0 + kAmpJitter * rng.next_unit());
      const double gain_sum = t.partial_gain[0] + t.partial_gain[1] + t.partial_gain[2];

      std::vector<double> tone(tone_len);
      double power = 0.0;
      for (std::size_t n = 0; n < tone_len; ++n) {
        const double time = static_cast<double>(n) / fs;
        double v = 0.0;
        for (std::size_t p = 0; p < 3; ++p)
          v += t.partial_gain[p] * std::sin(2.0 * std::numbers::pi * freq[p] * time + phase[p]);
        const double trem = 0.85 + 0.15 * std::cos(2.0 * std::numbers::pi * t.tremolo_hz * time);
        tone[n] = amp * envelope(t, time) * trem * v / gain_sum;
        power += tone[n] * tone[n];
      }
      const double noise_sigma = noise_ratio * std::sqrt(power / static_cast<double>(tone_len));

      SynthClip sc;
      sc.label = digit;
      sc.index = index;
      char id[32];
      std::snprintf(id, sizeof id, "d%d_%03zu", digit, index);
      sc.id = id;
      sc.clip.sample_rate_hz = sample_rate_hz;
      sc.clip.samples.resize(tone_len + 2 * pad);
      for (std::size_t n = 0; n < sc.clip.samples.size(); ++n) {
        const double s = (n >= pad && n < pad + tone_len) ? tone[n - pad] : 0.0;
        sc.clip.samples[n] = std::clamp(s + noise_sigma * gaussian(rng), -1.0, 127.0 / 128.0);
      }
      corpus.push_back(std::move(sc));
    }
  }
  return corpus;
}

}  // namespace digitrec
