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

#include "digitrec/endpointing.hpp"
#include "signals.hpp"
#include "test_support.hpp"

using namespace digitrec;

namespace {

AudioClip constant_clip(double value, std::size_t n) { return {std::vector<double>(n, value), 8000}; }

}  // namespace

TEST_CASE("short_time_energy") {
  for (double v : short_time_energy(constant_clip(0.0, 500), 10.0)) CHECK(v == 0.0);

  const auto e = short_time_energy(constant_clip(0.5, 800), 10.0);
  REQUIRE(e.size() == 10);
  for (double v : e) CHECK(v == doctest::Approx(20.0).epsilon(1e-12));

  // Trailing partial frame is kept: 85 samples -> 80 + 5.
  const auto partial = short_time_energy(constant_clip(0.5, 85), 10.0);
  REQUIRE(partial.size() == 2);
  CHECK(partial[1] == doctest::Approx(1.25));

  CHECK_ERROR_CODE(short_time_energy(AudioClip{}, 10.0), ErrorCode::EmptyPayload);
  CHECK_ERROR_CODE(short_time_energy(constant_clip(0.1, 10), 0.01), ErrorCode::ConfigError);
}

TEST_CASE("property: energies are invariant to sign flips") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  AudioClip clip = constant_clip(0.0, 1234);
  for (double& s : clip.samples) s = d(gen);
  AudioClip flipped = clip;
  for (double& s : flipped.samples) s = -s;
  CHECK(short_time_energy(clip, 10.0) == short_time_energy(flipped, 10.0));
}

TEST_CASE("zero_crossing_rate") {
  for (double z : zero_crossing_rate(constant_clip(0.3, 400), 10.0)) CHECK(z == 0.0);
  for (double z : zero_crossing_rate(constant_clip(-0.3, 400), 10.0)) CHECK(z == 0.0);
  for (double z : zero_crossing_rate(constant_clip(0.0, 400), 10.0)) CHECK(z == 0.0);

  AudioClip alt = constant_clip(0.0, 800);
  for (std::size_t i = 0; i < alt.samples.size(); ++i) alt.samples[i] = i % 2 ? -0.5 : 0.5;
  for (double z : zero_crossing_rate(alt, 10.0)) CHECK(z == 1.0);
  CHECK_ERROR_CODE(zero_crossing_rate(AudioClip{}, 10.0), ErrorCode::EmptyPayload);
}

TEST_CASE("detect_endpoints rejects silence") {
  CHECK_ERROR_CODE(detect_endpoints(constant_clip(0.0, 8000)), ErrorCode::NoVoicedData);

  std::mt19937_64 gen(99);
  std::normal_distribution<double> tiny(0.0, 1e-3);
  for (int trial = 0; trial < 20; ++trial) {
    AudioClip clip = constant_clip(0.0, 8000);
    for (double& s : clip.samples) s = tiny(gen);
    CHECK_ERROR_CODE(detect_endpoints(clip), ErrorCode::NoVoicedData);
  }
}

TEST_CASE("detect_endpoints rejects clips no longer than the noise window") {
  CHECK_ERROR_CODE(detect_endpoints(constant_clip(0.1, 800)), ErrorCode::ClipTooShort);
  CHECK_ERROR_CODE(detect_endpoints(constant_clip(0.1, 400)), ErrorCode::ClipTooShort);
  EndpointParams bad;
  bad.energy_k = 0.0;
  CHECK_ERROR_CODE(detect_endpoints(constant_clip(0.1, 8000), bad), ErrorCode::ConfigError);
}

TEST_CASE("detect_endpoints finds a tone burst within 25 ms") {
  const auto burst = signals::tone_burst(1, 0.3, 0.5, 0.3);
  const VoicedSegment seg = detect_endpoints(burst.clip);
  CHECK(std::abs(static_cast<double>(seg.start_sample) - 2400.0) <= 200.0);
  CHECK(std::abs(static_cast<double>(seg.end_sample) - 6400.0) <= 200.0);
  CHECK(seg.start_sample % 80 == 0);
  CHECK(seg.start_sample < seg.end_sample);
  CHECK(seg.end_sample <= burst.clip.samples.size());
}

TEST_CASE("a tone running to the end of the clip ends the segment there") {
  auto burst = signals::tone_burst(5, 0.2, 0.6, 0.0);
  burst.clip.samples.resize(burst.clip.samples.size() - 37);  // partial last frame
  const VoicedSegment seg = detect_endpoints(burst.clip);
  CHECK(seg.end_sample == burst.clip.samples.size());
}

TEST_CASE("property: detection is deterministic and invariant to positive scaling") {
  for (std::uint64_t seed = 10; seed < 20; ++seed) {
    const auto burst = signals::tone_burst(seed, 0.25, 0.4, 0.25, 300.0 + 30.0 * seed, 0.3);
    const VoicedSegment a = detect_endpoints(burst.clip);
    const VoicedSegment b = detect_endpoints(burst.clip);
    CHECK(a.start_sample == b.start_sample);
    CHECK(a.end_sample == b.end_sample);

    // Power-of-two scale keeps every product exact.
    AudioClip scaled = burst.clip;
    for (double& s : scaled.samples) s *= 0.5;
    const VoicedSegment c = detect_endpoints(scaled);
    CHECK(c.start_sample == a.start_sample);
    CHECK(c.end_sample == a.end_sample);
  }
}

TEST_CASE("property: the segment contains every loud frame of the longest run") {
  const auto burst = signals::tone_burst(3, 0.3, 0.5, 0.3);
  const VoicedSegment seg = detect_endpoints(burst.clip);
  const auto energy = short_time_energy(burst.clip, 10.0);
  // Frames fully inside the tone are far above the noise threshold.
  for (std::size_t f = burst.tone_start / 80; f < burst.tone_end / 80; ++f) {
    CHECK(f * 80 >= seg.start_sample);
    CHECK((f + 1) * 80 <= seg.end_sample);
    CHECK(energy[f] > 1.0);
  }
}

TEST_CASE("a short click loses to the longer voiced run") {
  auto burst = signals::tone_burst(8, 0.4, 0.4, 0.3);
  for (std::size_t n = 1800; n < 1900; ++n) burst.clip.samples[n] += 0.8;  // 12.5 ms click
  const VoicedSegment seg = detect_endpoints(burst.clip);
  CHECK(seg.start_sample >= 3000);
}

TEST_CASE("slice copies the segment") {
  AudioClip clip = constant_clip(0.0, 10);
  for (std::size_t i = 0; i < 10; ++i) clip.samples[i] = static_cast<double>(i) / 16.0;
  const AudioClip s = slice(clip, {2, 5});
  CHECK(s.samples == std::vector<double>{2 / 16.0, 3 / 16.0, 4 / 16.0});
  CHECK_ERROR_CODE(slice(clip, {5, 11}), ErrorCode::IndexError);
}
