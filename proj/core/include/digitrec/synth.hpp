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

// Synthetic ten-word corpus used for desk-scale experiments when no recorded
// speech is available. Each class is a fixed three-partial tone with its own
// duration and envelope; clips jitter frequencies (+-2%) and amplitude (+-10%),
// add white noise at 20 dB SNR and pad 0.25 s of noise-only lead-in/out.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "digitrec/audio_io.hpp"

namespace digitrec {

struct ClassTemplate {
  std::array<double, 3> partial_hz;
  std::array<double, 3> partial_gain;
  double duration_s = 0.5;
  double attack_s = 0.04;
  double release_s = 0.08;
  double tremolo_hz = 0.0;
};

ClassTemplate class_template(int digit);

struct SynthClip {
  AudioClip clip;
  int label = 0;
  std::size_t index = 0;  // position within its class, 0-based
  std::string id;         // e.g. "d3_017"
};

inline constexpr double kSynthSilenceSeconds = 0.25;
inline constexpr double kSynthSnrDb = 20.0;

/// Class-major order: all clips of digit 0, then digit 1, and so on. Each
/// clip draws from its own xorshift stream derived from (seed, digit, index),
/// so the corpus is independent of generation order.
std::vector<SynthClip> synth_corpus(std::uint64_t seed, std::size_t clips_per_class,
                                    int sample_rate_hz = kDefaultSampleRateHz);

/// Even clip indices train, odd ones test.
constexpr bool is_training_clip(std::size_t index) noexcept { return index % 2 == 0; }

}  // namespace digitrec
