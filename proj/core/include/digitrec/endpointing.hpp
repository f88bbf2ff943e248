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

// Start/end-point detection of a single word in a silence-speech-silence clip.
//
// Short-time energy locates the voiced core; zero-crossing rate extends it
// outward to pick up low-energy unvoiced onsets and codas. Noise statistics
// come from the leading window, which is silence by recording protocol.

#include <cstddef>
#include <vector>

#include "digitrec/audio_io.hpp"

namespace digitrec {

/// Half-open sample range [start_sample, end_sample).
struct VoicedSegment {
  std::size_t start_sample = 0;
  std::size_t end_sample = 0;

  std::size_t length() const noexcept { return end_sample - start_sample; }
};

struct EndpointParams {
  double analysis_frame_ms = 10.0;
  double energy_k = 3.0;
  double zcr_k = 2.0;
  double noise_window_ms = 100.0;
  double zcr_extension_ms = 250.0;
  // High-energy runs shorter than this are treated as clicks, not speech.
  double min_voiced_ms = 40.0;

  void validate() const;
};

std::vector<double> short_time_energy(const AudioClip& clip, double frame_ms);
std::vector<double> zero_crossing_rate(const AudioClip& clip, double frame_ms);

VoicedSegment detect_endpoints(const AudioClip& clip, const EndpointParams& params = {});

/// Copy of the samples inside `segment`, same sample rate.
AudioClip slice(const AudioClip& clip, const VoicedSegment& segment);

}  // namespace digitrec
