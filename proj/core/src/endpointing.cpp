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

#include "digitrec/endpointing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "digitrec/error.hpp"

namespace digitrec {
namespace {

std::size_t frame_samples(const AudioClip& clip, double frame_ms) {
  if (clip.samples.empty()) fail(ErrorCode::EmptyPayload, "clip has no samples");
  if (!(frame_ms > 0.0) || clip.sample_rate_hz <= 0)
    fail(ErrorCode::ConfigError, "frame length and sample rate must be positive");
  const double n = std::round(frame_ms * clip.sample_rate_hz / 1000.0);
  if (n < 1.0) fail(ErrorCode::ConfigError, "analysis frame shorter than one sample");
  return static_cast<std::size_t>(n);
}

struct Stats {
  double mean = 0.0;
  double stddev = 0.0;
};

Stats stats_of(const std::vector<double>& v, std::size_t count) {
  Stats s;
  for (std::size_t i = 0; i < count; ++i) s.mean += v[i];
  s.mean /= static_cast<double>(count);
  double var = 0.0;
  for (std::size_t i = 0; i < count; ++i) var += (v[i] - s.mean) * (v[i] - s.mean);
  s.stddev = std::sqrt(var / static_cast<double>(count));
  return s;
}

std::size_t frames_for(double ms, double frame_ms) {
  return static_cast<std::size_t>(std::max(1.0, std::round(ms / frame_ms)));
}

}  // namespace

void EndpointParams::validate() const {
  if (!(analysis_frame_ms > 0 && energy_k > 0 && zcr_k > 0 && noise_window_ms > 0 &&
        zcr_extension_ms > 0 && min_voiced_ms > 0))
    fail(ErrorCode::ConfigError, "endpoint parameters must all be positive");
}

std::vector<double> short_time_energy(const AudioClip& clip, double frame_ms) {
  const std::size_t len = frame_samples(clip, frame_ms);
  const std::size_t n = clip.samples.size();
  std::vector<double> energy;
  energy.reserve((n + len - 1) / len);
  for (std::size_t start = 0; start < n; start += len) {
    const std::size_t stop = std::min(n, start + len);
    double e = 0.0;
    for (std::size_t i = start; i < stop; ++i) e += clip.samples[i] * clip.samples[i];
    energy.push_back(e);
  }
  return energy;
}

std::vector<double> zero_crossing_rate(const AudioClip& clip, double frame_ms) {
  const std::size_t len = frame_samples(clip, frame_ms);
  const std::size_t n = clip.samples.size();
  std::vector<double> zcr;
  zcr.reserve((n + len - 1) / len);
  for (std::size_t start = 0; start < n; start += len) {
    const std::size_t stop = std::min(n, start + len);
    std::size_t crossings = 0;
    for (std::size_t i = start + 1; i < stop; ++i)
      if ((clip.samples[i - 1] < 0.0) != (clip.samples[i] < 0.0)) ++crossings;
    const std::size_t pairs = stop - start - 1;
    zcr.push_back(pairs == 0 ? 0.0 : static_cast<double>(crossings) / pairs);
  }
  return zcr;
}

VoicedSegment detect_endpoints(const AudioClip& clip, const EndpointParams& params) {
  params.validate();
  const std::size_t len = frame_samples(clip, params.analysis_frame_ms);
  const double duration_ms = 1000.0 * clip.duration_seconds();
  if (duration_ms <= params.noise_window_ms)
    fail(ErrorCode::ClipTooShort, "clip (" + std::to_string(duration_ms) +
                                      " ms) not longer than the noise window");

  const auto energy = short_time_energy(clip, params.analysis_frame_ms);
  const auto zcr = zero_crossing_rate(clip, params.analysis_frame_ms);
  const std::size_t frames = energy.size();
  const std::size_t noise_frames = frames_for(params.noise_window_ms, params.analysis_frame_ms);
  if (noise_frames >= frames)
    fail(ErrorCode::ClipTooShort, "noise window covers the whole clip");

  const Stats e_stats = stats_of(energy, noise_frames);
  const Stats z_stats = stats_of(zcr, noise_frames);
  const double energy_threshold = e_stats.mean + params.energy_k * e_stats.stddev;
  const double zcr_threshold = z_stats.mean + params.zcr_k * z_stats.stddev;
  const std::size_t min_run = frames_for(params.min_voiced_ms, params.analysis_frame_ms);

  // Longest run above the energy threshold; earliest wins ties.
  std::size_t best_start = 0, best_len = 0;
  for (std::size_t i = 0; i < frames;) {
    if (!(energy[i] > energy_threshold)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < frames && energy[j] > energy_threshold) ++j;
    if (j - i > best_len) {
      best_start = i;
      best_len = j - i;
    }
    i = j;
  }
  if (best_len < min_run)
    fail(ErrorCode::NoVoicedData, "no frame run exceeds the energy threshold");

  const std::size_t max_ext = frames_for(params.zcr_extension_ms, params.analysis_frame_ms);
  std::size_t first = best_start;
  std::size_t last = best_start + best_len - 1;
  for (std::size_t ext = 0; ext < max_ext && first > 0 && zcr[first - 1] > zcr_threshold; ++ext)
    --first;
  for (std::size_t ext = 0; ext < max_ext && last + 1 < frames && zcr[last + 1] > zcr_threshold;
       ++ext)
    ++last;

  return {first * len, std::min(clip.samples.size(), (last + 1) * len)};
}

AudioClip slice(const AudioClip& clip, const VoicedSegment& segment) {
  if (segment.start_sample >= segment.end_sample || segment.end_sample > clip.samples.size())
    fail(ErrorCode::IndexError, "segment outside clip");
  AudioClip out;
  out.sample_rate_hz = clip.sample_rate_hz;
  out.samples.assign(clip.samples.begin() + static_cast<std::ptrdiff_t>(segment.start_sample),
                     clip.samples.begin() + static_cast<std::ptrdiff_t>(segment.end_sample));
  return out;
}

}  // namespace digitrec
