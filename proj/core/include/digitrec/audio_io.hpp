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

// WAV / raw PCM decoding and the integer-text voiced-data format.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace digitrec {

inline constexpr int kDefaultSampleRateHz = 8000;

/// Mono waveform normalized to [-1, 1).
struct AudioClip {
  std::vector<double> samples;
  int sample_rate_hz = kDefaultSampleRateHz;

  std::size_t size() const noexcept { return samples.size(); }
  double duration_seconds() const noexcept {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

/// Walk the RIFF chunk list and honour the `fmt ` chunk.
struct RiffChunks {};

/// Drop a fixed-size header and read the rest as 8-bit unsigned mono PCM.
/// This is how some recorder software of the era was handled (58 bytes).
struct LegacySkip {
  std::size_t header_bytes = 58;
  int sample_rate_hz = kDefaultSampleRateHz;
};

using WavParseMode = std::variant<RiffChunks, LegacySkip>;

AudioClip parse_wav(std::span<const std::uint8_t> bytes,
                    const WavParseMode& mode = RiffChunks{});

/// (raw - 128) / 128.
constexpr double decode_pcm8(std::uint8_t raw) noexcept {
  return (static_cast<double>(raw) - 128.0) / 128.0;
}

/// Inverse of decode_pcm8, rounded to nearest and clamped to [0, 255].
std::uint8_t encode_pcm8(double sample) noexcept;

AudioClip read_voiced_text(std::string_view text);
std::string write_voiced_text(const AudioClip& clip);

/// Canonical 44-byte RIFF/WAVE, PCM tag 1, mono, 8-bit unsigned.
std::vector<std::uint8_t> write_wav_pcm8(const AudioClip& clip);

std::vector<std::uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, std::span<const std::uint8_t> bytes);
std::string read_file_text(const std::string& path);
void write_file_text(const std::string& path, std::string_view text);

}  // namespace digitrec
