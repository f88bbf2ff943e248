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

#include "digitrec/audio_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "digitrec/error.hpp"

namespace digitrec {
namespace {

constexpr std::uint16_t kFormatPcm = 1;

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) |
         (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
  return std::memcmp(b.data() + at, tag, 4) == 0;
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8)
    out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

struct PcmFormat {
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
};

AudioClip decode_payload(std::span<const std::uint8_t> payload,
                         const PcmFormat& fmt) {
  const std::size_t bytes_per_sample = fmt.bits / 8;
  const std::size_t block = bytes_per_sample * fmt.channels;
  const std::size_t frames = payload.size() / block;
  if (frames == 0) fail(ErrorCode::EmptyPayload, "no complete sample frames in data chunk");

  AudioClip clip;
  clip.sample_rate_hz = static_cast<int>(fmt.sample_rate);
  clip.samples.resize(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    double acc = 0.0;
    for (std::size_t c = 0; c < fmt.channels; ++c) {
      const std::size_t at = f * block + c * bytes_per_sample;
      if (fmt.bits == 8) {
        acc += decode_pcm8(payload[at]);
      } else {
        const auto raw = static_cast<std::int16_t>(read_u16(payload, at));
        acc += static_cast<double>(raw) / 32768.0;
      }
    }
    clip.samples[f] = acc / fmt.channels;
  }
  return clip;
}

AudioClip parse_riff(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE"))
    fail(ErrorCode::MalformedContainer, "missing RIFF/WAVE magic");

  PcmFormat fmt;
  bool have_fmt = false;
  std::span<const std::uint8_t> payload;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos < bytes.size()) {
    if (bytes.size() - pos < 8) fail(ErrorCode::TruncatedFile, "incomplete chunk header");
    const std::uint32_t size = read_u32(bytes, pos + 4);
    const std::size_t body = pos + 8;
    const std::size_t available = bytes.size() - body;

    if (tag_is(bytes, pos, "fmt ")) {
      if (size < 16 || available < 16) fail(ErrorCode::TruncatedFile, "fmt chunk too short");
      const std::uint16_t tag = read_u16(bytes, body);
      if (tag != kFormatPcm)
        fail(ErrorCode::UnsupportedEncoding, "format tag " + std::to_string(tag) + " is not PCM");
      fmt.channels = read_u16(bytes, body + 2);
      fmt.sample_rate = read_u32(bytes, body + 4);
      fmt.bits = read_u16(bytes, body + 14);
      if (fmt.channels == 0 || fmt.sample_rate == 0)
        fail(ErrorCode::MalformedContainer, "fmt chunk declares zero channels or rate");
      if (fmt.bits != 8 && fmt.bits != 16)
        fail(ErrorCode::UnsupportedEncoding,
             std::to_string(fmt.bits) + "-bit PCM is not supported");
      have_fmt = true;
    } else if (tag_is(bytes, pos, "data")) {
      if (size > available) fail(ErrorCode::TruncatedFile, "data chunk extends past end of file");
      payload = bytes.subspan(body, size);
      have_data = true;
      if (have_fmt) break;
    }
    if (size > available) fail(ErrorCode::TruncatedFile, "chunk extends past end of file");
    pos = body + size + (size & 1u);
  }

  if (!have_fmt) fail(ErrorCode::MalformedContainer, "no fmt chunk");
  if (!have_data) fail(ErrorCode::MalformedContainer, "no data chunk");
  if (payload.empty()) fail(ErrorCode::EmptyPayload, "data chunk is empty");
  return decode_payload(payload, fmt);
}

AudioClip parse_legacy(std::span<const std::uint8_t> bytes, const LegacySkip& mode) {
  if (bytes.size() < mode.header_bytes)
    fail(ErrorCode::TruncatedFile, "file shorter than the " +
                                       std::to_string(mode.header_bytes) + "-byte header");
  if (bytes.size() == mode.header_bytes) fail(ErrorCode::EmptyPayload, "no bytes after header");
  if (mode.sample_rate_hz <= 0) fail(ErrorCode::ConfigError, "sample rate must be positive");
  PcmFormat fmt{1, static_cast<std::uint32_t>(mode.sample_rate_hz), 8};
  return decode_payload(bytes.subspan(mode.header_bytes), fmt);
}

}  // namespace

AudioClip parse_wav(std::span<const std::uint8_t> bytes, const WavParseMode& mode) {
  if (bytes.empty()) fail(ErrorCode::EmptyPayload, "empty input");
  return std::visit(
      [&](const auto& m) -> AudioClip {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, RiffChunks>)
          return parse_riff(bytes);
        else
          return parse_legacy(bytes, m);
      },
      mode);
}

std::uint8_t encode_pcm8(double sample) noexcept {
  const double scaled = std::round(sample * 128.0) + 128.0;
  return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
}

AudioClip read_voiced_text(std::string_view text) {
  AudioClip clip;
  std::size_t pos = 0;
  const auto is_space = [](char c) {
    return c == ' ' || c == '\n' || c == '\r' || c == '\t' || c == '\v' || c == '\f';
  };
  while (pos < text.size()) {
    while (pos < text.size() && is_space(text[pos])) ++pos;
    if (pos == text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !is_space(text[end])) ++end;
    const std::string_view token = text.substr(pos, end - pos);

    long value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec == std::errc::result_out_of_range)
      fail(ErrorCode::RangeError, "value '" + std::string(token) + "' outside [0,255]");
    if (ec != std::errc() || ptr != token.data() + token.size())
      fail(ErrorCode::ParseError, "not an integer: '" + std::string(token) + "'");
    if (value < 0 || value > 255)
      fail(ErrorCode::RangeError, "value " + std::to_string(value) + " outside [0,255]");
    clip.samples.push_back(decode_pcm8(static_cast<std::uint8_t>(value)));
    pos = end;
  }
  if (clip.samples.empty()) fail(ErrorCode::EmptyPayload, "no samples in voiced-text data");
  return clip;
}

std::string write_voiced_text(const AudioClip& clip) {
  std::string out;
  out.reserve(clip.samples.size() * 4);
  for (double s : clip.samples) {
    out += std::to_string(encode_pcm8(s));
    out += '\n';
  }
  return out;
}

std::vector<std::uint8_t> write_wav_pcm8(const AudioClip& clip) {
  const auto n = static_cast<std::uint32_t>(clip.samples.size());
  const auto rate = static_cast<std::uint32_t>(clip.sample_rate_hz);
  std::vector<std::uint8_t> out;
  out.reserve(44 + n + 1);
  put_tag(out, "RIFF");
  put_u32(out, 36 + n + (n & 1u));
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);      // channels
  put_u32(out, rate);
  put_u32(out, rate);   // byte rate
  put_u16(out, 1);      // block align
  put_u16(out, 8);
  put_tag(out, "data");
  put_u32(out, n);
  for (double s : clip.samples) out.push_back(encode_pcm8(s));
  if (n & 1u) out.push_back(0);
  return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::IoError, "write failed for '" + path + "'");
}

std::string read_file_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_text(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot write '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) fail(ErrorCode::IoError, "write failed for '" + path + "'");
}

}  // namespace digitrec
