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

#include "digitrec/dataset_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <sstream>

#include "digitrec/error.hpp"

namespace digitrec {

namespace fs = std::filesystem;

ExtractionResult extract_from_clip(const AudioClip& clip, const ExtractionOptions& options,
                                   bool detect) {
  if (clip.samples.empty()) fail(ErrorCode::EmptyPayload, "clip has no samples");
  ExtractionResult r;
  r.segment = detect ? detect_endpoints(clip, options.endpoint)
                     : VoicedSegment{0, clip.samples.size()};
  const AudioClip voiced = slice(clip, r.segment);
  r.voiced_seconds = voiced.duration_seconds();

  const MfccExtractor extractor(options.features, clip.sample_rate_hz);
  auto m = extractor.extract(voiced.samples);
  r.frame_count = m.frame_count;
  r.formants = std::move(m.formants);
  r.vector = std::move(m.vector);
  const auto [lo, hi] = std::minmax_element(r.vector.values.begin(), r.vector.values.end());
  r.min_value = *lo;
  r.max_value = *hi;
  for (double v : r.vector.values)
    if (!std::isfinite(v)) fail(ErrorCode::RangeError, "non-finite feature value");
  return r;
}

InputKind sniff_input(const std::string& path, std::span<const std::uint8_t> head) {
  if (head.size() >= 4 && std::memcmp(head.data(), "RIFF", 4) == 0) return InputKind::Wav;
  if (head.size() >= 8 && std::memcmp(head.data(), "MFCCFEAT", 8) == 0)
    return InputKind::FeatureFile;
  std::string ext = fs::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".wav") return InputKind::Wav;
  return InputKind::VoicedText;
}

FeatureVector load_feature_input(const std::string& path, const ExtractionOptions& options) {
  const auto bytes = read_file_bytes(path);
  const std::string id = fs::path(path).filename().string();
  switch (sniff_input(path, bytes)) {
    case InputKind::FeatureFile: {
      auto fv = read_feature_file(
          std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
      if (!fv.source_id) fv.source_id = id;
      return fv;
    }
    case InputKind::Wav: {
      auto r = extract_from_clip(parse_wav(bytes, options.wav_mode), options, true);
      r.vector.source_id = id;
      return std::move(r.vector);
    }
    case InputKind::VoicedText: {
      const auto clip = read_voiced_text(
          std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
      auto r = extract_from_clip(clip, options, false);
      r.vector.source_id = id;
      return std::move(r.vector);
    }
  }
  fail(ErrorCode::FormatError, "unrecognized input '" + path + "'");
}

std::vector<ManifestEntry> read_manifest(const std::string& path) {
  std::vector<ManifestEntry> entries;
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    for (int d = 0; d < static_cast<int>(kDigitClasses); ++d) {
      const fs::path sub = fs::path(path) / std::to_string(d);
      if (!fs::is_directory(sub, ec)) continue;
      std::vector<std::string> files;
      for (const auto& e : fs::directory_iterator(sub))
        if (e.is_regular_file()) files.push_back(e.path().string());
      std::sort(files.begin(), files.end());
      for (auto& f : files) entries.push_back({std::move(f), d});
    }
    return entries;
  }

  const std::string text = read_file_text(path);
  const fs::path base = fs::path(path).parent_path();
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto split = line.find_last_of(" \t");
    if (split == std::string::npos || split < first)
      fail(ErrorCode::ParseError, path + ":" + std::to_string(line_no) + ": expected '<path> <label>'");
    const std::string label_text = line.substr(split + 1);
    std::string item = line.substr(first, split - first);
    while (!item.empty() && (item.back() == ' ' || item.back() == '\t')) item.pop_back();
    int label = -1;
    const auto [ptr, err] =
        std::from_chars(label_text.data(), label_text.data() + label_text.size(), label);
    if (err != std::errc() || ptr != label_text.data() + label_text.size() || label < 0 ||
        label >= static_cast<int>(kDigitClasses))
      fail(ErrorCode::ParseError,
           path + ":" + std::to_string(line_no) + ": bad label '" + label_text + "'");
    fs::path p(item);
    if (p.is_relative()) p = base / p;
    entries.push_back({p.string(), label});
  }
  return entries;
}

std::string format_manifest(const std::vector<ManifestEntry>& entries) {
  std::string out;
  for (const auto& e : entries) out += e.path + " " + std::to_string(e.label) + "\n";
  return out;
}

DatasetLoad load_dataset(const std::vector<ManifestEntry>& entries,
                         const ExtractionOptions& options) {
  DatasetLoad load;
  load.data.items.reserve(entries.size());
  for (const auto& e : entries) {
    try {
      auto fv = load_feature_input(e.path, options);
      fv.label = e.label;
      load.data.items.push_back(std::move(fv));
    } catch (const Error& err) {
      load.failures.push_back({e.path, err.what()});
    }
  }
  return load;
}

}  // namespace digitrec
