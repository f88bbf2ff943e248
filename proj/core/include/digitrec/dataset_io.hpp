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

// Manifests, input sniffing and the clip -> feature-vector composition.

#include <optional>
#include <string>
#include <vector>

#include "digitrec/audio_io.hpp"
#include "digitrec/endpointing.hpp"
#include "digitrec/features.hpp"
#include "digitrec/pipeline.hpp"

namespace digitrec {

struct ExtractionOptions {
  WavParseMode wav_mode = RiffChunks{};
  EndpointParams endpoint;
  FeatureConfig features;
};

struct ExtractionResult {
  FeatureVector vector;
  VoicedSegment segment;
  std::size_t frame_count = 0;
  double voiced_seconds = 0.0;
  double min_value = 0.0;
  double max_value = 0.0;
  std::vector<std::optional<Formants>> formants;
};

/// Endpoint detection (when `detect` is set) followed by the MFCC chain.
ExtractionResult extract_from_clip(const AudioClip& clip, const ExtractionOptions& options,
                                   bool detect = true);

enum class InputKind { Wav, VoicedText, FeatureFile };

/// RIFF magic or a .wav extension means WAV; an MFCCFEAT first line means a
/// feature file; anything else is read as voiced-text integers.
InputKind sniff_input(const std::string& path, std::span<const std::uint8_t> head);

/// WAVs run the full chain, voiced-text files skip endpoint detection (they
/// already hold the voiced segment), feature files load as-is.
FeatureVector load_feature_input(const std::string& path, const ExtractionOptions& options);

struct ManifestEntry {
  std::string path;
  int label = 0;
};

/// Either a manifest file of `<path> <label>` lines (paths relative to the
/// manifest's directory, blank and '#' lines ignored) or a directory with
/// subdirectories 0..9 whose regular files are taken in name order.
std::vector<ManifestEntry> read_manifest(const std::string& path);
std::string format_manifest(const std::vector<ManifestEntry>& entries);

struct LoadFailure {
  std::string path;
  std::string message;
};

struct DatasetLoad {
  Dataset data;
  std::vector<LoadFailure> failures;
};

/// Loads every entry it can; failures are collected rather than thrown.
DatasetLoad load_dataset(const std::vector<ManifestEntry>& entries,
                         const ExtractionOptions& options);

}  // namespace digitrec
