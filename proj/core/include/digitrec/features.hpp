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

// MFCC front end: pre-emphasis, framing, Hamming window, DFT magnitude,
// mel filterbank, log compression, DCT-II and assembly of the fixed-length
// network input vector. Formant estimates are available as a side channel.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace digitrec {

struct FeatureConfig {
  std::size_t frame_len_samples = 256;  // 32 ms at 8 kHz
  std::size_t hop_samples = 128;
  double preemphasis_alpha = 0.97;
  std::size_t n_mel_filters = 20;
  std::size_t n_coeffs = 8;
  double fmin_hz = 0.0;
  double fmax_hz = 4000.0;
  std::size_t vector_len = 250;
  double log_floor = 1e-10;
  // Divide assembled cepstra by n_mel_filters (a mean-normalized DCT). Raw
  // cepstra reach the hundreds and saturate sigmoid units initialized in
  // [-1, 1]; scaled values fall roughly within [-9, 1.5].
  bool scale_cepstra = true;
  // Append (f1, f2) in kHz after each frame's cepstra before assembly.
  bool include_formants = false;

  void validate(int sample_rate_hz) const;
  std::size_t values_per_frame() const noexcept {
    return n_coeffs + (include_formants ? 2 : 0);
  }
};

struct Spectrum {
  std::vector<double> magnitudes;  // bins 0..N/2
  double bin_hz = 0.0;
};

struct MelFilterbank {
  std::vector<std::vector<double>> weights;  // n_filters x (N/2 + 1)
  std::vector<std::size_t> center_bins;
  int sample_rate_hz = 0;

  std::size_t filter_count() const noexcept { return weights.size(); }
  std::size_t bin_count() const noexcept { return weights.empty() ? 0 : weights[0].size(); }
};

struct FeatureVector {
  std::vector<double> values;
  std::optional<int> label;
  std::optional<std::string> source_id;
};

struct Formants {
  double f1_hz = 0.0;
  double f2_hz = 0.0;
};

enum class DftPath { Fast, Direct };

std::vector<double> pre_emphasis(std::span<const double> samples, double alpha);

/// Frame i covers [i*hop, i*hop + frame_len); frames start at every hop
/// offset below the signal length, and the tail is zero-padded.
std::vector<std::vector<double>> frame_blocks(std::span<const double> samples,
                                              std::size_t frame_len, std::size_t hop);

/// Symmetric window, w[k] = 0.54 - 0.46 cos(2 pi k / (n - 1)).
std::vector<double> hamming_window(std::size_t n);

bool is_power_of_two(std::size_t n) noexcept;

/// |X[k]| for k = 0..N/2. The fast path is an iterative radix-2 FFT and
/// rejects non-power-of-two lengths with LengthNotSupported.
Spectrum dft_magnitude(std::span<const double> frame, double sample_rate_hz,
                       DftPath path = DftPath::Fast);

/// O'Shaughnessy mel scale, 2595 log10(1 + f/700).
double hz_to_mel(double hz);
double mel_to_hz(double mel);

MelFilterbank build_mel_filterbank(const FeatureConfig& cfg, int sample_rate_hz);

std::vector<double> log_mel_energies(const Spectrum& spectrum, const MelFilterbank& bank,
                                     double log_floor);

/// Unnormalized DCT-II: c[k] = sum_m v[m] cos(pi k (m + 0.5) / M).
std::vector<double> dct_ii(std::span<const double> v, std::size_t n_coeffs);

std::vector<double> mfcc_frame(std::span<const double> frame, const FeatureConfig& cfg,
                               const MelFilterbank& bank);

/// Two lowest-frequency peaks of the 3-bin smoothed magnitude spectrum.
/// Peaks below 1% of the smoothed maximum are ignored; a flat-topped peak
/// is reported at the middle of its plateau.
Formants estimate_formants(const Spectrum& spectrum);

FeatureVector assemble_feature_vector(const std::vector<std::vector<double>>& per_frame,
                                      const FeatureConfig& cfg);

/// Reusable per-configuration state: window, filterbank, twiddles.
class MfccExtractor {
 public:
  MfccExtractor(const FeatureConfig& cfg, int sample_rate_hz);

  struct Result {
    FeatureVector vector;
    std::size_t frame_count = 0;
    std::vector<std::vector<double>> cepstra;  // per frame, n_coeffs each
    std::vector<std::optional<Formants>> formants;
  };

  /// Full chain over a voiced segment. Frames are independent, so callers
  /// may run several extractors (or one shared const extractor) in parallel.
  Result extract(std::span<const double> voiced_samples) const;

  /// Cepstra of one frame that is already frame_len_samples long.
  std::vector<double> cepstra(std::span<const double> frame) const;

  const FeatureConfig& config() const noexcept { return cfg_; }
  const MelFilterbank& filterbank() const noexcept { return bank_; }
  int sample_rate_hz() const noexcept { return sample_rate_hz_; }

 private:
  Spectrum windowed_spectrum(std::span<const double> frame) const;

  FeatureConfig cfg_;
  int sample_rate_hz_;
  std::vector<double> window_;
  MelFilterbank bank_;
};

/// Feature file: header line `MFCCFEAT v1 dims <n> label <digit|?> source <id>`
/// followed by the values, 17 significant digits each.
std::string write_feature_file(const FeatureVector& fv);
FeatureVector read_feature_file(std::string_view text);

}  // namespace digitrec
