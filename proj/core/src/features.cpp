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

#include "digitrec/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "digitrec/error.hpp"

namespace digitrec {
namespace {

using cd = std::complex<double>;

void fft_in_place(std::vector<cd>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  // Twiddles are evaluated directly rather than by repeated multiplication
  // so the error does not accumulate across a stage.
  std::vector<cd> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    twiddle[k] = {std::cos(angle), std::sin(angle)};
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const cd u = a[i + j];
        const cd v = a[i + j + half] * twiddle[j * step];
        a[i + j] = u + v;
        a[i + j + half] = u - v;
      }
    }
  }
}

std::vector<double> flatten(const std::vector<std::vector<double>>& rows) {
  std::vector<double> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return flat;
}

std::string sanitize_id(std::string_view id) {
  std::string out(id);
  for (char& c : out)
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') c = '_';
  return out.empty() ? "?" : out;
}

}  // namespace

void FeatureConfig::validate(int sample_rate_hz) const {
  const auto bad = [](const std::string& what) { fail(ErrorCode::ConfigError, what); };
  if (sample_rate_hz <= 0) bad("sample rate must be positive");
  if (frame_len_samples < 2) bad("frame length must be at least 2 samples");
  if (hop_samples < 1 || hop_samples > frame_len_samples) bad("hop must be in [1, frame_len]");
  if (!(preemphasis_alpha >= 0.0 && preemphasis_alpha < 1.0)) bad("pre-emphasis alpha must be in [0,1)");
  if (n_mel_filters < 1) bad("need at least one mel filter");
  if (n_coeffs < 1 || n_coeffs > n_mel_filters) bad("n_coeffs must be in [1, n_mel_filters]");
  if (!(fmin_hz >= 0.0) || !(fmax_hz > fmin_hz)) bad("need 0 <= fmin < fmax");
  if (fmax_hz > sample_rate_hz / 2.0) bad("fmax exceeds the Nyquist frequency");
  if (vector_len < 1) bad("vector length must be positive");
  if (!(log_floor > 0.0)) bad("log floor must be positive");
}

std::vector<double> pre_emphasis(std::span<const double> samples, double alpha) {
  if (samples.empty()) fail(ErrorCode::EmptyPayload, "no samples to pre-emphasize");
  std::vector<double> out(samples.size());
  out[0] = samples[0];
  for (std::size_t n = 1; n < samples.size(); ++n) out[n] = samples[n] - alpha * samples[n - 1];
  return out;
}

std::vector<std::vector<double>> frame_blocks(std::span<const double> samples,
                                              std::size_t frame_len, std::size_t hop) {
  if (frame_len < 1 || hop < 1 || hop > frame_len)
    fail(ErrorCode::ConfigError, "need frame_len >= 1 and 1 <= hop <= frame_len");
  const std::size_t count = samples.empty() ? 1 : (samples.size() + hop - 1) / hop;
  std::vector<std::vector<double>> frames(count, std::vector<double>(frame_len, 0.0));
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t start = i * hop;
    const std::size_t stop = std::min(samples.size(), start + frame_len);
    for (std::size_t k = start; k < stop; ++k) frames[i][k - start] = samples[k];
  }
  return frames;
}

std::vector<double> hamming_window(std::size_t n) {
  if (n < 2) fail(ErrorCode::ConfigError, "Hamming window needs n >= 2");
  std::vector<double> w(n);
  const double denom = static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k)
    w[k] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / denom);
  // cos(2 pi) is not exactly 1 in floating point; pin the symmetric pair.
  for (std::size_t k = 0; k < n / 2; ++k) w[n - 1 - k] = w[k];
  return w;
}

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

Spectrum dft_magnitude(std::span<const double> frame, double sample_rate_hz, DftPath path) {
  const std::size_t n = frame.size();
  if (n < 2) fail(ErrorCode::LengthNotSupported, "DFT needs at least 2 samples");
  Spectrum spec;
  spec.bin_hz = sample_rate_hz / static_cast<double>(n);
  spec.magnitudes.resize(n / 2 + 1);

  if (path == DftPath::Fast) {
    if (!is_power_of_two(n))
      fail(ErrorCode::LengthNotSupported, "fast DFT needs a power-of-two length, got " +
                                              std::to_string(n));
    std::vector<cd> a(frame.begin(), frame.end());
    fft_in_place(a);
    for (std::size_t k = 0; k <= n / 2; ++k) spec.magnitudes[k] = std::abs(a[k]);
    return spec;
  }

  for (std::size_t k = 0; k <= n / 2; ++k) {
    double re = 0.0, im = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double angle =
          -2.0 * std::numbers::pi * static_cast<double>((k * t) % n) / static_cast<double>(n);
      re += frame[t] * std::cos(angle);
      im += frame[t] * std::sin(angle);
    }
    spec.magnitudes[k] = std::hypot(re, im);
  }
  return spec;
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

MelFilterbank build_mel_filterbank(const FeatureConfig& cfg, int sample_rate_hz) {
  cfg.validate(sample_rate_hz);
  const std::size_t n_bins = cfg.frame_len_samples / 2 + 1;
  const double bin_hz = static_cast<double>(sample_rate_hz) / cfg.frame_len_samples;
  const std::size_t n_edges = cfg.n_mel_filters + 2;
  const double mel_lo = hz_to_mel(cfg.fmin_hz);
  const double mel_hi = hz_to_mel(cfg.fmax_hz);

  std::vector<std::size_t> edge_bins(n_edges);
  for (std::size_t i = 0; i < n_edges; ++i) {
    const double mel = mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) / (n_edges - 1);
    const double bin = std::round(mel_to_hz(mel) / bin_hz);
    edge_bins[i] = std::min(n_bins - 1, static_cast<std::size_t>(std::max(0.0, bin)));
    if (i > 0 && edge_bins[i] <= edge_bins[i - 1])
      fail(ErrorCode::ConfigError,
           std::to_string(cfg.n_mel_filters) + " mel filters is too many for a " +
               std::to_string(cfg.frame_len_samples) + "-point transform (duplicate bins)");
  }

  MelFilterbank bank;
  bank.sample_rate_hz = sample_rate_hz;
  bank.weights.assign(cfg.n_mel_filters, std::vector<double>(n_bins, 0.0));
  bank.center_bins.resize(cfg.n_mel_filters);
  for (std::size_t j = 0; j < cfg.n_mel_filters; ++j) {
    const std::size_t lo = edge_bins[j], mid = edge_bins[j + 1], hi = edge_bins[j + 2];
    bank.center_bins[j] = mid;
    auto& row = bank.weights[j];
    for (std::size_t k = lo; k <= mid; ++k)
      row[k] = static_cast<double>(k - lo) / static_cast<double>(mid - lo);
    for (std::size_t k = mid; k <= hi; ++k)
      row[k] = static_cast<double>(hi - k) / static_cast<double>(hi - mid);
  }
  return bank;
}

std::vector<double> log_mel_energies(const Spectrum& spectrum, const MelFilterbank& bank,
                                     double log_floor) {
  if (bank.bin_count() != spectrum.magnitudes.size())
    fail(ErrorCode::DimensionMismatch,
         "filterbank has " + std::to_string(bank.bin_count()) + " bins, spectrum has " +
             std::to_string(spectrum.magnitudes.size()));
  std::vector<double> e(bank.filter_count());
  for (std::size_t j = 0; j < e.size(); ++j) {
    double acc = 0.0;
    const auto& row = bank.weights[j];
    for (std::size_t k = 0; k < row.size(); ++k)
      acc += row[k] * spectrum.magnitudes[k] * spectrum.magnitudes[k];
    e[j] = std::log(std::max(acc, log_floor));
  }
  return e;
}

std::vector<double> dct_ii(std::span<const double> v, std::size_t n_coeffs) {
  const std::size_t m = v.size();
  if (n_coeffs < 1 || n_coeffs > m)
    fail(ErrorCode::DimensionMismatch, "n_coeffs must be in [1, " + std::to_string(m) + "]");
  std::vector<double> c(n_coeffs, 0.0);
  for (std::size_t k = 0; k < n_coeffs; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      acc += v[i] * std::cos(std::numbers::pi * static_cast<double>(k) *
                             (static_cast<double>(i) + 0.5) / static_cast<double>(m));
    c[k] = acc;
  }
  return c;
}

std::vector<double> mfcc_frame(std::span<const double> frame, const FeatureConfig& cfg,
                               const MelFilterbank& bank) {
  if (frame.size() != cfg.frame_len_samples)
    fail(ErrorCode::DimensionMismatch, "frame has " + std::to_string(frame.size()) +
                                           " samples, expected " +
                                           std::to_string(cfg.frame_len_samples));
  const auto window = hamming_window(frame.size());
  std::vector<double> windowed(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) windowed[i] = frame[i] * window[i];
  const auto path = is_power_of_two(frame.size()) ? DftPath::Fast : DftPath::Direct;
  const Spectrum spec = dft_magnitude(windowed, bank.sample_rate_hz, path);
  return dct_ii(log_mel_energies(spec, bank, cfg.log_floor), cfg.n_coeffs);
}

Formants estimate_formants(const Spectrum& spectrum) {
  const auto& m = spectrum.magnitudes;
  const std::size_t n = m.size();
  if (n < 5) fail(ErrorCode::DimensionMismatch, "formant search needs at least 5 bins");

  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = std::min(n - 1, i + 1);
    double acc = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) acc += m[k];
    s[i] = acc / static_cast<double>(hi - lo + 1);
  }
  const double floor = 0.01 * *std::max_element(s.begin(), s.end());

  std::vector<double> peaks;
  for (std::size_t i = 1; i + 1 < n && peaks.size() < 2;) {
    if (!(s[i] > s[i - 1])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && s[j + 1] == s[i]) ++j;
    if (j + 1 < n && s[j + 1] < s[i] && s[i] > floor && s[i] > 0.0)
      peaks.push_back(0.5 * static_cast<double>(i + j) * spectrum.bin_hz);
    i = j + 1;
  }
  if (peaks.size() < 2) fail(ErrorCode::NoPeaks, "fewer than two spectral peaks");
  return {peaks[0], peaks[1]};
}

FeatureVector assemble_feature_vector(const std::vector<std::vector<double>>& per_frame,
                                      const FeatureConfig& cfg) {
  if (per_frame.empty()) fail(ErrorCode::EmptyPayload, "no frames to assemble");
  const auto flat = flatten(per_frame);
  const std::size_t target = cfg.vector_len;
  FeatureVector fv;
  if (flat.size() >= target) {
    const std::size_t head = (flat.size() - target) / 2;
    fv.values.assign(flat.begin() + static_cast<std::ptrdiff_t>(head),
                     flat.begin() + static_cast<std::ptrdiff_t>(head + target));
  } else {
    fv.values = flat;
    fv.values.resize(target, 0.0);
  }
  return fv;
}

MfccExtractor::MfccExtractor(const FeatureConfig& cfg, int sample_rate_hz)
    : cfg_(cfg),
      sample_rate_hz_(sample_rate_hz),
      window_(hamming_window(cfg.frame_len_samples)),
      bank_(build_mel_filterbank(cfg, sample_rate_hz)) {}

Spectrum MfccExtractor::windowed_spectrum(std::span<const double> frame) const {
  if (frame.size() != cfg_.frame_len_samples)
    fail(ErrorCode::DimensionMismatch, "frame length mismatch");
  std::vector<double> windowed(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) windowed[i] = frame[i] * window_[i];
  const auto path = is_power_of_two(frame.size()) ? DftPath::Fast : DftPath::Direct;
  return dft_magnitude(windowed, sample_rate_hz_, path);
}

std::vector<double> MfccExtractor::cepstra(std::span<const double> frame) const {
  return dct_ii(log_mel_energies(windowed_spectrum(frame), bank_, cfg_.log_floor),
                cfg_.n_coeffs);
}

MfccExtractor::Result MfccExtractor::extract(std::span<const double> voiced_samples) const {
  const auto emphasized = pre_emphasis(voiced_samples, cfg_.preemphasis_alpha);
  const auto frames = frame_blocks(emphasized, cfg_.frame_len_samples, cfg_.hop_samples);

  Result r;
  r.frame_count = frames.size();
  r.cepstra.reserve(frames.size());
  r.formants.reserve(frames.size());
  std::vector<std::vector<double>> per_frame;
  per_frame.reserve(frames.size());
  for (const auto& frame : frames) {
    const Spectrum spec = windowed_spectrum(frame);
    auto c = dct_ii(log_mel_energies(spec, bank_, cfg_.log_floor), cfg_.n_coeffs);
    std::optional<Formants> fm;
    try {
      fm = estimate_formants(spec);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoPeaks) throw;
    }
    auto values = c;
    if (cfg_.scale_cepstra)
      for (double& v : values) v /= static_cast<double>(cfg_.n_mel_filters);
    if (cfg_.include_formants) {
      values.push_back(fm ? fm->f1_hz / 1000.0 : 0.0);
      values.push_back(fm ? fm->f2_hz / 1000.0 : 0.0);
    }
    r.cepstra.push_back(std::move(c));
    r.formants.push_back(fm);
    per_frame.push_back(std::move(values));
  }
  r.vector = assemble_feature_vector(per_frame, cfg_);
  return r;
}

std::string write_feature_file(const FeatureVector& fv) {
  std::string out = "MFCCFEAT v1 dims " + std::to_string(fv.values.size()) + " label " +
                    (fv.label ? std::to_string(*fv.label) : std::string("?")) + " source " +
                    sanitize_id(fv.source_id.value_or("?")) + "\n";
  char buf[32];
  for (std::size_t i = 0; i < fv.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", fv.values[i]);
    out += buf;
    out += (i % 8 == 7 || i + 1 == fv.values.size()) ? '\n' : ' ';
  }
  return out;
}

FeatureVector read_feature_file(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string magic, version, dims_kw, label_kw, label, source_kw, source;
  std::size_t dims = 0;
  if (!(in >> magic >> version) || magic != "MFCCFEAT")
    fail(ErrorCode::FormatError, "missing MFCCFEAT magic");
  if (version != "v1") fail(ErrorCode::FormatError, "unsupported feature file version " + version);
  if (!(in >> dims_kw >> dims >> label_kw >> label >> source_kw >> source) || dims_kw != "dims" ||
      label_kw != "label" || source_kw != "source")
    fail(ErrorCode::FormatError, "malformed feature file header");

  FeatureVector fv;
  if (label != "?") {
    int value = -1;
    const auto [ptr, ec] = std::from_chars(label.data(), label.data() + label.size(), value);
    if (ec != std::errc() || ptr != label.data() + label.size() || value < 0 || value > 9)
      fail(ErrorCode::FormatError, "label must be a digit or '?', got '" + label + "'");
    fv.label = value;
  }
  if (source != "?") fv.source_id = source;

  fv.values.reserve(dims);
  std::string token;
  while (in >> token) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v))
      fail(ErrorCode::FormatError, "bad feature value '" + token + "'");
    fv.values.push_back(v);
  }
  if (fv.values.size() != dims)
    fail(ErrorCode::DimensionMismatch, "header declares " + std::to_string(dims) +
                                           " values, file holds " +
                                           std::to_string(fv.values.size()));
  return fv;
}

}  // namespace digitrec
