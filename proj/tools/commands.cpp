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

#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <numeric>
#include <ostream>

#include "digitrec/audio_io.hpp"
#include "digitrec/error.hpp"
#include "digitrec/model_io.hpp"
#include "digitrec/synth.hpp"

namespace digitrec::cli {
namespace fs = std::filesystem;

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

void report_failure(std::ostream& err, const std::string& path, const std::exception& e) {
  err << "error " << path << " " << e.what() << "\n";
}

void report_failures(std::ostream& err, const std::vector<LoadFailure>& failures) {
  for (const auto& f : failures) err << "error " << f.path << " " << f.message << "\n";
  if (!failures.empty()) err << failures.size() << " file(s) failed\n";
}

std::string extract_one(const std::string& path, const ExtractionOptions& opts,
                        ExtractionResult& result) {
  const auto bytes = read_file_bytes(path);
  switch (sniff_input(path, bytes)) {
    case InputKind::Wav:
      result = extract_from_clip(parse_wav(bytes, opts.wav_mode), opts, true);
      return "wav";
    case InputKind::VoicedText:
      result = extract_from_clip(
          read_voiced_text(std::string_view(reinterpret_cast<const char*>(bytes.data()),
                                            bytes.size())),
          opts, false);
      return "voiced-text";
    case InputKind::FeatureFile:
      break;
  }
  fail(ErrorCode::FormatError, "input is already a feature file");
}

}  // namespace

ExtractionOptions CommonOptions::resolved() const {
  ExtractionOptions o = extraction;
  if (legacy_header_skip) o.wav_mode = LegacySkip{*legacy_header_skip, kDefaultSampleRateHz};
  o.endpoint.validate();
  return o;
}

int run_extract(const ExtractOptions& opts, std::ostream& out, std::ostream& err) {
  ExtractionOptions ex;
  std::vector<ManifestEntry> inputs;
  try {
    ex = opts.common.resolved();
    for (const auto& p : opts.inputs) inputs.push_back({p, opts.label.value_or(-1)});
    if (!opts.manifest.empty()) {
      auto m = read_manifest(opts.manifest);
      inputs.insert(inputs.end(), m.begin(), m.end());
    }
    fs::create_directories(opts.out_dir);
  } catch (const std::exception& e) {
    report_failure(err, opts.manifest.empty() ? opts.out_dir : opts.manifest, e);
    return 2;
  }
  if (inputs.empty()) {
    err << "error - no input files\n";
    return 2;
  }

  std::size_t failures = 0;
  double global_min = std::numeric_limits<double>::infinity();
  double global_max = -global_min;
  std::vector<ManifestEntry> written;
  if (opts.common.tsv) out << "file\tvoiced_s\tframes\tmin\tmax\toutput\n";
  for (const auto& in : inputs) {
    try {
      ExtractionResult r;
      extract_one(in.path, ex, r);
      r.vector.source_id = fs::path(in.path).filename().string();
      if (in.label >= 0) r.vector.label = in.label;
      const fs::path target = fs::path(opts.out_dir) / (fs::path(in.path).stem().string() + ".mfcc");
      write_file_text(target.string(), write_feature_file(r.vector));
      global_min = std::min(global_min, r.min_value);
      global_max = std::max(global_max, r.max_value);
      if (in.label >= 0) written.push_back({target.filename().string(), in.label});
      if (opts.common.tsv) {
        out << in.path << '\t' << fixed(r.voiced_seconds, 3) << '\t' << r.frame_count << '\t'
            << fixed(r.min_value, 4) << '\t' << fixed(r.max_value, 4) << '\t' << target.string()
            << '\n';
      } else {
        out << in.path << ": voiced " << fixed(r.voiced_seconds, 3) << " s, " << r.frame_count
            << " frames, values [" << fixed(r.min_value, 4) << ", " << fixed(r.max_value, 4)
            << "] -> " << target.string() << "\n";
      }
      err << "ok " << in.path << "\n";
    } catch (const std::exception& e) {
      ++failures;
      report_failure(err, in.path, e);
    }
  }
  if (!written.empty())
    write_file_text((fs::path(opts.out_dir) / "manifest.txt").string(), format_manifest(written));
  if (inputs.size() > failures) {
    out << "value range over " << inputs.size() - failures << " file(s): [" << fixed(global_min, 4)
        << ", " << fixed(global_max, 4) << "]\n";
  }
  if (failures) err << failures << " of " << inputs.size() << " file(s) failed\n";
  return failures ? 1 : 0;
}

int run_train(const TrainOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const auto ex = opts.common.resolved();
    const auto load = load_dataset(read_manifest(opts.manifest), ex);
    report_failures(err, load.failures);
    if (load.data.empty()) fail(ErrorCode::EmptyDataset, "no usable training items in " + opts.manifest);

    const std::size_t input_len = load.data.items.front().values.size();
    const std::vector<std::size_t> topology{input_len, opts.hidden, kDigitClasses};
    out << "training [" << topology[0] << ", " << topology[1] << ", " << topology[2] << "] on "
        << load.data.size() << " pattern(s), learning rate " << opts.training.learning_rate
        << ", seed " << opts.training.seed << "\n";
    const std::size_t every = std::max<std::size_t>(1, opts.log_every);
    const auto result = train_network(load.data, opts.training, topology,
                                      [&](std::size_t epoch, double sse) {
                                        if (epoch % every == 0)
                                          out << "epoch " << epoch << " sse " << fixed(sse, 6) << "\n";
                                      });
    const double last = result.history.back();
    if (result.reason == StopReason::TargetReached) {
      out << "stopped after " << result.epochs() << " epoch(s): target SSE reached ("
          << fixed(last, 6) << " <= " << opts.training.target_sse << ")\n";
    } else {
      out << "stopped after " << result.epochs() << " epoch(s): max epochs reached (final SSE "
          << fixed(last, 6) << ", target " << opts.training.target_sse << ")\n";
    }
    save_model_file(result.net, opts.out_model);
    out << "model written to " << opts.out_model << "\n";
    return load.failures.empty() ? 0 : 1;
  } catch (const std::exception& e) {
    report_failure(err, opts.manifest, e);
    return 1;
  }
}

int run_eval(const EvalOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const auto ex = opts.common.resolved();
    const Mlp net = load_model_file(opts.model);
    const auto load = load_dataset(read_manifest(opts.manifest), ex);
    report_failures(err, load.failures);
    const auto report = evaluate(net, load.data);
    out << format_report(report, opts.common.tsv);
    return load.failures.empty() ? 0 : 1;
  } catch (const std::exception& e) {
    report_failure(err, opts.manifest, e);
    return 1;
  }
}

int run_predict(const PredictOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const auto ex = opts.common.resolved();
    const Mlp net = load_model_file(opts.model);
    const auto fv = load_feature_input(opts.input, ex);
    const auto c = classify(net, fv);

    std::vector<std::size_t> order(c.scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return c.scores[a] > c.scores[b]; });
    const double sum = std::accumulate(c.scores.begin(), c.scores.end(), 0.0);

    if (opts.common.tsv) {
      out << "predicted\t" << c.label << "\n";
      for (std::size_t i : order) out << i << '\t' << fixed(c.scores[i], 6) << '\n';
      out << "score_sum\t" << fixed(sum, 6) << "\n";
    } else {
      out << "predicted digit: " << c.label << "\n";
      for (std::size_t i : order) out << "  " << i << "  " << fixed(c.scores[i], 6) << "\n";
      out << "score sum: " << fixed(sum, 6) << " (independent sigmoid outputs, not a distribution)\n";
    }
    err << "ok " << opts.input << "\n";
    return 0;
  } catch (const std::exception& e) {
    report_failure(err, opts.input, e);
    return 1;
  }
}

int run_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err) {
  std::vector<SynthClip> corpus;
  try {
    corpus = synth_corpus(opts.seed, opts.per_class, opts.rate_hz);
    fs::create_directories(opts.out_dir);
  } catch (const std::exception& e) {
    report_failure(err, opts.out_dir, e);
    return 1;
  }

  std::size_t failures = 0;
  std::vector<ManifestEntry> train, test;
  for (const auto& sc : corpus) {
    const std::string name = sc.id + ".wav";
    const fs::path path = fs::path(opts.out_dir) / name;
    try {
      write_file_bytes(path.string(), write_wav_pcm8(sc.clip));
      (is_training_clip(sc.index) ? train : test).push_back({name, sc.label});
      err << "ok " << path.string() << "\n";
    } catch (const std::exception& e) {
      ++failures;
      report_failure(err, path.string(), e);
    }
  }
  try {
    write_file_text((fs::path(opts.out_dir) / "train.txt").string(), format_manifest(train));
    write_file_text((fs::path(opts.out_dir) / "test.txt").string(), format_manifest(test));
  } catch (const std::exception& e) {
    ++failures;
    report_failure(err, opts.out_dir, e);
  }
  out << "wrote " << corpus.size() - failures << " clip(s) to " << opts.out_dir << " ("
      << train.size() << " train, " << test.size() << " test)\n";
  return failures ? 1 : 0;
}

}  // namespace digitrec::cli
