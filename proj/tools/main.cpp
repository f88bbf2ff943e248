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

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using digitrec::cli::CommonOptions;

void add_common(CLI::App& cmd, CommonOptions& c) {
  auto& ep = c.extraction.endpoint;
  auto& fc = c.extraction.features;
  cmd.add_option("--legacy-header-skip", c.legacy_header_skip,
                 "Skip N header bytes and read 8-bit mono PCM instead of parsing RIFF chunks");
  cmd.add_flag("--tsv", c.tsv, "Tab-separated output");

  cmd.add_option("--frame-ms", ep.analysis_frame_ms, "Endpoint analysis frame (ms)")->group("Endpoint detection");
  cmd.add_option("--energy-k", ep.energy_k, "Energy threshold: noise mean + k * std")->group("Endpoint detection");
  cmd.add_option("--zcr-k", ep.zcr_k, "ZCR threshold: noise mean + k * std")->group("Endpoint detection");
  cmd.add_option("--noise-window-ms", ep.noise_window_ms, "Leading noise window (ms)")->group("Endpoint detection");
  cmd.add_option("--zcr-extension-ms", ep.zcr_extension_ms, "Max ZCR-driven boundary extension (ms)")->group("Endpoint detection");
  cmd.add_option("--min-voiced-ms", ep.min_voiced_ms, "Shortest high-energy run accepted as speech (ms)")->group("Endpoint detection");

  cmd.add_option("--frame-len", fc.frame_len_samples, "Analysis frame length (samples)")->group("Features");
  cmd.add_option("--hop", fc.hop_samples, "Frame hop (samples)")->group("Features");
  cmd.add_option("--preemphasis", fc.preemphasis_alpha, "Pre-emphasis coefficient")->group("Features");
  cmd.add_option("--mel-filters", fc.n_mel_filters, "Number of triangular mel filters")->group("Features");
  cmd.add_option("--coeffs", fc.n_coeffs, "Cepstral coefficients per frame")->group("Features");
  cmd.add_option("--fmin", fc.fmin_hz, "Lowest filterbank frequency (Hz)")->group("Features");
  cmd.add_option("--fmax", fc.fmax_hz, "Highest filterbank frequency (Hz)")->group("Features");
  cmd.add_option("--vector-len", fc.vector_len, "Network input length")->group("Features");
  cmd.add_option("--log-floor", fc.log_floor, "Floor applied before the log")->group("Features");
  cmd.add_flag("--include-formants", fc.include_formants, "Append F1/F2 (kHz) after each frame's cepstra")->group("Features");
  cmd.add_flag("--raw-cepstra,!--scaled-cepstra", [&fc](std::int64_t n) { fc.scale_cepstra = n <= 0; },
               "Skip dividing cepstra by the filter count (default: scaled)")->group("Features");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isolated spoken-digit recognizer: MFCC features + backpropagation MLP"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  digitrec::cli::ExtractOptions ex;
  auto* extract = app.add_subcommand("extract", "Endpoint-detect and convert recordings to MFCC feature files");
  add_common(*extract, ex.common);
  extract->add_option("inputs", ex.inputs, "WAV or voiced-text files");
  extract->add_option("--manifest", ex.manifest, "Manifest of '<path> <label>' lines or a 0..9 directory tree");
  extract->add_option("-o,--out-dir", ex.out_dir, "Directory for .mfcc files");
  extract->add_option("--label", ex.label, "Label recorded in feature files for positional inputs")
      ->check(CLI::Range(0, 9));

  digitrec::cli::TrainOptions tr;
  auto* train = app.add_subcommand("train", "Train the network on a labeled manifest");
  add_common(*train, tr.common);
  train->add_option("manifest", tr.manifest, "Training manifest or directory")->required();
  train->add_option("-o,--out", tr.out_model, "Output model file");
  train->add_option("--hidden", tr.hidden, "Hidden units")->check(CLI::PositiveNumber);
  train->add_option("--lr", tr.training.learning_rate, "Learning rate")->check(CLI::PositiveNumber);
  train->add_option("--max-epochs", tr.training.max_epochs, "Epoch cap")->check(CLI::PositiveNumber);
  train->add_option("--target-sse", tr.training.target_sse, "Stop once epoch SSE falls to this")->check(CLI::PositiveNumber);
  train->add_option("--seed", tr.training.seed, "Nonzero seed for weights and shuffling")->check(CLI::PositiveNumber);
  train->add_flag("--no-shuffle", [&tr](std::int64_t) { tr.training.shuffle_each_epoch = false; },
                  "Present patterns in manifest order every epoch");
  train->add_option("--log-every", tr.log_every, "Log epoch SSE every N epochs");

  digitrec::cli::EvalOptions ev;
  auto* eval = app.add_subcommand("eval", "Print the per-digit recognition table");
  add_common(*eval, ev.common);
  eval->add_option("manifest", ev.manifest, "Test manifest or directory")->required();
  eval->add_option("-m,--model", ev.model, "Model file")->required();

  digitrec::cli::PredictOptions pr;
  auto* predict = app.add_subcommand("predict", "Recognize one recording");
  add_common(*predict, pr.common);
  predict->add_option("-m,--model", pr.model, "Model file")->required();
  predict->add_option("input", pr.input, "WAV, voiced-text or feature file")->required();

  digitrec::cli::SynthOptions sy;
  auto* synth = app.add_subcommand("synth", "Write a synthetic ten-class WAV corpus with train/test manifests");
  synth->add_option("out_dir", sy.out_dir, "Output directory")->required();
  synth->add_option("--seed", sy.seed, "Nonzero corpus seed")->check(CLI::PositiveNumber);
  synth->add_option("--per-class", sy.per_class, "Clips per digit")->check(CLI::Range(2, 100000));
  synth->add_option("--rate", sy.rate_hz, "Sample rate (Hz)");

  CLI11_PARSE(app, argc, argv);

  if (extract->parsed()) return digitrec::cli::run_extract(ex, std::cout, std::cerr);
  if (train->parsed()) return digitrec::cli::run_train(tr, std::cout, std::cerr);
  if (eval->parsed()) return digitrec::cli::run_eval(ev, std::cout, std::cerr);
  if (predict->parsed()) return digitrec::cli::run_predict(pr, std::cout, std::cerr);
  if (synth->parsed()) return digitrec::cli::run_synth(sy, std::cout, std::cerr);
  return 2;
}
