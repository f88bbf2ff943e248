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

#include "digitrec/model_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "digitrec/audio_io.hpp"
#include "digitrec/error.hpp"

namespace digitrec {
namespace {

void append_row(std::string& out, std::span<const double> row) {
  char buf[32];
  for (std::size_t i = 0; i < row.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", row[i]);
    if (i) out += ' ';
    out += buf;
  }
  out += '\n';
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string t;
  while (in >> t) tokens.push_back(t);
  return tokens;
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) : in_(std::string(text)) {}

  // Next non-blank line, tokenized. Running out of input is a format error.
  std::vector<std::string> next(const char* expecting) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      auto tokens = split(line);
      if (!tokens.empty()) return tokens;
    }
    fail(ErrorCode::FormatError, std::string("unexpected end of model file, expected ") + expecting);
  }

  bool at_end() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!split(line).empty()) return false;
    }
    return true;
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::istringstream in_;
  std::size_t line_no_ = 0;
};

bool parse_size(const std::string& token, std::size_t& out) {
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

bool looks_numeric(const std::string& token) {
  double v;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  return ec == std::errc() && ptr == token.data() + token.size();
}

std::vector<double> parse_row(const std::vector<std::string>& tokens, std::size_t want,
                              std::size_t line_no) {
  if (!looks_numeric(tokens.front()))
    fail(ErrorCode::DimensionMismatch,
         "line " + std::to_string(line_no) + ": expected a parameter row, found '" +
             tokens.front() + "'");
  if (tokens.size() != want)
    fail(ErrorCode::DimensionMismatch, "line " + std::to_string(line_no) + ": row has " +
                                           std::to_string(tokens.size()) + " values, expected " +
                                           std::to_string(want));
  std::vector<double> row(want);
  for (std::size_t i = 0; i < want; ++i) {
    const auto& t = tokens[i];
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), row[i]);
    if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(row[i]))
      fail(ErrorCode::FormatError, "line " + std::to_string(line_no) + ": bad value '" + t + "'");
  }
  return row;
}

void expect_header(const std::vector<std::string>& tokens, const char* keyword, std::size_t l,
                   std::size_t line_no) {
  if (looks_numeric(tokens.front()))
    fail(ErrorCode::DimensionMismatch, "line " + std::to_string(line_no) +
                                           ": extra parameter row before '" + keyword + "'");
  std::size_t idx = 0;
  if (tokens.size() != 2 || tokens[0] != keyword || !parse_size(tokens[1], idx) || idx != l)
    fail(ErrorCode::FormatError, "line " + std::to_string(line_no) + ": expected '" + keyword +
                                     " " + std::to_string(l) + "'");
}

}  // namespace

std::string save_model(const Mlp& net) {
  net.validate();
  std::string out = "MLPMODEL v1\nlayers";
  for (std::size_t s : net.layer_sizes) out += " " + std::to_string(s);
  out += "\nactivation sigmoid\n";
  for (std::size_t l = 0; l + 1 < net.layer_count(); ++l) {
    out += "weights " + std::to_string(l) + "\n";
    for (std::size_t r = 0; r < net.weights[l].rows(); ++r) append_row(out, net.weights[l].row(r));
    out += "biases " + std::to_string(l) + "\n";
    append_row(out, net.biases[l]);
  }
  return out;
}

Mlp load_model(std::string_view text) {
  // save_model always terminates the last row; a missing newline means the
  // file was cut mid-row.
  if (!text.empty() && text.back() != '\n')
    fail(ErrorCode::FormatError, "model file is truncated (no trailing newline)");
  LineReader reader(text);
  auto magic = reader.next("MLPMODEL header");
  if (magic.size() != 2 || magic[0] != "MLPMODEL")
    fail(ErrorCode::FormatError, "missing MLPMODEL magic");
  if (magic[1] != "v1") fail(ErrorCode::FormatError, "unsupported model version " + magic[1]);

  auto layers = reader.next("layers line");
  if (layers.front() != "layers" || layers.size() < 3)
    fail(ErrorCode::FormatError, "expected 'layers <s0> <s1> ...'");
  Mlp net;
  for (std::size_t i = 1; i < layers.size(); ++i) {
    std::size_t s = 0;
    if (!parse_size(layers[i], s) || s == 0)
      fail(ErrorCode::FormatError, "bad layer size '" + layers[i] + "'");
    net.layer_sizes.push_back(s);
  }

  auto activation = reader.next("activation line");
  if (activation.size() != 2 || activation[0] != "activation" || activation[1] != "sigmoid")
    fail(ErrorCode::FormatError, "expected 'activation sigmoid'");

  for (std::size_t l = 0; l + 1 < net.layer_count(); ++l) {
    const std::size_t rows = net.layer_sizes[l + 1], cols = net.layer_sizes[l];
    expect_header(reader.next("weights header"), "weights", l, reader.line_no());
    Matrix w(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      auto tokens = reader.next("weight row");
      const auto row = parse_row(tokens, cols, reader.line_no());
      std::copy(row.begin(), row.end(), w.row(r).begin());
    }
    expect_header(reader.next("biases header"), "biases", l, reader.line_no());
    net.weights.push_back(std::move(w));
    net.biases.push_back(parse_row(reader.next("bias row"), rows, reader.line_no()));
  }
  if (!reader.at_end())
    fail(ErrorCode::DimensionMismatch, "trailing data after the last layer");
  net.validate();
  return net;
}

void save_model_file(const Mlp& net, const std::string& path) {
  write_file_text(path, save_model(net));
}

Mlp load_model_file(const std::string& path) { return load_model(read_file_text(path)); }

}  // namespace digitrec
