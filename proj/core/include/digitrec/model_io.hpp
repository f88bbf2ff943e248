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

// Text model format:
//
//   MLPMODEL v1
//   layers <s0> <s1> ... <sk>
//   activation sigmoid
//   weights <l>        followed by size(l+1) rows of size(l) reals
//   biases <l>         followed by one row of size(l+1) reals
//   ... repeated for every layer pair l
//
// Reals are written with 17 significant digits so a reload is bit-exact.

#include <string>
#include <string_view>

#include "digitrec/neuralnet.hpp"

namespace digitrec {

std::string save_model(const Mlp& net);
Mlp load_model(std::string_view text);

void save_model_file(const Mlp& net, const std::string& path);
Mlp load_model_file(const std::string& path);

}  // namespace digitrec
