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

#include <doctest.h>

#include "digitrec/error.hpp"

// Asserts that `expr` throws digitrec::Error carrying `expected_code`.
#define CHECK_ERROR_CODE(expr, expected_code)                               \
  do {                                                                       \
    bool digitrec_threw_ = false;                                            \
    try {                                                                    \
      (void)(expr);                                                          \
    } catch (const digitrec::Error& e) {                                     \
      digitrec_threw_ = true;                                                \
      CHECK_MESSAGE(e.code() == (expected_code), e.what());                  \
    }                                                                        \
    CHECK_MESSAGE(digitrec_threw_, "expected digitrec::Error from " #expr); \
  } while (0)
