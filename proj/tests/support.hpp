// Copyright 2026 The qentropy Authors
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

#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "qentropy/linalg.hpp"

// Runs `expr` and requires a qentropy::Error of the given kind.
#define REQUIRE_ERROR_KIND(expr, expected_kind)                       \
  do {                                                                \
    bool thrown_ = false;                                             \
    try {                                                             \
      (void)(expr);                                                   \
    } catch (const qentropy::Error& e_) {                             \
      thrown_ = true;                                                 \
      CHECK_MESSAGE(e_.kind() == (expected_kind), e_.what());         \
    }                                                                 \
    CHECK_MESSAGE(thrown_, "expected " #expected_kind " from " #expr); \
  } while (false)

namespace testing_support {

inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("qentropy_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace testing_support
