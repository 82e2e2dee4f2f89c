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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qentropy/serialization.hpp"

namespace qentropy::cli {

enum class Status { Ok, Violated, Error };

const char* to_string(Status s);

struct CommandResult {
  Status status = Status::Ok;
  json report = json::object();
  std::vector<std::string> diagnostics;

  int exit_code() const;
  // {"status", "report", "diagnostics"}
  json envelope() const;
};

struct ToleranceFlags {
  std::optional<double> eq;
  std::optional<double> fix;
  std::optional<double> psd;
};

using EnvLookup = std::function<std::optional<std::string>(const char*)>;

// Flags win over TOL_EQ / TOL_FIX / TOL_PSD; remaining fields keep defaults.
Tolerances resolve_tolerances(const ToleranceFlags& flags, const EnvLookup& env);
Tolerances resolve_tolerances(const ToleranceFlags& flags);

CommandResult analyze_state(const std::filesystem::path& state_file, const Tolerances& tol);
CommandResult analyze_pair(const std::filesystem::path& channel_file, const std::filesystem::path& state_file,
                           const Tolerances& tol);
CommandResult decompose(const std::filesystem::path& channel_file, std::uint64_t seed, const Tolerances& tol);
// One file: map entropy of that channel. Two files: phi then psi.
CommandResult map_entropy(const std::vector<std::filesystem::path>& channel_files, const Tolerances& tol);
CommandResult classical_check(const std::filesystem::path& input, const Tolerances& tol);
CommandResult synthesize(const std::string& spec, std::uint64_t seed, const std::filesystem::path& out_dir,
                         const Tolerances& tol);

struct GenRequest {
  std::string kind;  // density | unitary | bistochastic-channel | stochastic-channel | bistochastic-matrix
  Eigen::Index dim = 2;
  Eigen::Index rank = 0;  // density; 0 means full rank
  std::size_t count = 3;  // unitaries or permutations in a mixture
  Eigen::Index env = 2;   // environment dimension of stochastic channels
  std::uint64_t seed = 0;
};

// The generated object in its file format.
json generate(const GenRequest& req);

// Full command line; writes the JSON envelope (or the generated object) to
// `out` and returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qentropy::cli
