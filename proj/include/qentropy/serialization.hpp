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
#include <string>
#include <vector>

#include "json.hpp"
#include "qentropy/classical.hpp"
#include "qentropy/entropy_analysis.hpp"

namespace qentropy {

using json = nlohmann::json;

// Matrix format: {"dim": N, "matrix": [[[re, im], ...], ...]}, rows outermost.
// `dim` is the subsystem dimension, which differs from the row count for Choi
// matrices (rows = dim^2).
json matrix_to_json(const CMatrix& m, Eigen::Index dim);
json matrix_to_json(const CMatrix& m);
// Accepts the object form or a bare nested array.
CMatrix matrix_from_json(const json& j);

json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const json& j, const Tolerances& tol = {});

// {"dim": N, "kraus": [<matrix>, ...]}
json channel_to_json(const KrausChannel& phi);
KrausChannel channel_from_json(const json& j, const Tolerances& tol = {});

json choi_to_json(const ChoiMatrix& j);

// {"dim": N, "blocks": [{"dl": .., "dr": .., "isometry": <matrix>}, ...]}
json structure_to_json(const BlockStructure& b);
BlockStructure structure_from_json(const json& j);

json tolerances_to_json(const Tolerances& tol);
json to_json(const ChannelClass& c);
json to_json(const PreservationReport& r);
json to_json(const MonotonicityReport& r);
json to_json(const PetzReport& r);
json to_json(const MapEntropyReport& r);
json to_json(const CorollaryReport& r);
json to_json(const BridgeReport& r);
json to_json(const BlockVerification& v);

// Serializes with every double printed to 17 significant digits; +/-inf
// become the strings "Infinity"/"-Infinity" and NaN becomes null.
std::string dump_json(const json& j, int indent = 2);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

// One (B, p) instance of a classical batch.
struct ClassicalCase {
  RMatrix b;
  std::vector<double> p;
};

// CSV: repeated blocks of a row "N", N rows of B, one row of p. Blank lines
// and lines starting with '#' are skipped. JSON: {"dim", "matrix", "p"}, a
// list of those, or {"instances": [...]}.
std::vector<ClassicalCase> parse_classical_csv(const std::string& text);
std::vector<ClassicalCase> parse_classical_json(const json& j);
std::vector<ClassicalCase> read_classical_file(const std::filesystem::path& path);

}  // namespace qentropy
