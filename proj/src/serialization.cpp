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

#include "qentropy/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qentropy {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

Complex entry_from_json(const json& e) {
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  parse_error("matrix entry must be a [re, im] pair of numbers");
}

json number_or_infinity(double x) {
  if (std::isinf(x)) return x > 0 ? "Infinity" : "-Infinity";
  return x;
}

void dump_value(const json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad + json(it.key()).dump() + (indent > 0 ? ": " : ":");
        dump_value(it.value(), indent, depth + 1, out);
      }
      out += nl + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Scalars and [re, im] pairs stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) {
        return !e.is_structured() ||
               (e.is_array() && std::none_of(e.begin(), e.end(), [](const json& x) { return x.is_structured(); }));
      });
      out += "[";
      bool first = true;
      for (const json& e : j) {
        if (!first) out += flat ? ", " : ",";
        if (!flat) out += nl + pad;
        first = false;
        dump_value(e, flat ? 0 : indent, depth + 1, out);
      }
      if (!flat) out += nl + close_pad;
      out += "]";
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (std::isnan(x)) {
        out += "null";
      } else if (std::isinf(x)) {
        out += x > 0 ? "\"Infinity\"" : "\"-Infinity\"";
      } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        std::string s(buf);
        if (s.find_first_of(".eE") == std::string::npos) s += ".0";
        out += s;
      }
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

json matrix_to_json(const CMatrix& m, Eigen::Index dim) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return {{"dim", dim}, {"matrix", std::move(rows)}};
}

json matrix_to_json(const CMatrix& m) { return matrix_to_json(m, m.rows()); }

CMatrix matrix_from_json(const json& j) {
  const json* rows = &j;
  std::optional<long long> dim;
  if (j.is_object()) {
    if (!j.contains("matrix")) parse_error("matrix object lacks a \"matrix\" field");
    rows = &j.at("matrix");
    if (j.contains("dim")) {
      if (!j.at("dim").is_number_integer()) parse_error("\"dim\" must be an integer");
      dim = j.at("dim").get<long long>();
    }
  }
  if (!rows->is_array() || rows->empty()) parse_error("matrix must be a non-empty array of rows");
  const auto n_rows = static_cast<Eigen::Index>(rows->size());
  if (!(*rows)[0].is_array()) parse_error("matrix rows must be arrays");
  const auto n_cols = static_cast<Eigen::Index>((*rows)[0].size());
  CMatrix m(n_rows, n_cols);
  for (Eigen::Index r = 0; r < n_rows; ++r) {
    const json& row = (*rows)[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n_cols) parse_error("ragged matrix rows");
    for (Eigen::Index c = 0; c < n_cols; ++c) m(r, c) = entry_from_json(row[static_cast<std::size_t>(c)]);
  }
  if (!m.allFinite()) parse_error("matrix entries must be finite");
  if (dim && *dim != n_rows && (*dim) * (*dim) != n_rows) {
    parse_error("\"dim\" does not match the matrix size");
  }
  return m;
}

json state_to_json(const DensityMatrix& rho) { return matrix_to_json(rho.matrix()); }

DensityMatrix state_from_json(const json& j, const Tolerances& tol) {
  return DensityMatrix::validate(matrix_from_json(j), tol);
}

json channel_to_json(const KrausChannel& phi) {
  json ks = json::array();
  for (const CMatrix& m : phi.kraus()) ks.push_back(matrix_to_json(m));
  return {{"dim", phi.dim()}, {"kraus", std::move(ks)}};
}

KrausChannel channel_from_json(const json& j, const Tolerances& tol) {
  if (!j.is_object() || !j.contains("kraus") || !j.at("kraus").is_array()) {
    parse_error("channel must be an object with a \"kraus\" array");
  }
  std::vector<CMatrix> ks;
  for (const json& k : j.at("kraus")) ks.push_back(matrix_from_json(k));
  if (ks.empty()) parse_error("channel has no Kraus operators");
  if (j.contains("dim")) {
    if (!j.at("dim").is_number_integer() || j.at("dim").get<long long>() != ks.front().rows()) {
      parse_error("channel \"dim\" does not match its Kraus operators");
    }
  }
  return KrausChannel(std::move(ks), tol);
}

json choi_to_json(const ChoiMatrix& j) { return matrix_to_json(j.matrix, j.dim); }

json structure_to_json(const BlockStructure& b) {
  json blocks = json::array();
  for (const Block& blk : b.blocks) {
    blocks.push_back({{"dl", blk.dl}, {"dr", blk.dr}, {"isometry", matrix_to_json(blk.isometry, b.dim)}});
  }
  return {{"dim", b.dim}, {"blocks", std::move(blocks)}, {"algebra_residual", b.algebra_residual}};
}

BlockStructure structure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("blocks") || !j.at("blocks").is_array()) {
    parse_error("structure must be an object with \"dim\" and \"blocks\"");
  }
  BlockStructure b;
  b.dim = j.at("dim").get<Eigen::Index>();
  for (const json& blk : j.at("blocks")) {
    if (!blk.contains("dl") || !blk.contains("dr") || !blk.contains("isometry")) {
      parse_error("block needs \"dl\", \"dr\" and \"isometry\"");
    }
    b.blocks.push_back({matrix_from_json(blk.at("isometry")), blk.at("dl").get<Eigen::Index>(),
                        blk.at("dr").get<Eigen::Index>()});
  }
  if (j.contains("algebra_residual") && j.at("algebra_residual").is_number()) {
    b.algebra_residual = j.at("algebra_residual").get<double>();
  }
  return b;
}

json tolerances_to_json(const Tolerances& tol) {
  return {{"herm", tol.herm}, {"psd", tol.psd},   {"trace", tol.trace}, {"recon", tol.recon},
          {"eq", tol.eq},     {"fix", tol.fix},   {"group", tol.group}};
}

json to_json(const ChannelClass& c) {
  return {{"kind", to_string(c.kind)},
          {"stochastic", c.stochastic},
          {"unital", c.unital},
          {"trace_residual", c.trace_residual},
          {"unital_residual", c.unital_residual}};
}

json to_json(const PreservationReport& r) {
  return {{"entropy_in", r.entropy_in},     {"entropy_out", r.entropy_out},   {"delta_entropy", r.entropy_out - r.entropy_in},
          {"entropy_gap", r.entropy_gap},   {"residual_fix", r.residual_fix}, {"verdict_entropy_equal", r.entropy_equal},
          {"verdict_fixed_point", r.fixed_point}, {"agreement", r.agreement}, {"preserved", r.preserved()}};
}

json to_json(const MonotonicityReport& r) {
  json j = {{"relative_in", number_or_infinity(r.relative_in)},
            {"relative_out", number_or_infinity(r.relative_out)},
            {"slack", number_or_infinity(r.slack)},
            {"holds", r.holds}};
  j["entropy_gain"] = r.entropy_gain ? json(*r.entropy_gain) : json(nullptr);
  return j;
}

json to_json(const PetzReport& r) {
  return {{"relative_in", number_or_infinity(r.relative_in)},
          {"relative_out", number_or_infinity(r.relative_out)},
          {"relative_gap", number_or_infinity(r.relative_gap)},
          {"recovery_residual", r.recovery_residual},
          {"verdict_equality", r.equality},
          {"verdict_recovered", r.recovered},
          {"agreement", r.agreement}};
}

json to_json(const MapEntropyReport& r) {
  return {{"map_entropy_in", r.map_entropy_in},
          {"map_entropy_out", r.map_entropy_out},
          {"entropy_gap", r.entropy_gap},
          {"channel_residual", r.channel_residual},
          {"verdict_entropy_equal", r.entropy_equal},
          {"verdict_fixed_point", r.fixed_point},
          {"agreement", r.agreement}};
}

json to_json(const CorollaryReport& r) {
  return {{"entropy_in", r.entropy_in},
          {"entropy_out", r.entropy_out},
          {"entropy_gap", r.entropy_gap},
          {"fixed_residual", r.fixed_residual},
          {"verdict_entropy_equal", r.entropy_preserved},
          {"verdict_fixed_point", r.fixed_point},
          {"agreement", r.agreement}};
}

json to_json(const BridgeReport& r) {
  auto vec_json = [](const RVector& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  return {{"p", vec_json(r.p)},           {"q", vec_json(r.q)},
          {"predicted", vec_json(r.predicted)}, {"residual", r.residual},
          {"off_diagonal", r.off_diagonal},     {"passed", r.passed}};
}

json to_json(const BlockVerification& v) {
  json blocks = json::array();
  for (const BlockCheck& b : v.blocks) {
    blocks.push_back({{"dl", b.dl},
                      {"dr", b.dr},
                      {"weight", b.weight},
                      {"left_state", matrix_to_json(b.left_state)},
                      {"left_unitary", matrix_to_json(b.left_unitary)},
                      {"factorization_residual", b.factorization_residual},
                      {"leakage_residual", b.leakage_residual},
                      {"unitary_residual", b.unitary_residual},
                      {"action_residual", b.action_residual},
                      {"right_bistochastic_residual", b.right_bistochastic_residual}});
  }
  return {{"passed", v.passed()},
          {"failed_check", v.failed_check.empty() ? json(nullptr) : json(v.failed_check)},
          {"isometry_residual", v.isometry_residual},
          {"block_diagonal_residual", v.block_diagonal_residual},
          {"blocks", std::move(blocks)}};
}

std::string dump_json(const json& j, int indent) {
  std::string out;
  dump_value(j, indent, 0, out);
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    parse_error(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out << dump_json(j) << "\n";
}

namespace {

std::vector<double> parse_csv_row(const std::string& line) {
  std::vector<double> row;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(cell, &used);
    } catch (const std::logic_error&) {
      parse_error("non-numeric CSV cell '" + cell + "'");
    }
    for (std::size_t k = used; k < cell.size(); ++k)
      if (!std::isspace(static_cast<unsigned char>(cell[k]))) parse_error("trailing characters in CSV cell '" + cell + "'");
    if (!std::isfinite(x)) parse_error("CSV values must be finite");
    row.push_back(x);
  }
  return row;
}

}  // namespace

std::vector<ClassicalCase> parse_classical_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    rows.push_back(parse_csv_row(line));
  }
  std::vector<ClassicalCase> cases;
  std::size_t at = 0;
  while (at < rows.size()) {
    if (rows[at].size() != 1 || rows[at][0] < 1 || rows[at][0] != std::floor(rows[at][0])) {
      parse_error("CSV block must start with a row holding the dimension N");
    }
    const auto n = static_cast<std::size_t>(rows[at][0]);
    if (at + 1 + n >= rows.size()) parse_error("truncated CSV block");
    ClassicalCase c;
    c.b.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const auto& row = rows[at + 1 + i];
      if (row.size() != n) parse_error("CSV matrix row has the wrong length");
      for (std::size_t j = 0; j < n; ++j) c.b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
    }
    c.p = rows[at + 1 + n];
    if (c.p.size() != n) parse_error("CSV probability row has the wrong length");
    cases.push_back(std::move(c));
    at += n + 2;
  }
  if (cases.empty()) parse_error("no instances in CSV input");
  return cases;
}

std::vector<ClassicalCase> parse_classical_json(const json& j) {
  auto one = [](const json& o) {
    if (!o.is_object() || !o.contains("matrix") || !o.contains("p")) {
      parse_error("classical instance needs \"matrix\" and \"p\"");
    }
    const json& rows = o.at("matrix");
    if (!rows.is_array() || rows.empty()) parse_error("\"matrix\" must be a non-empty array");
    const auto n = static_cast<Eigen::Index>(rows.size());
    ClassicalCase c;
    c.b.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const json& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) parse_error("matrix must be square");
      for (Eigen::Index k = 0; k < n; ++k) {
        const json& e = row[static_cast<std::size_t>(k)];
        if (!e.is_number()) parse_error("classical matrix entries must be real numbers");
        c.b(i, k) = e.get<double>();
      }
    }
    if (!o.at("p").is_array()) parse_error("\"p\" must be an array");
    for (const json& e : o.at("p")) {
      if (!e.is_number()) parse_error("\"p\" entries must be numbers");
      c.p.push_back(e.get<double>());
    }
    if (static_cast<Eigen::Index>(c.p.size()) != n) parse_error("\"p\" length differs from the matrix size");
    if (o.contains("dim") && o.at("dim") != n) parse_error("\"dim\" does not match the matrix size");
    return c;
  };
  std::vector<ClassicalCase> cases;
  const json* list = &j;
  if (j.is_object() && j.contains("instances")) list = &j.at("instances");
  if (list->is_array()) {
    for (const json& o : *list) cases.push_back(one(o));
  } else {
    cases.push_back(one(*list));
  }
  if (cases.empty()) parse_error("no instances in JSON input");
  return cases;
}

std::vector<ClassicalCase> read_classical_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    try {
      return parse_classical_json(json::parse(text));
    } catch (const json::exception& e) {
      parse_error(path.string() + ": " + e.what());
    }
  }
  return parse_classical_csv(text);
}

}  // namespace qentropy
