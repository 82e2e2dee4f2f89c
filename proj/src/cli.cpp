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

#include "qentropy/cli.hpp"

#include <cstdlib>
#include <sstream>

#include "CLI11.hpp"
#include "qentropy/generators.hpp"

namespace qentropy::cli {

const char* to_string(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::Violated: return "violated";
    case Status::Error: return "error";
  }
  return "error";
}

int CommandResult::exit_code() const {
  switch (status) {
    case Status::Ok: return 0;
    case Status::Violated: return 1;
    case Status::Error: return 2;
  }
  return 2;
}

json CommandResult::envelope() const {
  return {{"status", to_string(status)}, {"report", report}, {"diagnostics", diagnostics}};
}

namespace {

double parse_tolerance(const std::string& text, const char* name) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw Error(ErrorKind::InvalidTolerance, std::string(name) + " is not a number: '" + text + "'");
  }
  return x;
}

CommandResult failure(const Error& e) {
  CommandResult r;
  r.status = Status::Error;
  r.report = {{"error", to_string(e.kind())}};
  r.diagnostics.emplace_back(e.what());
  return r;
}

// Throws NotBistochastic with the classification residuals attached to the report.
struct ChannelPrecondition {
  Error error;
  ChannelClass cls;
};

void require_bistochastic_reported(const KrausChannel& phi, const Tolerances& tol) {
  try {
    require_bistochastic(phi, tol);
  } catch (const Error& e) {
    throw ChannelPrecondition{e, classify(phi, tol)};
  }
}

// Runs `body`, converting library errors into exit-2 results and attaching
// the tolerances to the report.
template <class F>
CommandResult guarded(const Tolerances& tol, F&& body) {
  CommandResult r;
  try {
    tol.validate();
    r = body();
  } catch (const ChannelPrecondition& p) {
    r = failure(p.error);
    r.report["channel"] = to_json(p.cls);
  } catch (const Error& e) {
    r = failure(e);
  } catch (const json::exception& e) {
    r = failure(Error(ErrorKind::ParseError, e.what()));
  } catch (const std::filesystem::filesystem_error& e) {
    r = failure(Error(ErrorKind::InvalidArgument, e.what()));
  }
  r.report["tolerances"] = tolerances_to_json(tol);
  return r;
}

std::vector<double> to_std(const RVector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

Tolerances resolve_tolerances(const ToleranceFlags& flags, const EnvLookup& env) {
  Tolerances tol;
  auto pick = [&](const std::optional<double>& flag, const char* var, double& slot) {
    if (flag) {
      slot = *flag;
    } else if (auto v = env(var); v && !v->empty()) {
      slot = parse_tolerance(*v, var);
    }
  };
  pick(flags.eq, "TOL_EQ", tol.eq);
  pick(flags.fix, "TOL_FIX", tol.fix);
  pick(flags.psd, "TOL_PSD", tol.psd);
  tol.validate();
  return tol;
}

Tolerances resolve_tolerances(const ToleranceFlags& flags) {
  return resolve_tolerances(flags, [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    if (v == nullptr) return std::nullopt;
    return std::string(v);
  });
}

CommandResult analyze_state(const std::filesystem::path& state_file, const Tolerances& tol) {
  return guarded(tol, [&] {
    const DensityMatrix rho = state_from_json(read_json_file(state_file), tol);
    const RVector& ev = rho.spectrum().eigenvalues;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      if (ev(i) > tol.psd) ++rank;
    CommandResult r;
    r.report = {{"dim", rho.dim()},
                {"entropy", von_neumann_entropy(rho)},
                {"spectrum", to_std(ev.cwiseMax(0.0))},
                {"rank", rank}};
    return r;
  });
}

CommandResult analyze_pair(const std::filesystem::path& channel_file, const std::filesystem::path& state_file,
                           const Tolerances& tol) {
  return guarded(tol, [&] {
    const KrausChannel phi = channel_from_json(read_json_file(channel_file), tol);
    const DensityMatrix rho = state_from_json(read_json_file(state_file), tol);
    require_bistochastic_reported(phi, tol);
    const PreservationReport rep = entropy_preservation_report(phi, rho, tol);
    CommandResult r;
    r.report = to_json(rep);
    r.report["channel"] = to_json(classify(phi, tol));
    r.status = rep.preserved() ? Status::Ok : Status::Violated;
    if (!rep.agreement) r.diagnostics.emplace_back("entropy and fixed-point verdicts disagree");
    return r;
  });
}

CommandResult decompose(const std::filesystem::path& channel_file, std::uint64_t seed, const Tolerances& tol) {
  return guarded(tol, [&] {
    const KrausChannel phi = channel_from_json(read_json_file(channel_file), tol);
    require_bistochastic_reported(phi, tol);
    const FixedPointBasis fix = fixed_point_space(phi, tol);
    const BlockStructure b = decompose_fixed_point_algebra(fix, tol, seed);
    json dims = json::array();
    for (const Block& blk : b.blocks) dims.push_back({blk.dl, blk.dr});
    CommandResult r;
    r.report = structure_to_json(b);
    r.report["dims"] = std::move(dims);
    r.report["seed"] = seed;
    r.report["attempts"] = b.attempts;
    r.report["fixed_point_dim"] = fix.basis.size();
    r.report["spectral_gap"] = fix.spectral_gap;
    double worst = 0.0;
    for (double x : fix.eigenvalue_residuals) worst = std::max(worst, x);
    r.report["fixed_point_residual"] = worst;
    return r;
  });
}

CommandResult map_entropy(const std::vector<std::filesystem::path>& channel_files, const Tolerances& tol) {
  return guarded(tol, [&] {
    CommandResult r;
    if (channel_files.size() == 1) {
      const KrausChannel phi = channel_from_json(read_json_file(channel_files[0]), tol);
      r.report = {{"map_entropy", qentropy::map_entropy(phi, tol)}, {"dim", phi.dim()}};
      return r;
    }
    if (channel_files.size() != 2) throw Error(ErrorKind::InvalidArgument, "map-entropy takes one or two channel files");
    const KrausChannel phi = channel_from_json(read_json_file(channel_files[0]), tol);
    const KrausChannel psi = channel_from_json(read_json_file(channel_files[1]), tol);
    const MapEntropyReport rep = map_entropy_preservation_report(phi, psi, tol);
    r.report = to_json(rep);
    r.status = rep.entropy_equal && rep.fixed_point ? Status::Ok : Status::Violated;
    if (!rep.agreement) r.diagnostics.emplace_back("map-entropy and fixed-point verdicts disagree");
    return r;
  });
}

CommandResult classical_check(const std::filesystem::path& input, const Tolerances& tol) {
  return guarded(tol, [&] {
    const std::vector<ClassicalCase> cases = read_classical_file(input);
    json rows = json::array();
    std::size_t preserved = 0;
    std::size_t disagreements = 0;
    CommandResult r;
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const StochasticMatrix b = StochasticMatrix::validate(cases[i].b, tol);
      if (!b.bistochastic()) {
        std::ostringstream msg;
        msg << "instance " << i << ": matrix is not bistochastic (column residual " << b.column_residual()
            << ", row residual " << b.row_residual() << ")";
        throw Error(ErrorKind::NotBistochastic, msg.str());
      }
      const ProbabilityVector p = ProbabilityVector::validate(cases[i].p, tol);
      const CorollaryReport rep = corollary_check(b, p, tol);
      json row = to_json(rep);
      row["index"] = i;
      rows.push_back(std::move(row));
      if (rep.entropy_preserved && rep.fixed_point) ++preserved;
      if (!rep.agreement) {
        ++disagreements;
        r.diagnostics.push_back("instance " + std::to_string(i) + ": verdicts disagree");
      }
    }
    r.report = {{"instances", std::move(rows)},
                {"summary",
                 {{"count", cases.size()},
                  {"preserved", preserved},
                  {"not_preserved", cases.size() - preserved - disagreements},
                  {"disagreements", disagreements}}}};
    r.status = disagreements == 0 ? Status::Ok : Status::Violated;
    return r;
  });
}

CommandResult synthesize(const std::string& spec, std::uint64_t seed, const std::filesystem::path& out_dir,
                         const Tolerances& tol) {
  return guarded(tol, [&] {
    const SynthesizedPair pair = synthesize_pair(parse_block_spec(spec), seed);
    std::filesystem::create_directories(out_dir);
    write_json_file(out_dir / "channel.json", channel_to_json(pair.channel));
    write_json_file(out_dir / "state.json", state_to_json(pair.state));
    write_json_file(out_dir / "structure.json", structure_to_json(pair.structure));

    // Self-check from the written files, as analyze-pair would see them.
    const KrausChannel phi = channel_from_json(read_json_file(out_dir / "channel.json"), tol);
    const DensityMatrix rho = state_from_json(read_json_file(out_dir / "state.json"), tol);
    const PreservationReport rep = entropy_preservation_report(phi, rho, tol);
    const BlockVerification ver = inspect_block_structure(pair.structure, phi, rho, tol);
    CommandResult r;
    r.report = {{"spec", spec},
                {"seed", seed},
                {"dim", phi.dim()},
                {"files", {(out_dir / "channel.json").string(), (out_dir / "state.json").string(),
                           (out_dir / "structure.json").string()}},
                {"self_check", to_json(rep)},
                {"structure_check", to_json(ver)}};
    r.status = rep.preserved() && ver.passed() ? Status::Ok : Status::Violated;
    if (!ver.passed()) r.diagnostics.push_back("structure check failed: " + ver.failed_check);
    return r;
  });
}

json generate(const GenRequest& req) {
  if (req.dim < 1) throw Error(ErrorKind::InvalidArgument, "--dim must be positive");
  Rng rng(req.seed);
  if (req.kind == "density") {
    return state_to_json(random_density(req.dim, req.rank == 0 ? req.dim : req.rank, rng));
  }
  if (req.kind == "unitary") return matrix_to_json(random_unitary(req.dim, rng));
  if (req.kind == "bistochastic-channel") return channel_to_json(random_bistochastic_channel(req.dim, req.count, rng));
  if (req.kind == "stochastic-channel") return channel_to_json(random_stochastic_channel(req.dim, req.env, rng));
  if (req.kind == "bistochastic-matrix") {
    const StochasticMatrix b = random_bistochastic_matrix(req.dim, req.count, rng);
    json rows = json::array();
    for (Eigen::Index i = 0; i < b.dim(); ++i) rows.push_back(to_std(b.entries().row(i).transpose()));
    return {{"dim", req.dim}, {"matrix", std::move(rows)}, {"p", random_probability(req.dim, rng)}};
  }
  throw Error(ErrorKind::InvalidArgument, "unknown generator '" + req.kind + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropy-preservation checks for quantum channels"};
  app.require_subcommand(1);

  ToleranceFlags flags;
  double tol_eq = 0.0, tol_fix = 0.0, tol_psd = 0.0;
  auto* opt_eq = app.add_option("--tol-eq", tol_eq, "entropy / channel equality tolerance")->type_name("X");
  auto* opt_fix = app.add_option("--tol-fix", tol_fix, "fixed-point residual tolerance")->type_name("X");
  auto* opt_psd = app.add_option("--tol-psd", tol_psd, "eigenvalue clipping tolerance")->type_name("X");
  for (auto* o : {opt_eq, opt_fix, opt_psd}) o->configurable(false);

  std::string state_file, channel_file, input_file, spec, out_dir = ".", out_file;
  std::vector<std::string> channel_files;
  std::uint64_t seed = 0;
  GenRequest gen;

  auto* c_state = app.add_subcommand("analyze-state", "entropy, spectrum and rank of a state");
  c_state->add_option("state", state_file)->required();

  auto* c_pair = app.add_subcommand("analyze-pair", "entropy preservation of a state under a bistochastic channel");
  c_pair->add_option("channel", channel_file)->required();
  c_pair->add_option("state", state_file)->required();

  auto* c_dec = app.add_subcommand("decompose", "block structure of the fixed-point algebra");
  c_dec->add_option("channel", channel_file)->required();
  c_dec->add_option("--seed", seed);

  auto* c_map = app.add_subcommand("map-entropy", "map entropy of a channel, or preservation under composition");
  c_map->add_option("channels", channel_files)->required()->expected(1, 2);

  auto* c_cls = app.add_subcommand("classical-check", "Shannon-entropy preservation for (B, p) batches");
  c_cls->add_option("input", input_file)->required();

  auto* c_syn = app.add_subcommand("synthesize", "build an entropy-preserving (channel, state) pair");
  c_syn->add_option("--spec", spec, "blocks as dLxdR, comma separated")->required();
  c_syn->add_option("--seed", seed);
  c_syn->add_option("--out-dir", out_dir);

  auto* c_gen = app.add_subcommand("gen", "random objects in the shared file formats");
  c_gen->add_option("kind", gen.kind)
      ->required()
      ->check(CLI::IsMember({"density", "unitary", "bistochastic-channel", "stochastic-channel", "bistochastic-matrix"}));
  c_gen->add_option("--dim", gen.dim);
  c_gen->add_option("--rank", gen.rank);
  c_gen->add_option("--count", gen.count);
  c_gen->add_option("--env", gen.env);
  c_gen->add_option("--seed", gen.seed);
  c_gen->add_option("--out", out_file);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  if (opt_eq->count() > 0) flags.eq = tol_eq;
  if (opt_fix->count() > 0) flags.fix = tol_fix;
  if (opt_psd->count() > 0) flags.psd = tol_psd;

  Tolerances tol;
  try {
    tol = resolve_tolerances(flags);
  } catch (const Error& e) {
    CommandResult r = failure(e);
    out << dump_json(r.envelope()) << "\n";
    return r.exit_code();
  }

  if (c_gen->parsed()) {
    try {
      const json j = generate(gen);
      if (out_file.empty()) {
        out << dump_json(j) << "\n";
      } else {
        write_json_file(out_file, j);
      }
      return 0;
    } catch (const Error& e) {
      CommandResult r = failure(e);
      out << dump_json(r.envelope()) << "\n";
      return r.exit_code();
    }
  }

  CommandResult r;
  if (c_state->parsed()) {
    r = analyze_state(state_file, tol);
  } else if (c_pair->parsed()) {
    r = analyze_pair(channel_file, state_file, tol);
  } else if (c_dec->parsed()) {
    r = decompose(channel_file, seed, tol);
  } else if (c_map->parsed()) {
    r = map_entropy({channel_files.begin(), channel_files.end()}, tol);
  } else if (c_cls->parsed()) {
    r = classical_check(input_file, tol);
  } else {
    r = synthesize(spec, seed, out_dir, tol);
  }
  out << dump_json(r.envelope()) << "\n";
  for (const std::string& d : r.diagnostics) err << d << "\n";
  return r.exit_code();
}

}  // namespace qentropy::cli
