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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qentropy/choi.hpp"
#include "qentropy/classical.hpp"
#include "qentropy/entropy_analysis.hpp"
#include "qentropy/generators.hpp"

using namespace qentropy;

namespace {

// Pinned thresholds.
constexpr double kPreservedEntropyGap = 1e-8;   // criterion 1, bits
constexpr double kNonPreservingFilter = 10.0;   // criterion 1, multiple of eps_fix
constexpr double kAlgebraFormResidual = 1e-6;   // criterion 2
constexpr double kMonotonicSlack = 1e-8;        // criterion 3
constexpr double kMapIdentity = 1e-10;          // criterion 5
constexpr double kMapDepolarizing = 1e-8;       // criterion 5
constexpr double kChoiRoundTrip = 1e-8;         // criterion 6, times N^2
constexpr double kChoiTrace = 1e-8;             // criterion 6, times N
constexpr double kShannonGap = 1e-9;            // criterion 7
constexpr double kClassicalFixed = 1e-8;        // criterion 7
constexpr double kKrausMatrixEntry = 1e-9;      // criterion 7
constexpr double kCrossEntropy = 1e-10;         // criterion 8

const Tolerances kTol{};  // library defaults: eq 1e-8, fix 1e-7, group 1e-6

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

using DimList = std::vector<std::pair<Eigen::Index, Eigen::Index>>;

DimList sorted_dims(const std::vector<Block>& blocks) {
  DimList d;
  for (const Block& b : blocks) d.emplace_back(b.dl, b.dr);
  std::sort(d.begin(), d.end());
  return d;
}

DimList sorted_dims(const BlockSpec& s) {
  DimList d;
  for (const auto& x : s.dims) d.emplace_back(x.dl, x.dr);
  std::sort(d.begin(), d.end());
  return d;
}

// Random block dimensions with total dimension in [lo, hi].
BlockSpec random_spec(Rng& rng, Eigen::Index lo, Eigen::Index hi) {
  const auto target = lo + static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(hi - lo + 1)));
  BlockSpec spec;
  Eigen::Index left = target;
  while (left > 0) {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> options;
    for (Eigen::Index dl = 1; dl <= 4; ++dl)
      for (Eigen::Index dr = 1; dr <= 4; ++dr)
        if (dl * dr <= left) options.emplace_back(dl, dr);
    const auto pick = options[rng.index(options.size())];
    spec.dims.push_back({pick.first, pick.second});
    left -= pick.first * pick.second;
  }
  return spec;
}

std::string spec_string(const BlockSpec& s) {
  std::string out;
  for (const auto& d : s.dims) out += (out.empty() ? "" : ",") + std::to_string(d.dl) + "x" + std::to_string(d.dr);
  return out;
}

// Distance of x from (+)_k V_k (A (x) I) V_k^dagger, with the best A per block.
double block_form_distance(const std::vector<Block>& blocks, const CMatrix& x) {
  CMatrix model = CMatrix::Zero(x.rows(), x.cols());
  for (const Block& b : blocks) {
    const CMatrix c = b.isometry.adjoint() * x * b.isometry;
    const CMatrix left = oracle::trace_second(c, b.dl, b.dr) / static_cast<double>(b.dr);
    model += b.isometry * kron(left, CMatrix::Identity(b.dr, b.dr)) * b.isometry.adjoint();
  }
  return (x - model).norm();
}

Outcome entropy_fixed_point_agreement() {
  Rng rng(1001);
  int instances = 0, agree = 0, preserving_ok = 0, nonpreserving = 0, rejected = 0;
  double worst_gap = 0.0;
  for (int t = 0; t < 100; ++t) {
    const BlockSpec spec = random_spec(rng, 2, 6);
    const SynthesizedPair p = synthesize_pair(spec, 5000 + static_cast<std::uint64_t>(t));
    const PreservationReport r = entropy_preservation_report(p.channel, p.state, kTol);
    ++instances;
    agree += r.entropy_equal == r.fixed_point;
    worst_gap = std::max(worst_gap, r.entropy_gap);
    preserving_ok += r.entropy_gap <= kPreservedEntropyGap && r.fixed_point;
  }
  while (nonpreserving < 100) {
    const auto n = static_cast<Eigen::Index>(2 + rng.index(5));
    const KrausChannel phi = random_bistochastic_channel(n, 2 + rng.index(3), rng);
    const DensityMatrix rho =
        random_density(n, static_cast<Eigen::Index>(1 + rng.index(static_cast<std::size_t>(n))), rng);
    const PreservationReport r = entropy_preservation_report(phi, rho, kTol);
    if (r.residual_fix <= kNonPreservingFilter * kTol.fix) {
      ++rejected;
      continue;
    }
    ++instances;
    ++nonpreserving;
    agree += r.entropy_equal == r.fixed_point;
  }
  return {agree == instances && preserving_ok == 100,
          fmt("instances=%d agree=%d preserving_within_gap=%d/100 max_dS_preserving=%.3g filtered_out=%d", instances,
              agree, preserving_ok, worst_gap, rejected)};
}

Outcome structure_round_trip() {
  Rng rng(2002);
  int specs = 0, dims_ok = 0;
  double worst = 0.0;
  std::string first_bad;
  for (int t = 0; t < 60; ++t) {
    const BlockSpec spec = random_spec(rng, 1, 8);
    const SynthesizedPair p = synthesize_pair(spec, 7000 + static_cast<std::uint64_t>(t));
    const FixedPointBasis fix = fixed_point_space(p.channel, kTol);
    ++specs;
    try {
      const BlockStructure b = decompose_fixed_point_algebra(fix, kTol, static_cast<std::uint64_t>(t));
      const bool same = sorted_dims(b.blocks) == sorted_dims(spec);
      double form = 0.0;
      for (const CMatrix& f : fix.basis) form = std::max(form, block_form_distance(b.blocks, f));
      worst = std::max(worst, form);
      if (same && form <= kAlgebraFormResidual) {
        ++dims_ok;
      } else if (first_bad.empty()) {
        first_bad = spec_string(spec);
      }
    } catch (const Error& e) {
      if (first_bad.empty()) first_bad = spec_string(spec) + " (" + e.what() + ")";
    }
  }
  return {dims_ok == specs, fmt("specs=%d recovered=%d max_form_residual=%.3g%s%s", specs, dims_ok, worst,
                                first_bad.empty() ? "" : " first_failure=", first_bad.c_str())};
}

Outcome monotonicity() {
  Rng rng(3003);
  int rel_ok = 0, ent_ok = 0;
  double worst_rel = -1e300, worst_ent = 1e300;
  for (int t = 0; t < 500; ++t) {
    const auto n = static_cast<Eigen::Index>(2 + rng.index(5));
    const KrausChannel phi = random_stochastic_channel(n, static_cast<Eigen::Index>(1 + rng.index(3)), rng);
    const DensityMatrix rho =
        random_density(n, static_cast<Eigen::Index>(1 + rng.index(static_cast<std::size_t>(n))), rng);
    const DensityMatrix sigma = random_density(n, n, rng);
    const MonotonicityReport r = entropy_monotonicity_check(phi, rho, sigma, kTol);
    worst_rel = std::max(worst_rel, r.relative_out - r.relative_in);
    rel_ok += r.relative_out <= r.relative_in + kMonotonicSlack;
  }
  for (int t = 0; t < 500; ++t) {
    const auto n = static_cast<Eigen::Index>(2 + rng.index(5));
    const KrausChannel phi = random_bistochastic_channel(n, 1 + rng.index(4), rng);
    const DensityMatrix rho =
        random_density(n, static_cast<Eigen::Index>(1 + rng.index(static_cast<std::size_t>(n))), rng);
    const double gain = von_neumann_entropy(qentropy::apply(phi, rho, kTol)) - von_neumann_entropy(rho);
    worst_ent = std::min(worst_ent, gain);
    ent_ok += gain >= -kMonotonicSlack;
  }
  return {rel_ok == 500 && ent_ok == 500,
          fmt("relative=%d/500 max_increase=%.3g entropy=%d/500 min_gain=%.3g", rel_ok, worst_rel, ent_ok, worst_ent)};
}

Outcome recovery_agreement() {
  Rng rng(4004);
  int total = 0, agree = 0, equal_side = 0, strict_side = 0;
  for (int t = 0; t < 240; ++t) {
    const auto n = static_cast<Eigen::Index>(2 + rng.index(4));
    const DensityMatrix rho =
        random_density(n, static_cast<Eigen::Index>(1 + rng.index(static_cast<std::size_t>(n))), rng);
    const DensityMatrix sigma = random_density(n, n, rng);
    KrausChannel phi = identity_channel(n);
    switch (t % 3) {
      case 0: phi = unitary_channel(random_unitary(n, rng)); break;
      case 1: phi = random_stochastic_channel(n, 2 + static_cast<Eigen::Index>(rng.index(2)), rng); break;
      default: phi = compose(depolarizing(n, 0.2 + 0.6 * rng.uniform()), unitary_channel(random_unitary(n, rng)));
    }
    const PetzReport r = check_petz_equality(phi, rho, sigma, kTol);
    ++total;
    agree += r.equality == r.recovered;
    equal_side += r.equality;
    strict_side += !r.equality;
  }
  return {agree == total && equal_side >= 50 && strict_side >= 50,
          fmt("triples=%d agree=%d equality=%d strict=%d", total, agree, equal_side, strict_side)};
}

Outcome map_entropy_agreement() {
  Rng rng(5005);
  int total = 0, agree = 0, preserved = 0;
  for (int t = 0; t < 120; ++t) {
    const auto n = static_cast<Eigen::Index>(2 + rng.index(3));
    KrausChannel phi = identity_channel(n);
    switch (t % 4) {
      case 0: phi = unitary_channel(random_unitary(n, rng)); break;
      case 1: phi = dephasing(n); break;
      case 2: phi = depolarizing(n, 0.1 + 0.9 * rng.uniform()); break;
      default: phi = fully_depolarizing(n);
    }
    // Dephased inputs make the dephasing cases land on both sides.
    KrausChannel psi = random_stochastic_channel(n, static_cast<Eigen::Index>(1 + rng.index(3)), rng);
    if (t % 8 == 1) psi = compose(dephasing(n), psi);
    const MapEntropyReport r = map_entropy_preservation_report(phi, psi, kTol);
    ++total;
    agree += r.entropy_equal == r.fixed_point;
    preserved += r.entropy_equal;
  }
  const double s_id = map_entropy(identity_channel(3), kTol);
  const double s_dep = map_entropy(fully_depolarizing(2), kTol);
  const bool spots = std::abs(s_id) <= kMapIdentity && std::abs(s_dep - 2.0) <= kMapDepolarizing;
  return {agree == total && spots,
          fmt("pairs=%d agree=%d preserved=%d S_map(id)=%.3g S_map(depol,N=2)=%.17g", total, agree, preserved, s_id,
              s_dep)};
}

Outcome choi_round_trip() {
  Rng rng(6006);
  int total = 0, round_ok = 0, tp_ok = 0;
  double worst = 0.0;
  for (int t = 0; t < 120; ++t) {
    const auto n = static_cast<Eigen::Index>(1 + rng.index(5));
    const KrausChannel phi = random_stochastic_channel(n, static_cast<Eigen::Index>(1 + rng.index(4)), rng);
    const double nn = static_cast<double>(n * n);
    const ChoiMatrix j = choi_matrix(phi);
    const KrausChannel back = channel_from_choi(j, kTol);
    const double d = (superoperator_matrix(back).matrix - oracle::superop(phi.kraus(), n)).norm();
    worst = std::max(worst, d / nn);
    round_ok += d <= kChoiRoundTrip * nn;

    // Trace-preservation verdicts from the Kraus operators and from the Choi matrix must match,
    // on the channel and on a lossy copy of it.
    const double shrink = t % 2 == 0 ? 1.0 : 0.5 + 0.4 * rng.uniform();
    std::vector<CMatrix> ks;
    for (const CMatrix& m : phi.kraus()) ks.push_back(std::sqrt(shrink) * m);
    const KrausChannel lossy(std::move(ks));
    const double pt = (trace_output(choi_matrix(lossy)) - CMatrix::Identity(n, n)).norm();
    const bool by_choi = pt <= kChoiTrace * static_cast<double>(n);
    tp_ok += by_choi == classify(lossy, kTol).stochastic && by_choi == (shrink == 1.0);
    ++total;
  }
  return {round_ok == total && tp_ok == total,
          fmt("channels=%d round_trip=%d max_dist/N^2=%.3g tp_verdicts=%d", total, round_ok, worst, tp_ok)};
}

RMatrix permutation_matrix(const std::vector<std::size_t>& perm) {
  const auto n = static_cast<Eigen::Index>(perm.size());
  RMatrix p = RMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) p(static_cast<Eigen::Index>(perm[static_cast<std::size_t>(j)]), j) = 1.0;
  return p;
}

Outcome classical_corollary() {
  Rng rng(7007);
  int total = 0, coincide = 0, pos = 0, neg = 0;
  for (int t = 0; t < 600; ++t) {
    const auto n = static_cast<Eigen::Index>(2 + rng.index(7));
    RMatrix b;
    std::vector<double> p;
    switch (t % 3) {
      case 0: {
        const ClassicalInstance inst = preserving_classical_instance(n, rng);
        b = inst.b.entries();
        p.assign(inst.p.values().data(), inst.p.values().data() + n);
        break;
      }
      case 1:
        b = permutation_matrix(rng.permutation(static_cast<std::size_t>(n)));
        p = random_probability(n, rng);
        break;
      default:
        b = random_bistochastic_matrix(n, 2 + rng.index(4), rng).entries();
        p = random_probability(n, rng);
    }
    const RVector pv = Eigen::Map<const RVector>(p.data(), n);
    const RVector q = b * pv;
    const double dh = std::abs(oracle::shannon({q.data(), q.data() + n}) - oracle::shannon(p));
    const double fixed = (b.transpose() * q - pv).norm();
    const bool a = dh <= kShannonGap, c = fixed <= kClassicalFixed;
    ++total;
    coincide += a == c;
    pos += a && c;
    neg += !a && !c;
    // The library report must reach the same pair of verdicts.
    const CorollaryReport r = corollary_check(StochasticMatrix::validate(b), ProbabilityVector::validate(p), kTol);
    coincide -= (r.entropy_preserved != a || r.fixed_point != c) ? 1 : 0;
  }

  int adj_ok = 0;
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<Eigen::Index>(2 + rng.index(6));
    const KrausChannel phi = random_stochastic_channel(n, static_cast<Eigen::Index>(1 + rng.index(3)), rng);
    RMatrix b = RMatrix::Zero(n, n), bt = RMatrix::Zero(n, n);
    for (const CMatrix& m : phi.kraus()) {
      b += m.cwiseAbs2();
      bt += m.adjoint().cwiseAbs2();
    }
    const double lib = (kraus_matrix(phi, kTol).entries() - b).cwiseAbs().maxCoeff();
    adj_ok += (bt - b.transpose()).cwiseAbs().maxCoeff() <= kKrausMatrixEntry && lib <= kKrausMatrixEntry;
  }

  int inv_ok = 0;
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<Eigen::Index>(2 + rng.index(7));
    const StochasticMatrix tm = random_bistochastic_matrix(n, 1 + rng.index(5), rng);
    const StochasticMatrix back = kraus_matrix(channel_from_bistochastic(tm, kTol), kTol);
    inv_ok += (back.entries() - tm.entries()).cwiseAbs().maxCoeff() <= kKrausMatrixEntry;
  }
  return {coincide == total && pos > 0 && neg > 0 && adj_ok == 100 && inv_ok == 100,
          fmt("instances=%d coincide=%d preserving=%d non_preserving=%d adjoint_transpose=%d/100 inverse=%d/100",
              total, coincide, pos, neg, adj_ok, inv_ok)};
}

Outcome cross_module() {
  Rng rng(8008);
  int ent_ok = 0, bridge_ok = 0;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<Eigen::Index>(1 + rng.index(8));
    const std::vector<double> p = random_probability(n, rng);
    const double d = std::abs(shannon_entropy(ProbabilityVector::validate(p)) - von_neumann_entropy(diagonal_state(p)));
    worst = std::max(worst, d);
    ent_ok += d <= kCrossEntropy;
  }
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<Eigen::Index>(2 + rng.index(5));
    const KrausChannel phi = t % 2 == 0 ? random_stochastic_channel(n, 2, rng) : random_bistochastic_channel(n, 3, rng);
    const BridgeReport r = bridge_check(phi, diagonal_state(random_probability(n, rng)), kTol);
    bridge_ok += r.passed;
  }
  return {ent_ok == 100 && bridge_ok == 100,
          fmt("entropy=%d/100 max_diff=%.3g bridge=%d/100", ent_ok, worst, bridge_ok)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "entropy-equality-vs-fixed-point", entropy_fixed_point_agreement},
      {2, "block-structure-round-trip", structure_round_trip},
      {3, "relative-entropy-monotonicity", monotonicity},
      {4, "relative-entropy-equality-vs-recovery", recovery_agreement},
      {5, "map-entropy-agreement", map_entropy_agreement},
      {6, "choi-round-trip", choi_round_trip},
      {7, "classical-corollary", classical_corollary},
      {8, "cross-module-consistency", cross_module},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%d] %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
