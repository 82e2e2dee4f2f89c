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

#include "qentropy/entropy_analysis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "qentropy/generators.hpp"

namespace qentropy {

namespace {

DensityMatrix output_state(const KrausChannel& phi, const DensityMatrix& rho, const Tolerances& tol) {
  if (phi.dim() != rho.dim()) throw Error(ErrorKind::DimensionMismatch, "state and channel dimensions differ");
  return qentropy::apply(phi, rho, tol);
}

RelativeEntropy checked_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                                         const Tolerances& tol) {
  RelativeEntropy d = relative_entropy_detail(rho, sigma, tol);
  if (!d.finite()) {
    std::ostringstream msg;
    msg << "supp(rho) is not contained in supp(sigma): ||(I - P_sigma) P_rho||_F = " << d.support_residual;
    throw Error(ErrorKind::SupportViolation, msg.str());
  }
  return d;
}

}  // namespace

PreservationReport entropy_preservation_report(const KrausChannel& phi, const DensityMatrix& rho,
                                               const Tolerances& tol) {
  require_bistochastic(phi, tol);
  const DensityMatrix out = output_state(phi, rho, tol);
  PreservationReport r{};
  r.entropy_in = von_neumann_entropy(rho);
  r.entropy_out = von_neumann_entropy(out);
  r.entropy_gap = std::abs(r.entropy_out - r.entropy_in);
  r.residual_fix = (qentropy::apply(adjoint(phi), out.matrix()) - rho.matrix()).norm();
  r.entropy_equal = r.entropy_gap <= tol.eq;
  r.fixed_point = r.residual_fix <= tol.fix;
  r.agreement = r.entropy_equal == r.fixed_point;
  return r;
}

MonotonicityReport entropy_monotonicity_check(const KrausChannel& phi, const DensityMatrix& rho,
                                              const DensityMatrix& sigma, const Tolerances& tol) {
  require_stochastic(phi, tol);
  if (rho.dim() != sigma.dim()) throw Error(ErrorKind::DimensionMismatch, "states differ in dimension");
  const RelativeEntropy before = checked_relative_entropy(rho, sigma, tol);
  const DensityMatrix phi_rho = output_state(phi, rho, tol);
  const DensityMatrix phi_sigma = output_state(phi, sigma, tol);
  MonotonicityReport r{};
  r.relative_in = before.value;
  r.relative_out = relative_entropy(phi_rho, phi_sigma, tol);
  r.slack = r.relative_in - r.relative_out;
  r.holds = r.slack >= -tol.eq;
  const Eigen::Index n = rho.dim();
  const bool maximally_mixed_reference =
      (sigma.matrix() - CMatrix::Identity(n, n) / static_cast<double>(n)).norm() <= tol.eq;
  const ChannelClass c = classify(phi, tol);
  if (c.kind == ChannelKind::Bistochastic && maximally_mixed_reference) {
    r.entropy_gain = von_neumann_entropy(phi_rho) - von_neumann_entropy(rho);
    r.holds = r.holds && *r.entropy_gain >= -tol.eq;
  }
  return r;
}

PetzReport check_petz_equality(const KrausChannel& phi, const DensityMatrix& rho, const DensityMatrix& sigma,
                               const Tolerances& tol) {
  require_stochastic(phi, tol);
  if (rho.dim() != sigma.dim()) throw Error(ErrorKind::DimensionMismatch, "states differ in dimension");
  const RelativeEntropy before = checked_relative_entropy(rho, sigma, tol);
  const DensityMatrix phi_rho = output_state(phi, rho, tol);
  const DensityMatrix phi_sigma = output_state(phi, sigma, tol);
  const KrausChannel recovery = petz_recovery(phi, sigma, tol);
  PetzReport r{};
  r.relative_in = before.value;
  r.relative_out = relative_entropy(phi_rho, phi_sigma, tol);
  r.relative_gap = std::abs(r.relative_in - r.relative_out);
  r.recovery_residual = (qentropy::apply(recovery, phi_rho.matrix()) - rho.matrix()).norm();
  r.equality = r.relative_gap <= tol.eq;
  r.recovered = r.recovery_residual <= tol.fix;
  r.agreement = r.equality == r.recovered;
  return r;
}

namespace {

// Hermitian orthonormal basis of span(basis) when that span is closed under
// the adjoint; nullopt otherwise.
std::optional<std::vector<CMatrix>> hermitian_basis(const std::vector<CMatrix>& basis, double rel_cut) {
  if (basis.empty()) return std::vector<CMatrix>{};
  const Eigen::Index n = basis.front().rows();
  const Eigen::Index n2 = n * n;
  const auto m = static_cast<Eigen::Index>(basis.size());
  RMatrix real(2 * n2, 2 * m);
  const Complex i_unit(0.0, 1.0);
  for (Eigen::Index j = 0; j < m; ++j) {
    const CMatrix& f = basis[static_cast<std::size_t>(j)];
    const CVector h = vec(0.5 * (f + f.adjoint()));
    const CVector k = vec((f - f.adjoint()) / (2.0 * i_unit));
    real.col(2 * j) << h.real(), h.imag();
    real.col(2 * j + 1) << k.real(), k.imag();
  }
  Eigen::JacobiSVD<RMatrix> svd(real, Eigen::ComputeThinU);
  const RVector& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > rel_cut * sv(0)) ++rank;
  if (rank != m) return std::nullopt;
  std::vector<CMatrix> out;
  out.reserve(basis.size());
  for (Eigen::Index k = 0; k < m; ++k) {
    const RVector u = svd.matrixU().col(k);
    CVector v(n2);
    for (Eigen::Index t = 0; t < n2; ++t) v(t) = Complex(u(t), u(n2 + t));
    out.push_back(hermitian_part(unvec(v, n, n)));
  }
  return out;
}

}  // namespace

FixedPointBasis fixed_point_space(const KrausChannel& phi, const Tolerances& tol) {
  require_bistochastic(phi, tol);
  const Eigen::Index n = phi.dim();
  const CMatrix s = superoperator_matrix(phi).matrix;
  const CMatrix t = s.adjoint() * s;  // Hermitian PSD matrix of phi^dagger o phi
  const Spectrum spec = hermitian_spectrum(t);
  Eigen::Index m = 0;
  while (m < spec.eigenvalues.size() && spec.eigenvalues(m) >= 1.0 - tol.fix) ++m;

  FixedPointBasis out;
  out.dim = n;
  out.spectral_gap = m < spec.eigenvalues.size() ? 1.0 - spec.eigenvalues(m) : 1.0;
  std::vector<CMatrix> raw;
  for (Eigen::Index k = 0; k < m; ++k) raw.push_back(unvec(spec.eigenvectors.col(k), n, n));
  if (auto herm = hermitian_basis(raw, tol.group)) {
    out.basis = std::move(*herm);
    out.hermitian = true;
  } else {
    out.basis = std::move(raw);
    out.hermitian = false;
  }
  for (const CMatrix& f : out.basis) {
    const CVector v = vec(f);
    out.eigenvalue_residuals.push_back((t * v - v).norm());
  }
  return out;
}

namespace {

struct Grouping {
  std::vector<std::vector<Eigen::Index>> groups;
  bool ambiguous = false;
};

// Groups descending eigenvalues whose consecutive gaps are below rel_gap times
// the spectral scale. Gaps within two decades of the cut count as ambiguous.
Grouping group_eigenvalues(const RVector& values, double rel_gap) {
  Grouping g;
  if (values.size() == 0) return g;
  const double scale = values.cwiseAbs().maxCoeff();
  g.groups.push_back({0});
  for (Eigen::Index k = 1; k < values.size(); ++k) {
    const double rel = scale > 0.0 ? (values(k - 1) - values(k)) / scale : 0.0;
    if (rel > 1e-2 * rel_gap && rel <= 1e2 * rel_gap) g.ambiguous = true;
    if (rel > rel_gap) g.groups.emplace_back();
    g.groups.back().push_back(k);
  }
  return g;
}

CMatrix columns(const CMatrix& m, const std::vector<Eigen::Index>& idx) {
  CMatrix out(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = m.col(idx[k]);
  return out;
}

double vec_norm_residual(const CMatrix& basis_vecs, const CVector& v) {
  return (v - basis_vecs * (basis_vecs.adjoint() * v)).norm();
}

// Distance of X from (+)_k V_k (A_k (x) I) V_k^dagger with A_k the best fit.
double block_form_residual(const std::vector<Block>& blocks, const CMatrix& x) {
  CMatrix model = CMatrix::Zero(x.rows(), x.cols());
  for (const Block& b : blocks) {
    const CMatrix c = b.isometry.adjoint() * x * b.isometry;
    const CMatrix left = partial_trace_right(c, b.dl, b.dr) / static_cast<double>(b.dr);
    model += b.isometry * kron(left, CMatrix::Identity(b.dr, b.dr)) * b.isometry.adjoint();
  }
  return (x - model).norm();
}

struct Attempt {
  std::optional<BlockStructure> result;
  ErrorKind failure = ErrorKind::AmbiguousGrouping;
  std::string reason;
};

Attempt decompose_attempt(const std::vector<CMatrix>& herm, const CMatrix& center_null, Eigen::Index n,
                          const Tolerances& tol, Rng& rng) {
  Attempt at;
  const auto m = static_cast<Eigen::Index>(herm.size());
  const Eigen::Index k_center = center_null.cols();

  // Generic Hermitian central element.
  RVector coeff = RVector::Zero(m);
  for (Eigen::Index k = 0; k < k_center; ++k) {
    coeff += rng.normal() * center_null.col(k).real();
    coeff += rng.normal() * center_null.col(k).imag();
  }
  CMatrix z = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < m; ++i) z += coeff(i) * herm[static_cast<std::size_t>(i)];
  const Spectrum zs = hermitian_spectrum(z);
  const Grouping central = group_eigenvalues(zs.eigenvalues, tol.group);
  if (central.ambiguous || static_cast<Eigen::Index>(central.groups.size()) != k_center) {
    std::ostringstream msg;
    msg << "central element gave " << central.groups.size() << " eigenvalue groups for a center of dimension "
        << k_center << (central.ambiguous ? " (ambiguous gap)" : "");
    at.reason = msg.str();
    return at;
  }

  BlockStructure out;
  out.dim = n;
  for (const auto& group : central.groups) {
    const CMatrix q = columns(zs.eigenvectors, group);
    const Eigen::Index r = q.cols();
    std::vector<CMatrix> compressed;
    compressed.reserve(herm.size());
    CMatrix vecs(r * r, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      compressed.push_back(q.adjoint() * herm[static_cast<std::size_t>(i)] * q);
      vecs.col(i) = vec(compressed.back());
    }
    Eigen::JacobiSVD<CMatrix> svd(vecs);
    const RVector& sv = svd.singularValues();
    Eigen::Index mk = 0;
    for (Eigen::Index t = 0; t < sv.size(); ++t)
      if (sv(t) > tol.group * std::max(1.0, sv(0))) ++mk;
    const auto dl = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(mk))));
    if (dl * dl != mk || dl == 0 || r % dl != 0) {
      std::ostringstream msg;
      msg << "block of rank " << r << " carries an algebra of dimension " << mk
          << ", not a full matrix algebra tensored with an identity";
      at.failure = ErrorKind::NotAnAlgebra;
      at.reason = msg.str();
      return at;
    }
    const Eigen::Index dr = r / dl;
    if (dl == 1) {
      out.blocks.push_back({q, dl, dr});
      continue;
    }

    // Generic Hermitian element of the block: dl eigenvalues, each dr-fold.
    CMatrix h = CMatrix::Zero(r, r);
    for (const CMatrix& c : compressed) h += rng.normal() * c;
    const Spectrum hs = hermitian_spectrum(h);
    const Grouping local = group_eigenvalues(hs.eigenvalues, tol.group);
    bool shape_ok = !local.ambiguous && static_cast<Eigen::Index>(local.groups.size()) == dl;
    for (const auto& g : local.groups) shape_ok = shape_ok && static_cast<Eigen::Index>(g.size()) == dr;
    if (!shape_ok) {
      std::ostringstream msg;
      msg << "generic block element did not split into " << dl << " eigenspaces of dimension " << dr;
      at.reason = msg.str();
      return at;
    }

    // Matrix units: map the first eigenspace onto the others with the polar
    // part of a generic connecting element.
    CMatrix g = CMatrix::Zero(r, r);
    for (const CMatrix& c : compressed) g += Complex(rng.normal(), rng.normal()) * c;
    const CMatrix y0 = columns(hs.eigenvectors, local.groups.front());
    CMatrix w(r, r);
    w.leftCols(dr) = y0;
    for (Eigen::Index a = 1; a < dl; ++a) {
      const CMatrix ya = columns(hs.eigenvectors, local.groups[static_cast<std::size_t>(a)]);
      const CMatrix connect = ya.adjoint() * g * y0;
      const RVector s = Eigen::JacobiSVD<CMatrix>(connect).singularValues();
      if (s(0) <= tol.group * g.norm() || s(s.size() - 1) < 0.5 * s(0)) {
        at.reason = "connecting element between eigenspaces is degenerate";
        return at;
      }
      w.middleCols(a * dr, dr) = ya * polar_unitary(connect);
    }
    out.blocks.push_back({q * w, dl, dr});
  }

  for (const CMatrix& f : herm) out.algebra_residual = std::max(out.algebra_residual, block_form_residual(out.blocks, f));
  if (out.algebra_residual > tol.group) {
    std::ostringstream msg;
    msg << "conjugated basis deviates from the block form by " << out.algebra_residual;
    at.reason = msg.str();
    return at;
  }
  at.result = std::move(out);
  return at;
}

}  // namespace

void canonicalize(BlockStructure& b) {
  auto key = [](const CMatrix& v) {
    std::vector<double> k;
    k.reserve(static_cast<std::size_t>(2 * v.size()));
    for (Eigen::Index t = 0; t < v.size(); ++t) {
      k.push_back(std::round(v.data()[t].real() * 1e6) / 1e6);
      k.push_back(std::round(v.data()[t].imag() * 1e6) / 1e6);
    }
    return k;
  };
  std::stable_sort(b.blocks.begin(), b.blocks.end(), [&](const Block& x, const Block& y) {
    if (x.dl != y.dl) return x.dl < y.dl;
    if (x.dr != y.dr) return x.dr < y.dr;
    return key(x.isometry) < key(y.isometry);
  });
}

BlockStructure decompose_fixed_point_algebra(const FixedPointBasis& fix, const Tolerances& tol, std::uint64_t seed) {
  const Eigen::Index n = fix.dim;
  const auto m = static_cast<Eigen::Index>(fix.basis.size());
  if (m == 0) throw Error(ErrorKind::NotAnAlgebra, "empty fixed-point basis");
  CMatrix basis_vecs(n * n, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const CMatrix& f = fix.basis[static_cast<std::size_t>(i)];
    if (f.rows() != n || f.cols() != n) throw Error(ErrorKind::DimensionMismatch, "basis element has wrong shape");
    basis_vecs.col(i) = vec(f);
  }
  const double ortho = (basis_vecs.adjoint() * basis_vecs - CMatrix::Identity(m, m)).norm();
  if (ortho > tol.fix) {
    std::ostringstream msg;
    msg << "basis is not Hilbert-Schmidt orthonormal (residual " << ortho << ")";
    throw Error(ErrorKind::NotAnAlgebra, msg.str());
  }

  // Closure under adjoint, unit and products.
  auto require_in_span = [&](const CMatrix& x, const char* what) {
    const double res = vec_norm_residual(basis_vecs, vec(x));
    if (res > tol.fix) {
      std::ostringstream msg;
      msg << what << " leaves the span by " << res;
      throw Error(ErrorKind::NotAnAlgebra, msg.str());
    }
  };
  require_in_span(CMatrix::Identity(n, n) / std::sqrt(static_cast<double>(n)), "identity");
  for (const CMatrix& f : fix.basis) require_in_span(f.adjoint(), "adjoint of a basis element");
  {
    CMatrix products(n * n, m * m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j)
        products.col(i * m + j) = vec(fix.basis[static_cast<std::size_t>(i)] * fix.basis[static_cast<std::size_t>(j)]);
    const CMatrix leftover = products - basis_vecs * (basis_vecs.adjoint() * products);
    const double worst = leftover.colwise().norm().maxCoeff();
    if (worst > tol.fix) {
      std::ostringstream msg;
      msg << "product of basis elements leaves the span by " << worst;
      throw Error(ErrorKind::NotAnAlgebra, msg.str());
    }
  }

  std::vector<CMatrix> herm;
  if (fix.hermitian) {
    herm = fix.basis;
  } else if (auto h = hermitian_basis(fix.basis, tol.group)) {
    herm = std::move(*h);
  } else {
    throw Error(ErrorKind::NotAnAlgebra, "span is not closed under the adjoint");
  }

  // Center: coefficient vectors c with [sum_j c_j H_j, H_i] = 0 for all i.
  CMatrix comm(m * n * n, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = 0; i < m; ++i) {
      const CMatrix& hj = herm[static_cast<std::size_t>(j)];
      const CMatrix& hi = herm[static_cast<std::size_t>(i)];
      comm.block(i * n * n, j, n * n, 1) = vec(hj * hi - hi * hj);
    }
  Eigen::JacobiSVD<CMatrix> csvd(comm, Eigen::ComputeThinV);
  const RVector& csv = csvd.singularValues();
  const double cut = tol.group * std::max(1.0, csv(0));
  std::vector<Eigen::Index> null_idx;
  for (Eigen::Index t = 0; t < csv.size(); ++t)
    if (csv(t) <= cut) null_idx.push_back(t);
  if (null_idx.empty()) throw Error(ErrorKind::NotAnAlgebra, "trivial center (identity missing)");
  const CMatrix center_null = columns(csvd.matrixV(), null_idx);

  Rng rng(seed);
  Attempt last;
  constexpr std::size_t kAttempts = 4;  // first try plus three retries
  for (std::size_t attempt = 1; attempt <= kAttempts; ++attempt) {
    last = decompose_attempt(herm, center_null, n, tol, rng);
    if (last.result) {
      last.result->attempts = attempt;
      canonicalize(*last.result);
      return std::move(*last.result);
    }
  }
  throw Error(last.failure, "decomposition failed after retries: " + last.reason);
}

namespace {

// Applies phi to V X V^dagger and returns (V^dagger Y V, leakage of Y outside range(V)).
std::pair<CMatrix, double> block_action(const KrausChannel& phi, const CMatrix& v, const CMatrix& proj,
                                        const CMatrix& x) {
  const CMatrix y = qentropy::apply(phi, CMatrix(v * x * v.adjoint()));
  const double leak = (y - proj * y * proj).norm();
  return {v.adjoint() * y * v, leak};
}

}  // namespace

BlockVerification inspect_block_structure(const BlockStructure& b, const KrausChannel& phi,
                                          const DensityMatrix& rho, const Tolerances& tol) {
  const Eigen::Index n = b.dim;
  if (phi.dim() != n || rho.dim() != n) {
    throw Error(ErrorKind::DimensionMismatch, "structure, channel and state dimensions differ");
  }
  const double scale_n = static_cast<double>(n);
  BlockVerification out{};
  auto fail = [&](const std::string& check) {
    if (out.failed_check.empty()) out.failed_check = check;
  };

  Eigen::Index total = 0;
  for (const Block& blk : b.blocks) {
    if (blk.dl < 1 || blk.dr < 1 || blk.isometry.rows() != n || blk.isometry.cols() != blk.dl * blk.dr) {
      out.failed_check = "block shape";
      return out;
    }
    total += blk.dl * blk.dr;
  }
  if (total != n) {
    out.failed_check = "completeness (sum of dl*dr differs from N)";
    return out;
  }
  for (std::size_t k = 0; k < b.blocks.size(); ++k) {
    const CMatrix& vk = b.blocks[k].isometry;
    out.isometry_residual = std::max(
        out.isometry_residual, (vk.adjoint() * vk - CMatrix::Identity(vk.cols(), vk.cols())).norm());
    for (std::size_t j = 0; j < k; ++j)
      out.isometry_residual = std::max(out.isometry_residual, (b.blocks[j].isometry.adjoint() * vk).norm());
  }
  if (out.isometry_residual > tol.eq * scale_n) fail("isometries (orthonormality of block ranges)");

  // (a) rho is block diagonal.
  CMatrix diag_part = CMatrix::Zero(n, n);
  for (const Block& blk : b.blocks) {
    const CMatrix p = blk.isometry * blk.isometry.adjoint();
    diag_part += p * rho.matrix() * p;
  }
  out.block_diagonal_residual = (rho.matrix() - diag_part).norm();
  if (out.block_diagonal_residual > tol.eq) fail("(a) state is not block diagonal");

  for (const Block& blk : b.blocks) {
    const Eigen::Index dl = blk.dl;
    const Eigen::Index dr = blk.dr;
    const CMatrix& v = blk.isometry;
    const CMatrix proj = v * v.adjoint();
    const CMatrix id_l = CMatrix::Identity(dl, dl);
    const CMatrix id_r = CMatrix::Identity(dr, dr);
    BlockCheck bc{};
    bc.dl = dl;
    bc.dr = dr;

    // (b) V^dagger rho V = p rho^L (x) I/dr.
    const CMatrix local = v.adjoint() * rho.matrix() * v;
    bc.weight = local.trace().real();
    const CMatrix left_unnormalized = partial_trace_right(local, dl, dr);
    bc.left_state = bc.weight > tol.psd ? CMatrix(left_unnormalized / bc.weight) : CMatrix::Zero(dl, dl);
    bc.factorization_residual =
        (local - kron(left_unnormalized, id_r / static_cast<double>(dr))).norm();
    if (bc.factorization_residual > tol.eq * scale_n) fail("(b) block state does not factor as rho^L (x) I/dR");

    // (c) left factor: X_L -> tr_R V^dagger phi(V (X_L (x) I/dr) V^dagger) V should be Ad_U.
    CMatrix choi_left = CMatrix::Zero(dl * dl, dl * dl);
    for (Eigen::Index a = 0; a < dl; ++a)
      for (Eigen::Index c = 0; c < dl; ++c) {
        const CMatrix eac = matrix_unit(dl, a, c);
        const auto [o, leak] = block_action(phi, v, proj, kron(eac, id_r / static_cast<double>(dr)));
        bc.leakage_residual = std::max(bc.leakage_residual, leak);
        choi_left += kron(partial_trace_right(o, dl, dr), eac);
      }
    const Spectrum ls = hermitian_spectrum(choi_left);
    bc.left_unitary = CMatrix(dl, dl);
    const double top = std::sqrt(std::max(ls.eigenvalues(0), 0.0));
    for (Eigen::Index a = 0; a < dl; ++a)
      for (Eigen::Index i = 0; i < dl; ++i) bc.left_unitary(a, i) = top * ls.eigenvectors(a * dl + i, 0);
    bc.unitary_residual = (bc.left_unitary.adjoint() * bc.left_unitary - id_l).norm();

    // Right factor: X_R -> tr_L V^dagger phi(V (I/dl (x) X_R) V^dagger) V.
    std::vector<CMatrix> right_out(static_cast<std::size_t>(dr * dr));
    bc.right_superop = CMatrix(dr * dr, dr * dr);
    for (Eigen::Index c = 0; c < dr; ++c)
      for (Eigen::Index d = 0; d < dr; ++d) {
        const auto [o, leak] = block_action(phi, v, proj, kron(id_l / static_cast<double>(dl), matrix_unit(dr, c, d)));
        bc.leakage_residual = std::max(bc.leakage_residual, leak);
        CMatrix r = partial_trace_left(o, dl, dr);
        bc.right_superop.col(c + d * dr) = vec(r);
        right_out[static_cast<std::size_t>(c + d * dr)] = std::move(r);
      }
    CMatrix unit_image = CMatrix::Zero(dr, dr);
    double trace_dev = 0.0;
    for (Eigen::Index c = 0; c < dr; ++c)
      for (Eigen::Index d = 0; d < dr; ++d) {
        const CMatrix& r = right_out[static_cast<std::size_t>(c + d * dr)];
        if (c == d) unit_image += r;
        trace_dev = std::max(trace_dev, std::abs(r.trace() - (c == d ? 1.0 : 0.0)));
      }
    bc.right_bistochastic_residual = std::max(trace_dev, (unit_image - id_r).norm());

    // Product inputs |a><c| (x) |e><f| span L(H^L (x) H^R).
    for (Eigen::Index a = 0; a < dl; ++a)
      for (Eigen::Index c = 0; c < dl; ++c) {
        const CMatrix eac = matrix_unit(dl, a, c);
        const CMatrix rotated = bc.left_unitary * eac * bc.left_unitary.adjoint();
        for (Eigen::Index e = 0; e < dr; ++e)
          for (Eigen::Index f = 0; f < dr; ++f) {
            const auto [o, leak] = block_action(phi, v, proj, kron(eac, matrix_unit(dr, e, f)));
            bc.leakage_residual = std::max(bc.leakage_residual, leak);
            const CMatrix expected = kron(rotated, right_out[static_cast<std::size_t>(e + f * dr)]);
            bc.action_residual = std::max(bc.action_residual, (o - expected).norm());
          }
      }
    const double cut = tol.eq * scale_n;
    if (bc.leakage_residual > cut) fail("(c) channel maps a block range outside itself");
    if (bc.unitary_residual > cut) fail("(c) left factor of the channel is not a unitary conjugation");
    if (bc.action_residual > cut) fail("(c) channel does not act as Ad_U (x) Phi^R on the block");
    if (bc.right_bistochastic_residual > cut) fail("(c) right factor of the channel is not bistochastic");
    out.blocks.push_back(std::move(bc));
  }
  return out;
}

BlockVerification verify_block_structure(const BlockStructure& b, const KrausChannel& phi,
                                         const DensityMatrix& rho, const Tolerances& tol) {
  BlockVerification v = inspect_block_structure(b, phi, rho, tol);
  if (!v.passed()) throw Error(ErrorKind::StructureMismatch, v.failed_check);
  return v;
}

Eigen::Index BlockSpec::total_dim() const {
  Eigen::Index n = 0;
  for (const Dims& d : dims) n += d.dl * d.dr;
  return n;
}

BlockSpec parse_block_spec(const std::string& text) {
  BlockSpec spec;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    const auto x = item.find_first_of("xX");
    if (x == std::string::npos || x == 0 || x + 1 == item.size()) {
      throw Error(ErrorKind::InvalidSpec, "block '" + item + "' is not of the form dLxdR");
    }
    try {
      std::size_t used_l = 0;
      std::size_t used_r = 0;
      const std::string l = item.substr(0, x);
      const std::string r = item.substr(x + 1);
      const long dl = std::stol(l, &used_l);
      const long dr = std::stol(r, &used_r);
      if (used_l != l.size() || used_r != r.size() || dl < 1 || dr < 1) throw std::invalid_argument(item);
      spec.dims.push_back({dl, dr});
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidSpec, "block '" + item + "' needs positive integer dimensions");
    }
  }
  if (spec.dims.empty()) throw Error(ErrorKind::InvalidSpec, "empty block spec");
  return spec;
}

SynthesizedPair synthesize_pair(const BlockSpec& spec, std::uint64_t seed) {
  const Tolerances tol;
  if (spec.dims.empty()) throw Error(ErrorKind::InvalidSpec, "block spec has no blocks");
  for (const auto& d : spec.dims)
    if (d.dl < 1 || d.dr < 1) throw Error(ErrorKind::InvalidSpec, "block dimensions must be positive");
  const std::size_t k_blocks = spec.dims.size();
  if (!spec.weights.empty() && spec.weights.size() != k_blocks)
    throw Error(ErrorKind::InvalidSpec, "one weight per block required");
  if (!spec.left_states.empty() && spec.left_states.size() != k_blocks)
    throw Error(ErrorKind::InvalidSpec, "one left state per block required");
  if (!spec.left_unitaries.empty() && spec.left_unitaries.size() != k_blocks)
    throw Error(ErrorKind::InvalidSpec, "one left unitary per block required");

  Rng rng(seed);
  const Eigen::Index n = spec.total_dim();
  std::vector<double> weights = spec.weights;
  if (weights.empty()) {
    weights = rng.simplex(k_blocks);
  } else {
    try {
      (void)ProbabilityVector::validate(weights, tol);
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidSpec, std::string("weights: ") + e.what());
    }
  }
  const CMatrix global = random_unitary(n, rng);

  CMatrix rho = CMatrix::Zero(n, n);
  std::vector<CMatrix> kraus;
  BlockStructure structure;
  structure.dim = n;
  Eigen::Index offset = 0;
  for (std::size_t k = 0; k < k_blocks; ++k) {
    const Eigen::Index dl = spec.dims[k].dl;
    const Eigen::Index dr = spec.dims[k].dr;
    const CMatrix v = global.middleCols(offset, dl * dr);
    offset += dl * dr;

    CMatrix left_state;
    if (spec.left_states.empty()) {
      left_state = random_density(dl, dl, rng).matrix();
    } else {
      const CMatrix& given = spec.left_states[k];
      if (given.rows() != dl || given.cols() != dl) throw Error(ErrorKind::InvalidSpec, "left state has wrong size");
      left_state = validate_state(given, tol).matrix();
    }
    CMatrix u;
    if (spec.left_unitaries.empty()) {
      u = random_unitary(dl, rng);
    } else {
      u = spec.left_unitaries[k];
      if (u.rows() != dl || u.cols() != dl) throw Error(ErrorKind::InvalidSpec, "left unitary has wrong size");
      if ((u.adjoint() * u - CMatrix::Identity(dl, dl)).norm() > tol.eq * static_cast<double>(dl))
        throw Error(ErrorKind::InvalidSpec, "left unitary is not unitary");
    }
    const KrausChannel right =
        dr == 1 ? identity_channel(1) : random_bistochastic_channel(dr, 3, rng);

    rho += weights[k] * v * kron(left_state, CMatrix::Identity(dr, dr) / static_cast<double>(dr)) * v.adjoint();
    for (const CMatrix& a : right.kraus()) kraus.push_back(v * kron(u, a) * v.adjoint());
    structure.blocks.push_back({v, dl, dr});
  }
  canonicalize(structure);
  return {KrausChannel(std::move(kraus)), validate_state(hermitian_part(rho), tol), std::move(structure)};
}

MapEntropyReport map_entropy_preservation_report(const KrausChannel& phi, const KrausChannel& psi,
                                                 const Tolerances& tol) {
  require_bistochastic(phi, tol, "Phi");
  require_stochastic(psi, tol, "Psi");
  if (phi.dim() != psi.dim()) throw Error(ErrorKind::DimensionMismatch, "channels differ in dimension");
  const CMatrix s_phi = superoperator_matrix(phi).matrix;
  const CMatrix s_psi = superoperator_matrix(psi).matrix;
  MapEntropyReport r{};
  r.map_entropy_in = map_entropy(psi, tol);
  r.map_entropy_out = map_entropy(compose(phi, psi), tol);
  r.entropy_gap = std::abs(r.map_entropy_out - r.map_entropy_in);
  r.channel_residual = (s_phi.adjoint() * (s_phi * s_psi) - s_psi).norm();
  r.entropy_equal = r.entropy_gap <= tol.eq;
  r.fixed_point = r.channel_residual <= tol.fix * static_cast<double>(phi.dim());
  r.agreement = r.entropy_equal == r.fixed_point;
  return r;
}

}  // namespace qentropy
