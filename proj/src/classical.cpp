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

#include "qentropy/classical.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qentropy {

ProbabilityVector ProbabilityVector::validate(std::span<const double> entries, const Tolerances& tol) {
  if (entries.empty()) throw Error(ErrorKind::NotProbability, "empty probability vector");
  RVector v(static_cast<Eigen::Index>(entries.size()));
  double total = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const double x = entries[i];
    if (!std::isfinite(x)) throw Error(ErrorKind::NotFinite, "probability entry is NaN/Inf");
    if (x < -tol.psd) {
      std::ostringstream msg;
      msg << "negative probability " << x << " at index " << i;
      throw Error(ErrorKind::NotProbability, msg.str());
    }
    v(static_cast<Eigen::Index>(i)) = x < 0.0 ? 0.0 : x;
    total += x;
  }
  if (std::abs(total - 1.0) > tol.eq) {
    std::ostringstream msg;
    msg << "probabilities sum to " << total;
    throw Error(ErrorKind::NotProbability, msg.str());
  }
  return ProbabilityVector(std::move(v));
}

ProbabilityVector uniform_probability(Eigen::Index n) {
  const std::vector<double> u(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
  return ProbabilityVector::validate(u);
}

StochasticMatrix StochasticMatrix::validate(const RMatrix& entries, const Tolerances& tol) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    throw Error(ErrorKind::NotSquare, "stochastic matrix must be square and non-empty");
  }
  if (!entries.allFinite()) throw Error(ErrorKind::NotFinite, "matrix has NaN/Inf entries");
  if (entries.minCoeff() < -tol.psd) {
    std::ostringstream msg;
    msg << "negative entry " << entries.minCoeff();
    throw Error(ErrorKind::NotStochastic, msg.str());
  }
  StochasticMatrix s;
  s.entries_ = entries.cwiseMax(0.0);
  s.column_residual_ = (s.entries_.colwise().sum().array() - 1.0).abs().maxCoeff();
  s.row_residual_ = (s.entries_.rowwise().sum().array() - 1.0).abs().maxCoeff();
  s.stochastic_ = s.column_residual_ <= tol.eq;
  s.bistochastic_ = s.stochastic_ && s.row_residual_ <= tol.eq;
  return s;
}

double shannon_entropy(const ProbabilityVector& p) {
  double h = 0.0;
  for (double x : p.values()) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return std::max(h, 0.0);
}

double classical_relative_entropy(const ProbabilityVector& p, const ProbabilityVector& q,
                                  const Tolerances& tol) {
  if (p.dim() != q.dim()) throw Error(ErrorKind::DimensionMismatch, "relative entropy of vectors of different length");
  double d = 0.0;
  for (Eigen::Index i = 0; i < p.dim(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= tol.psd) {
      if (p[i] > tol.psd) return std::numeric_limits<double>::infinity();
      continue;
    }
    d += p[i] * (std::log2(p[i]) - std::log2(q[i]));
  }
  return d;
}

StochasticMatrix kraus_matrix(const KrausChannel& phi, const Tolerances& tol) {
  require_stochastic(phi, tol);
  const Eigen::Index n = phi.dim();
  RMatrix b = RMatrix::Zero(n, n);
  for (const CMatrix& m : phi.kraus()) b += m.cwiseAbs2();
  return StochasticMatrix::validate(b, tol);
}

KrausChannel channel_from_bistochastic(const StochasticMatrix& t, const Tolerances& tol) {
  if (!t.bistochastic()) {
    std::ostringstream msg;
    msg << "matrix is not bistochastic: column residual " << t.column_residual() << ", row residual "
        << t.row_residual();
    throw Error(ErrorKind::NotBistochastic, msg.str());
  }
  const Eigen::Index n = t.dim();
  std::vector<CMatrix> ks;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (t.entries()(j, i) > tol.psd) ks.push_back(std::sqrt(t.entries()(j, i)) * matrix_unit(n, j, i));
  return KrausChannel(std::move(ks), tol);
}

CorollaryReport corollary_check(const StochasticMatrix& b, const ProbabilityVector& p, const Tolerances& tol) {
  if (!b.bistochastic()) {
    std::ostringstream msg;
    msg << "matrix is not bistochastic: column residual " << b.column_residual() << ", row residual "
        << b.row_residual();
    throw Error(ErrorKind::NotBistochastic, msg.str());
  }
  if (b.dim() != p.dim()) throw Error(ErrorKind::DimensionMismatch, "matrix and vector sizes differ");
  const RVector bp = b.entries() * p.values();
  const ProbabilityVector q = ProbabilityVector::validate(std::span<const double>(bp.data(), bp.size()), tol);
  CorollaryReport r{};
  r.entropy_in = shannon_entropy(p);
  r.entropy_out = shannon_entropy(q);
  r.entropy_gap = std::abs(r.entropy_out - r.entropy_in);
  r.fixed_residual = (b.entries().transpose() * bp - p.values()).norm();
  r.entropy_preserved = r.entropy_gap <= tol.eq;
  r.fixed_point = r.fixed_residual <= tol.eq;
  r.agreement = r.entropy_preserved == r.fixed_point;
  return r;
}

BridgeReport bridge_check(const KrausChannel& phi, const DensityMatrix& rho, const Tolerances& tol) {
  if (phi.dim() != rho.dim()) throw Error(ErrorKind::DimensionMismatch, "state and channel dimensions differ");
  const Eigen::Index n = rho.dim();
  BridgeReport r;
  CMatrix off = rho.matrix();
  off.diagonal().setZero();
  r.off_diagonal = max_abs(off);
  if (r.off_diagonal > tol.eq) {
    std::ostringstream msg;
    msg << "state has off-diagonal entry of magnitude " << r.off_diagonal;
    throw Error(ErrorKind::NotDiagonal, msg.str());
  }
  const StochasticMatrix b = kraus_matrix(phi, tol);
  r.p = rho.matrix().diagonal().real();
  r.q = qentropy::apply(phi, rho.matrix()).diagonal().real();
  r.predicted = b.entries() * r.p;
  r.residual = n == 0 ? 0.0 : (r.q - r.predicted).cwiseAbs().maxCoeff();
  r.passed = r.residual <= tol.eq;
  return r;
}

}  // namespace qentropy
