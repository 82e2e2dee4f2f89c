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

#include "qentropy/channels.hpp"

#include <cmath>
#include <sstream>

namespace qentropy {

void KrausChannel::check_shapes() {
  if (kraus_.empty()) throw Error(ErrorKind::InvalidArgument, "channel needs at least one Kraus operator");
  dim_ = kraus_.front().rows();
  if (dim_ == 0) throw Error(ErrorKind::NotSquare, "empty Kraus operator");
  for (const CMatrix& m : kraus_) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::NotSquare, "Kraus operator is not square");
    if (m.rows() != dim_) throw Error(ErrorKind::DimensionMismatch, "Kraus operators differ in dimension");
    if (!all_finite(m)) throw Error(ErrorKind::NotFinite, "Kraus operator has NaN/Inf entries");
  }
}

KrausChannel::KrausChannel(std::vector<CMatrix> kraus, Unchecked) : dim_(0), kraus_(std::move(kraus)) {
  check_shapes();
}

KrausChannel KrausChannel::completely_positive(std::vector<CMatrix> kraus) {
  return KrausChannel(std::move(kraus), Unchecked{});
}

KrausChannel::KrausChannel(std::vector<CMatrix> kraus, const Tolerances& tol)
    : dim_(0), kraus_(std::move(kraus)) {
  check_shapes();
  CMatrix gram = CMatrix::Zero(dim_, dim_);
  for (const CMatrix& m : kraus_) gram += m.adjoint() * m;
  const double top = hermitian_spectrum(gram).eigenvalues(0);
  if (top > 1.0 + tol.eq) {
    std::ostringstream msg;
    msg << "largest eigenvalue of sum M^dagger M is " << top;
    throw Error(ErrorKind::NotTraceNonIncreasing, msg.str());
  }
}

const char* to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::TraceNonIncreasing: return "trace_nonincreasing";
    case ChannelKind::Stochastic: return "stochastic";
    case ChannelKind::Bistochastic: return "bistochastic";
  }
  return "unknown";
}

CMatrix apply(const KrausChannel& phi, const CMatrix& x) {
  if (x.rows() != phi.dim() || x.cols() != phi.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "operand dimension does not match channel");
  }
  CMatrix out = CMatrix::Zero(phi.dim(), phi.dim());
  for (const CMatrix& m : phi.kraus()) out.noalias() += m * x * m.adjoint();
  return out;
}

DensityMatrix apply(const KrausChannel& phi, const DensityMatrix& rho, const Tolerances& tol) {
  return DensityMatrix::validate(qentropy::apply(phi, rho.matrix()), tol);
}

KrausChannel adjoint(const KrausChannel& phi) {
  std::vector<CMatrix> ks;
  ks.reserve(phi.kraus().size());
  for (const CMatrix& m : phi.kraus()) ks.push_back(m.adjoint());
  return KrausChannel::completely_positive(std::move(ks));
}

KrausChannel compose(const KrausChannel& phi, const KrausChannel& psi) {
  if (phi.dim() != psi.dim()) throw Error(ErrorKind::DimensionMismatch, "compose: dimensions differ");
  std::vector<CMatrix> ks;
  ks.reserve(phi.kraus().size() * psi.kraus().size());
  for (const CMatrix& m : phi.kraus())
    for (const CMatrix& n : psi.kraus()) ks.push_back(m * n);
  return KrausChannel::completely_positive(std::move(ks));
}

ChannelClass classify(const KrausChannel& phi, const Tolerances& tol) {
  const Eigen::Index n = phi.dim();
  CMatrix gram = CMatrix::Zero(n, n);
  CMatrix outer = CMatrix::Zero(n, n);
  for (const CMatrix& m : phi.kraus()) {
    gram += m.adjoint() * m;
    outer += m * m.adjoint();
  }
  const CMatrix id = CMatrix::Identity(n, n);
  ChannelClass c{};
  c.trace_residual = (gram - id).norm();
  c.unital_residual = (outer - id).norm();
  const double cut = tol.eq * static_cast<double>(n);
  c.stochastic = c.trace_residual <= cut;
  c.unital = c.unital_residual <= cut;
  c.kind = c.stochastic ? (c.unital ? ChannelKind::Bistochastic : ChannelKind::Stochastic)
                        : ChannelKind::TraceNonIncreasing;
  return c;
}

void require_stochastic(const KrausChannel& phi, const Tolerances& tol, const char* role) {
  const ChannelClass c = classify(phi, tol);
  if (!c.stochastic) {
    std::ostringstream msg;
    msg << role << " is not trace preserving: ||sum M^dagger M - I||_F = " << c.trace_residual;
    throw Error(ErrorKind::NotStochastic, msg.str());
  }
}

void require_bistochastic(const KrausChannel& phi, const Tolerances& tol, const char* role) {
  const ChannelClass c = classify(phi, tol);
  if (!c.stochastic || !c.unital) {
    std::ostringstream msg;
    msg << role << " is not bistochastic: ||sum M^dagger M - I||_F = " << c.trace_residual
        << ", ||sum M M^dagger - I||_F = " << c.unital_residual;
    throw Error(ErrorKind::NotBistochastic, msg.str());
  }
}

SuperoperatorMatrix superoperator_matrix(const KrausChannel& phi) {
  const Eigen::Index n = phi.dim();
  CMatrix s = CMatrix::Zero(n * n, n * n);
  for (const CMatrix& m : phi.kraus()) s += kron(m.conjugate(), m);
  return {n, std::move(s)};
}

double channel_distance(const KrausChannel& a, const KrausChannel& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "channel distance: dimensions differ");
  return (superoperator_matrix(a).matrix - superoperator_matrix(b).matrix).norm();
}

bool channels_equal(const KrausChannel& a, const KrausChannel& b, const Tolerances& tol) {
  const double n2 = static_cast<double>(a.dim() * a.dim());
  return channel_distance(a, b) <= tol.eq * n2;
}

KrausChannel petz_recovery(const KrausChannel& phi, const DensityMatrix& sigma, const Tolerances& tol) {
  if (sigma.dim() != phi.dim()) throw Error(ErrorKind::DimensionMismatch, "petz recovery: state dimension");
  require_stochastic(phi, tol);
  const CMatrix sigma_half = psd_sqrt(sigma.matrix(), tol);
  const CMatrix out_inv_half = psd_inverse_sqrt(qentropy::apply(phi, sigma.matrix()), tol);
  std::vector<CMatrix> ks;
  ks.reserve(phi.kraus().size());
  for (const CMatrix& m : phi.kraus()) ks.push_back(sigma_half * m.adjoint() * out_inv_half);
  return KrausChannel(std::move(ks), tol);
}

KrausChannel identity_channel(Eigen::Index n) { return KrausChannel({CMatrix::Identity(n, n)}); }

KrausChannel unitary_channel(const CMatrix& u) { return KrausChannel({u}); }

KrausChannel fully_depolarizing(Eigen::Index n) {
  std::vector<CMatrix> ks;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) ks.push_back(scale * matrix_unit(n, i, j));
  return KrausChannel(std::move(ks));
}

KrausChannel depolarizing(Eigen::Index n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidArgument, "depolarizing strength outside [0, 1]");
  if (p == 1.0) return fully_depolarizing(n);
  std::vector<CMatrix> ks{std::sqrt(1.0 - p) * CMatrix::Identity(n, n)};
  if (p > 0.0) {
    const double scale = std::sqrt(p / static_cast<double>(n));
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) ks.push_back(scale * matrix_unit(n, i, j));
  }
  return KrausChannel(std::move(ks));
}

KrausChannel dephasing(Eigen::Index n) {
  std::vector<CMatrix> ks;
  for (Eigen::Index i = 0; i < n; ++i) ks.push_back(matrix_unit(n, i, i));
  return KrausChannel(std::move(ks));
}

KrausChannel amplitude_damping(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw Error(ErrorKind::InvalidArgument, "damping outside [0, 1]");
  CMatrix k0 = CMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  CMatrix k1 = CMatrix::Zero(2, 2);
  k1(0, 1) = std::sqrt(gamma);
  return KrausChannel({k0, k1});
}

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace qentropy
