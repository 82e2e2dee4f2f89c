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

#include "qentropy/states.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qentropy {

namespace {

// Clips eigenvalues in [-cut, 0) to zero; anything below -cut is an error.
RVector clip_eigenvalues(const RVector& values, double cut) {
  RVector out = values;
  for (Eigen::Index k = 0; k < out.size(); ++k) {
    if (out(k) < -cut) {
      std::ostringstream msg;
      msg << "eigenvalue " << out(k) << " below -" << cut;
      throw Error(ErrorKind::NotPositive, msg.str());
    }
    if (out(k) < 0.0) out(k) = 0.0;
  }
  return out;
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

DensityMatrix DensityMatrix::validate(const CMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::NotSquare, "state matrix must be square and non-empty");
  }
  if (!all_finite(m)) throw Error(ErrorKind::NotFinite, "state matrix has NaN/Inf entries");
  const double herm_dev = max_abs(m - m.adjoint());
  if (herm_dev > tol.herm) {
    std::ostringstream msg;
    msg << "max |M - M^dagger| = " << herm_dev;
    throw Error(ErrorKind::NotHermitian, msg.str());
  }
  Spectrum spec = hermitian_spectrum(m);
  const RVector raw = spec.eigenvalues;
  spec.eigenvalues = clip_eigenvalues(raw, tol.psd);
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > tol.trace) {
    std::ostringstream msg;
    msg << "trace " << tr;
    throw Error(ErrorKind::TraceNotOne, msg.str());
  }
  CMatrix stored = hermitian_part(m);
  if ((raw.array() < 0.0).any()) {
    stored = spec.eigenvectors * spec.eigenvalues.cast<Complex>().asDiagonal() *
             spec.eigenvectors.adjoint();
  }
  return DensityMatrix(std::move(stored), std::move(spec));
}

DensityMatrix validate_state(const CMatrix& m, const Tolerances& tol) {
  return DensityMatrix::validate(m, tol);
}

DensityMatrix maximally_mixed(Eigen::Index n) {
  return DensityMatrix::validate(CMatrix::Identity(n, n) / static_cast<double>(n));
}

DensityMatrix pure_state(const CVector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw Error(ErrorKind::InvalidArgument, "pure state from zero vector");
  const CVector u = psi / norm;
  return DensityMatrix::validate(u * u.adjoint());
}

DensityMatrix diagonal_state(std::span<const double> p, const Tolerances& tol) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(p.size()), static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) m(i, i) = p[i];
  return DensityMatrix::validate(m, tol);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lambda : rho.spectrum().eigenvalues) s -= xlog2x(lambda);
  return std::max(s, 0.0);
}

CMatrix support_projector(const DensityMatrix& rho, const Tolerances& tol) {
  return spectral_function(rho.spectrum(), [&](double l) { return l > tol.psd ? 1.0 : 0.0; });
}

CMatrix generalized_inverse(const DensityMatrix& rho, const Tolerances& tol) {
  return spectral_function(rho.spectrum(), [&](double l) { return l > tol.psd ? 1.0 / l : 0.0; });
}

bool RelativeEntropy::finite() const { return std::isfinite(value); }

RelativeEntropy relative_entropy_detail(const DensityMatrix& rho, const DensityMatrix& sigma,
                                        const Tolerances& tol) {
  if (rho.dim() != sigma.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "relative entropy of states of different dimension");
  }
  const Eigen::Index n = rho.dim();
  const CMatrix p_rho = support_projector(rho, tol);
  const CMatrix p_sigma = support_projector(sigma, tol);
  const double residual = ((CMatrix::Identity(n, n) - p_sigma) * p_rho).norm();
  if (residual > tol.psd) {
    return {std::numeric_limits<double>::infinity(), residual};
  }
  double rho_log_rho = 0.0;
  for (double lambda : rho.spectrum().eigenvalues) rho_log_rho += xlog2x(lambda);
  // tr(rho log sigma) restricted to supp(sigma).
  double rho_log_sigma = 0.0;
  const Spectrum& ss = sigma.spectrum();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mu = ss.eigenvalues(k);
    if (mu <= tol.psd) continue;
    const CVector v = ss.eigenvectors.col(k);
    const double weight = (v.adjoint() * rho.matrix() * v)(0, 0).real();
    rho_log_sigma += weight * std::log2(mu);
  }
  return {rho_log_rho - rho_log_sigma, residual};
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol) {
  return relative_entropy_detail(rho, sigma, tol).value;
}

CMatrix psd_sqrt(const CMatrix& psd, const Tolerances& tol) {
  Spectrum spec = hermitian_spectrum(psd);
  spec.eigenvalues = clip_eigenvalues(spec.eigenvalues, tol.psd);
  return spectral_function(spec, [](double l) { return std::sqrt(l); });
}

CMatrix psd_inverse_sqrt(const CMatrix& psd, const Tolerances& tol) {
  Spectrum spec = hermitian_spectrum(psd);
  spec.eigenvalues = clip_eigenvalues(spec.eigenvalues, tol.psd);
  return spectral_function(spec, [&](double l) { return l > tol.psd ? 1.0 / std::sqrt(l) : 0.0; });
}

}  // namespace qentropy
