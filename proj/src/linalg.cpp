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

#include "qentropy/linalg.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace qentropy {

void Tolerances::validate() const {
  const std::pair<const char*, double> all[] = {
      {"herm", herm}, {"psd", psd}, {"trace", trace}, {"recon", recon},
      {"eq", eq},     {"fix", fix}, {"group", group}};
  for (const auto& [name, value] : all) {
    if (!std::isfinite(value) || value < 0.0 || value >= 1.0) {
      throw Error(ErrorKind::InvalidTolerance,
                  std::string("tolerance '") + name + "' must lie in [0, 1), got " +
                      std::to_string(value));
    }
  }
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::TraceNotOne: return "TraceNotOne";
    case ErrorKind::NotFinite: return "NotFinite";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotTraceNonIncreasing: return "NotTraceNonIncreasing";
    case ErrorKind::NotStochastic: return "NotStochastic";
    case ErrorKind::NotBistochastic: return "NotBistochastic";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::NotAnAlgebra: return "NotAnAlgebra";
    case ErrorKind::AmbiguousGrouping: return "AmbiguousGrouping";
    case ErrorKind::StructureMismatch: return "StructureMismatch";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::InvalidRank: return "InvalidRank";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotDiagonal: return "NotDiagonal";
    case ErrorKind::NotProbability: return "NotProbability";
    case ErrorKind::InvalidTolerance: return "InvalidTolerance";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

Spectrum hermitian_spectrum(const CMatrix& herm) {
  if (herm.rows() != herm.cols()) {
    throw Error(ErrorKind::NotSquare, "spectrum of a non-square matrix");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(herm));
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NotFinite, "Hermitian eigensolver did not converge");
  }
  // Eigen returns ascending order.
  const Eigen::Index n = herm.rows();
  Spectrum out{RVector(n), CMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = solver.eigenvalues()(n - 1 - k);
    out.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

CMatrix spectral_function(const Spectrum& spec, const std::function<double(double)>& f) {
  RVector fl(spec.eigenvalues.size());
  for (Eigen::Index k = 0; k < fl.size(); ++k) fl(k) = f(spec.eigenvalues(k));
  return spec.eigenvectors * fl.cast<Complex>().asDiagonal() * spec.eigenvectors.adjoint();
}

CMatrix hermitian_part(const CMatrix& x) { return 0.5 * (x + x.adjoint()); }

double max_abs(const CMatrix& x) { return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff(); }

bool all_finite(const CMatrix& x) { return x.allFinite(); }

Complex hs_inner(const CMatrix& a, const CMatrix& b) { return (a.adjoint() * b).trace(); }

CVector vec(const CMatrix& x) {
  // Eigen's default storage is column-major.
  return Eigen::Map<const CVector>(x.data(), x.size());
}

CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) {
    throw Error(ErrorKind::DimensionMismatch, "unvec: length does not match shape");
  }
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

CMatrix partial_trace_right(const CMatrix& x, Eigen::Index dl, Eigen::Index dr) {
  if (x.rows() != dl * dr || x.cols() != dl * dr) {
    throw Error(ErrorKind::DimensionMismatch, "partial trace: shape is not dl*dr");
  }
  CMatrix out = CMatrix::Zero(dl, dl);
  for (Eigen::Index a = 0; a < dl; ++a)
    for (Eigen::Index b = 0; b < dl; ++b)
      for (Eigen::Index j = 0; j < dr; ++j) out(a, b) += x(a * dr + j, b * dr + j);
  return out;
}

CMatrix partial_trace_left(const CMatrix& x, Eigen::Index dl, Eigen::Index dr) {
  if (x.rows() != dl * dr || x.cols() != dl * dr) {
    throw Error(ErrorKind::DimensionMismatch, "partial trace: shape is not dl*dr");
  }
  CMatrix out = CMatrix::Zero(dr, dr);
  for (Eigen::Index a = 0; a < dl; ++a) out += x.block(a * dr, a * dr, dr, dr);
  return out;
}

CMatrix matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

CMatrix polar_unitary(const CMatrix& x) {
  Eigen::JacobiSVD<CMatrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

double phase_invariant_distance(const CMatrix& u, const CMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "phase-invariant distance: shapes differ");
  }
  const double d2 = u.squaredNorm() + v.squaredNorm() - 2.0 * std::abs(hs_inner(v, u));
  return std::sqrt(std::max(d2, 0.0));
}

}  // namespace qentropy
