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

#include "qentropy/choi.hpp"

#include <cmath>
#include <sstream>

namespace qentropy {

namespace {

// |M>> = (M (x) I)|Omega>, component a*N + i equal to M(a, i).
CVector kraus_ket(const CMatrix& m) {
  const Eigen::Index n = m.rows();
  CVector v(n * n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index i = 0; i < n; ++i) v(a * n + i) = m(a, i);
  return v;
}

CMatrix kraus_from_ket(const CVector& v, Eigen::Index n) {
  CMatrix m(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index i = 0; i < n; ++i) m(a, i) = v(a * n + i);
  return m;
}

}  // namespace

ChoiMatrix choi_matrix(const KrausChannel& phi) {
  const Eigen::Index n = phi.dim();
  CMatrix j = CMatrix::Zero(n * n, n * n);
  for (const CMatrix& m : phi.kraus()) {
    const CVector k = kraus_ket(m);
    j.noalias() += k * k.adjoint();
  }
  return {n, std::move(j)};
}

KrausChannel channel_from_choi(const ChoiMatrix& j, const Tolerances& tol) {
  const Eigen::Index n = j.dim;
  if (j.matrix.rows() != n * n || j.matrix.cols() != n * n) {
    throw Error(ErrorKind::DimensionMismatch, "Choi matrix is not N^2 x N^2");
  }
  if (!all_finite(j.matrix)) throw Error(ErrorKind::NotFinite, "Choi matrix has NaN/Inf entries");
  const double herm_dev = max_abs(j.matrix - j.matrix.adjoint());
  if (herm_dev > tol.herm) {
    std::ostringstream msg;
    msg << "Choi matrix max |J - J^dagger| = " << herm_dev;
    throw Error(ErrorKind::NotHermitian, msg.str());
  }
  const Spectrum spec = hermitian_spectrum(j.matrix);
  std::vector<CMatrix> ks;
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
    const double lambda = spec.eigenvalues(k);
    if (lambda < -tol.psd) {
      std::ostringstream msg;
      msg << "Choi eigenvalue " << lambda << " (map is not completely positive)";
      throw Error(ErrorKind::NotPositive, msg.str());
    }
    if (lambda > tol.psd) ks.push_back(std::sqrt(lambda) * kraus_from_ket(spec.eigenvectors.col(k), n));
  }
  if (ks.empty()) ks.push_back(CMatrix::Zero(n, n));
  return KrausChannel(std::move(ks), tol);
}

CMatrix trace_output(const ChoiMatrix& j) { return partial_trace_left(j.matrix, j.dim, j.dim); }

CMatrix trace_reference(const ChoiMatrix& j) { return partial_trace_right(j.matrix, j.dim, j.dim); }

double map_entropy(const KrausChannel& phi, const Tolerances& tol) {
  require_stochastic(phi, tol);
  const ChoiMatrix j = choi_matrix(phi);
  return von_neumann_entropy(DensityMatrix::validate(j.matrix / static_cast<double>(j.dim), tol));
}

}  // namespace qentropy
