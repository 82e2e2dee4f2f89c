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

// Independent reference computations for the tests. Nothing here calls the
// library's numerics: entropies come from the general (non-Hermitian) complex
// eigensolver or the matrix logarithm, channel actions from explicit loops.

#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline double xlog2x(double x) { return x > 0.0 ? x * std::log(x) / std::log(2.0) : 0.0; }

inline double shannon(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) h -= xlog2x(x);
  return h;
}

// Entropy from the eigenvalues of the general complex eigensolver.
inline double entropy(const CMatrix& rho) {
  Eigen::ComplexEigenSolver<CMatrix> es(rho);
  double h = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) h -= xlog2x(es.eigenvalues()(i).real());
  return h;
}

// tr rho (log rho - log sigma) in bits; both arguments full rank.
inline double relative_entropy_full_rank(const CMatrix& rho, const CMatrix& sigma) {
  const CMatrix lr = rho.log();
  const CMatrix ls = sigma.log();
  return (rho * (lr - ls)).trace().real() / std::log(2.0);
}

inline CMatrix apply(const std::vector<CMatrix>& kraus, const CMatrix& x) {
  const Eigen::Index n = x.rows();
  CMatrix y = CMatrix::Zero(n, n);
  for (const CMatrix& m : kraus)
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b)
        for (Eigen::Index i = 0; i < n; ++i)
          for (Eigen::Index j = 0; j < n; ++j) y(a, b) += m(a, i) * x(i, j) * std::conj(m(b, j));
  return y;
}

inline CMatrix unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

// Column-stacking superoperator: column j*n+i holds vec(phi(|i><j|)).
inline CMatrix superop(const std::vector<CMatrix>& kraus, Eigen::Index n) {
  CMatrix s(n * n, n * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      const CMatrix y = oracle::apply(kraus, unit(n, i, j));
      for (Eigen::Index c = 0; c < n; ++c)
        for (Eigen::Index r = 0; r < n; ++r) s(c * n + r, j * n + i) = y(r, c);
    }
  return s;
}

// sum_ij phi(|i><j|) (x) |i><j|, output factor first.
inline CMatrix choi(const std::vector<CMatrix>& kraus, Eigen::Index n) {
  CMatrix c = CMatrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const CMatrix y = oracle::apply(kraus, unit(n, i, j));
      for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) c(a * n + i, b * n + j) = y(a, b);
    }
  return c;
}

// Trace over the first factor of a (dl*dr)-square matrix.
inline CMatrix trace_first(const CMatrix& x, Eigen::Index dl, Eigen::Index dr) {
  CMatrix r = CMatrix::Zero(dr, dr);
  for (Eigen::Index a = 0; a < dl; ++a)
    for (Eigen::Index i = 0; i < dr; ++i)
      for (Eigen::Index j = 0; j < dr; ++j) r(i, j) += x(a * dr + i, a * dr + j);
  return r;
}

inline CMatrix trace_second(const CMatrix& x, Eigen::Index dl, Eigen::Index dr) {
  CMatrix r = CMatrix::Zero(dl, dl);
  for (Eigen::Index a = 0; a < dl; ++a)
    for (Eigen::Index b = 0; b < dl; ++b)
      for (Eigen::Index i = 0; i < dr; ++i) r(a, b) += x(a * dr + i, b * dr + i);
  return r;
}

}  // namespace oracle
