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

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qentropy {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Numerical thresholds shared by every module. All must lie in [0, 1).
struct Tolerances {
  double herm = 1e-9;    // Hermiticity, max-abs deviation
  double psd = 1e-10;    // eigenvalue clipping / support cut
  double trace = 1e-9;   // unit-trace check
  double recon = 1e-10;  // reconstruction identities (scaled by N or N^2)
  double eq = 1e-8;      // entropy equalities, channel identities
  double fix = 1e-7;     // fixed-point residuals
  double group = 1e-6;   // eigenvalue grouping in algebra decomposition

  // Throws InvalidTolerance if any value is negative, non-finite or >= 1.
  void validate() const;
};

enum class ErrorKind {
  NotSquare,
  NotHermitian,
  NotPositive,
  TraceNotOne,
  NotFinite,
  DimensionMismatch,
  NotTraceNonIncreasing,
  NotStochastic,
  NotBistochastic,
  SupportViolation,
  NotAnAlgebra,
  AmbiguousGrouping,
  StructureMismatch,
  InvalidSpec,
  InvalidRank,
  InvalidArgument,
  NotDiagonal,
  NotProbability,
  InvalidTolerance,
  ParseError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Eigen-decomposition of a Hermitian matrix, eigenvalues descending.
struct Spectrum {
  RVector eigenvalues;
  CMatrix eigenvectors;  // columns orthonormal
};

Spectrum hermitian_spectrum(const CMatrix& herm);

// V f(lambda) V^dagger over the spectrum of a Hermitian matrix.
CMatrix spectral_function(const Spectrum& spec, const std::function<double(double)>& f);

// (X + X^dagger) / 2
CMatrix hermitian_part(const CMatrix& x);

double max_abs(const CMatrix& x);
bool all_finite(const CMatrix& x);

// Hilbert-Schmidt inner product tr(A^dagger B).
Complex hs_inner(const CMatrix& a, const CMatrix& b);

// Column-stacking vectorization: vec(X)[r + c*rows] = X(r, c).
CVector vec(const CMatrix& x);
CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols);

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Partial traces of an operator on C^dl (x) C^dr, index a*dr + j.
CMatrix partial_trace_right(const CMatrix& x, Eigen::Index dl, Eigen::Index dr);
CMatrix partial_trace_left(const CMatrix& x, Eigen::Index dl, Eigen::Index dr);

// |i><j| in dimension n.
CMatrix matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j);

// U W^dagger from the SVD of a square matrix.
CMatrix polar_unitary(const CMatrix& x);

// min over theta of ||u - e^{i theta} v||_F.
double phase_invariant_distance(const CMatrix& u, const CMatrix& v);

}  // namespace qentropy
