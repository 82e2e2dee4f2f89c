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

#include <span>

#include "qentropy/linalg.hpp"

namespace qentropy {

// A validated quantum state: Hermitian, positive semi-definite, unit trace.
// Eigenvalues in [-tol.psd, 0) are clipped to zero at construction and the
// stored matrix is rebuilt from the clipped spectrum.
class DensityMatrix {
 public:
  static DensityMatrix validate(const CMatrix& m, const Tolerances& tol = {});

  Eigen::Index dim() const { return matrix_.rows(); }
  const CMatrix& matrix() const { return matrix_; }
  // Clipped spectrum, eigenvalues descending.
  const Spectrum& spectrum() const { return spectrum_; }

 private:
  DensityMatrix(CMatrix m, Spectrum s) : matrix_(std::move(m)), spectrum_(std::move(s)) {}

  CMatrix matrix_;
  Spectrum spectrum_;
};

DensityMatrix validate_state(const CMatrix& m, const Tolerances& tol = {});

DensityMatrix maximally_mixed(Eigen::Index n);
DensityMatrix pure_state(const CVector& psi);
DensityMatrix diagonal_state(std::span<const double> p, const Tolerances& tol = {});

// Entropies are in bits, with 0 log 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho);

CMatrix support_projector(const DensityMatrix& rho, const Tolerances& tol = {});
CMatrix generalized_inverse(const DensityMatrix& rho, const Tolerances& tol = {});

struct RelativeEntropy {
  double value;             // +inf when the support condition fails
  double support_residual;  // ||(I - P_sigma) P_rho||_F
  bool finite() const;
};

RelativeEntropy relative_entropy_detail(const DensityMatrix& rho, const DensityMatrix& sigma,
                                        const Tolerances& tol = {});
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                        const Tolerances& tol = {});

// Square root and generalized inverse square root of a PSD matrix, through
// the Hermitian eigendecomposition with the state clipping rule.
CMatrix psd_sqrt(const CMatrix& psd, const Tolerances& tol = {});
CMatrix psd_inverse_sqrt(const CMatrix& psd, const Tolerances& tol = {});

}  // namespace qentropy
