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
#include <vector>

#include "qentropy/channels.hpp"

namespace qentropy {

// Non-negative entries summing to one. Entries in [-tol.psd, 0) are clipped.
class ProbabilityVector {
 public:
  static ProbabilityVector validate(std::span<const double> entries, const Tolerances& tol = {});

  Eigen::Index dim() const { return values_.size(); }
  const RVector& values() const { return values_; }
  double operator[](Eigen::Index i) const { return values_(i); }

 private:
  explicit ProbabilityVector(RVector v) : values_(std::move(v)) {}
  RVector values_;
};

ProbabilityVector uniform_probability(Eigen::Index n);

// Square non-negative matrix acting on column vectors from the left. Column
// sums equal to one make it stochastic; row sums as well make it bistochastic.
class StochasticMatrix {
 public:
  static StochasticMatrix validate(const RMatrix& entries, const Tolerances& tol = {});

  Eigen::Index dim() const { return entries_.rows(); }
  const RMatrix& entries() const { return entries_; }
  bool stochastic() const { return stochastic_; }
  bool bistochastic() const { return bistochastic_; }
  double column_residual() const { return column_residual_; }  // max |col sum - 1|
  double row_residual() const { return row_residual_; }        // max |row sum - 1|

 private:
  StochasticMatrix() = default;
  RMatrix entries_;
  bool stochastic_ = false;
  bool bistochastic_ = false;
  double column_residual_ = 0.0;
  double row_residual_ = 0.0;
};

double shannon_entropy(const ProbabilityVector& p);

// +inf when some p_i > tol.psd has q_i <= tol.psd.
double classical_relative_entropy(const ProbabilityVector& p, const ProbabilityVector& q,
                                  const Tolerances& tol = {});

// B(phi)_{ij} = sum_mu |<i|M_mu|j>|^2. Requires stochastic phi.
StochasticMatrix kraus_matrix(const KrausChannel& phi, const Tolerances& tol = {});

// Kraus family {sqrt(T_ji) |j><i| : T_ji > tol.psd}, so that diag(p) -> diag(Tp).
KrausChannel channel_from_bistochastic(const StochasticMatrix& t, const Tolerances& tol = {});

struct CorollaryReport {
  double entropy_in;       // H(p)
  double entropy_out;      // H(Bp)
  double entropy_gap;      // |H(Bp) - H(p)|
  double fixed_residual;   // ||B^T B p - p||_2
  bool entropy_preserved;  // entropy_gap <= tol.eq
  bool fixed_point;        // fixed_residual <= tol.eq
  bool agreement;
};

CorollaryReport corollary_check(const StochasticMatrix& b, const ProbabilityVector& p,
                                const Tolerances& tol = {});

struct BridgeReport {
  RVector p;                  // diagonal of rho
  RVector q;                  // diagonal of phi(rho)
  RVector predicted;          // B(phi) p
  double residual;            // ||q - B(phi) p||_inf
  double off_diagonal;        // max |rho_ij|, i != j
  bool passed;                // residual <= tol.eq
};

// Requires rho diagonal in the computational basis (NotDiagonal otherwise).
BridgeReport bridge_check(const KrausChannel& phi, const DensityMatrix& rho, const Tolerances& tol = {});

}  // namespace qentropy
