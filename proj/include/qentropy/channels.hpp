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

#include <vector>

#include "qentropy/states.hpp"

namespace qentropy {

// Completely positive, trace non-increasing map X -> sum_j M_j X M_j^dagger on
// a single N-dimensional space. Construction checks shapes, finiteness and
// that the largest eigenvalue of sum_j M_j^dagger M_j is at most 1 + tol.eq.
class KrausChannel {
 public:
  KrausChannel(std::vector<CMatrix> kraus, const Tolerances& tol = {});

  // Shape and finiteness checks only. Used for adjoints, which are CP but
  // need not be trace non-increasing (e.g. the adjoint of amplitude damping).
  static KrausChannel completely_positive(std::vector<CMatrix> kraus);

  Eigen::Index dim() const { return dim_; }
  const std::vector<CMatrix>& kraus() const { return kraus_; }

 private:
  struct Unchecked {};
  KrausChannel(std::vector<CMatrix> kraus, Unchecked);
  void check_shapes();

  Eigen::Index dim_;
  std::vector<CMatrix> kraus_;
};

// N^2 x N^2 matrix acting on column-stacked vec(X).
struct SuperoperatorMatrix {
  Eigen::Index dim;
  CMatrix matrix;
};

enum class ChannelKind { TraceNonIncreasing, Stochastic, Bistochastic };

const char* to_string(ChannelKind kind);

struct ChannelClass {
  ChannelKind kind;
  bool stochastic;
  bool unital;
  double trace_residual;   // ||sum M^dagger M - I||_F
  double unital_residual;  // ||sum M M^dagger - I||_F
};

CMatrix apply(const KrausChannel& phi, const CMatrix& x);
DensityMatrix apply(const KrausChannel& phi, const DensityMatrix& rho, const Tolerances& tol = {});

KrausChannel adjoint(const KrausChannel& phi);

// phi o psi, Kraus list {M_i N_j}.
KrausChannel compose(const KrausChannel& phi, const KrausChannel& psi);

ChannelClass classify(const KrausChannel& phi, const Tolerances& tol = {});

// Throw NotStochastic / NotBistochastic with the residuals in the message.
void require_stochastic(const KrausChannel& phi, const Tolerances& tol, const char* role = "channel");
void require_bistochastic(const KrausChannel& phi, const Tolerances& tol, const char* role = "channel");

// sum_j conj(M_j) (x) M_j
SuperoperatorMatrix superoperator_matrix(const KrausChannel& phi);

// Frobenius distance between superoperator matrices.
double channel_distance(const KrausChannel& a, const KrausChannel& b);
bool channels_equal(const KrausChannel& a, const KrausChannel& b, const Tolerances& tol = {});

// Recovery map Ad_{sigma^1/2} o phi^dagger o Ad_{phi(sigma)^-1/2}, using the
// generalized inverse square root on supp(phi(sigma)).
KrausChannel petz_recovery(const KrausChannel& phi, const DensityMatrix& sigma,
                           const Tolerances& tol = {});

// Common fixed channels.
KrausChannel identity_channel(Eigen::Index n);
KrausChannel unitary_channel(const CMatrix& u);
// X -> tr(X) I/N, Kraus {|i><j| / sqrt(N)}.
KrausChannel fully_depolarizing(Eigen::Index n);
// X -> (1-p) X + p tr(X) I/N.
KrausChannel depolarizing(Eigen::Index n, double p);
// Kraus {|i><i|}.
KrausChannel dephasing(Eigen::Index n);
KrausChannel amplitude_damping(double gamma);

CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

}  // namespace qentropy
