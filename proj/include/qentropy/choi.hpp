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

#include "qentropy/channels.hpp"

namespace qentropy {

// J(phi) = (phi (x) id)(|Omega><Omega|) with the unnormalized |Omega> = sum_i |ii>.
// Tensor order is (output (x) reference): row index a*N + i.
struct ChoiMatrix {
  Eigen::Index dim;  // subsystem dimension N
  CMatrix matrix;    // N^2 x N^2
};

ChoiMatrix choi_matrix(const KrausChannel& phi);

// Kraus operators from the eigenvectors of J with eigenvalue > tol.psd, scaled by
// sqrt(eigenvalue). Throws NotPositive when J has an eigenvalue below -tol.psd.
KrausChannel channel_from_choi(const ChoiMatrix& j, const Tolerances& tol = {});

// Trace over the output factor: equals I exactly when phi is trace preserving.
CMatrix trace_output(const ChoiMatrix& j);
// Trace over the reference factor: equals phi(I).
CMatrix trace_reference(const ChoiMatrix& j);

// Von Neumann entropy of J(phi)/N, in [0, 2 log2 N]. Requires stochastic phi.
double map_entropy(const KrausChannel& phi, const Tolerances& tol = {});

}  // namespace qentropy
