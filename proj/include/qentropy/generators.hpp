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

#include <cstdint>
#include <random>
#include <vector>

#include "qentropy/classical.hpp"

namespace qentropy {

// Deterministic random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; uniform and normal variates are derived
// here (53-bit mantissa fill, Box-Muller) rather than through the
// implementation-defined <random> distributions, so streams agree across
// platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                          // [0, 1)
  std::size_t index(std::size_t n);          // uniform in [0, n)
  double normal();                           // standard normal
  Complex complex_normal();                  // real and imaginary parts standard normal
  CMatrix ginibre(Eigen::Index rows, Eigen::Index cols);
  std::vector<double> simplex(std::size_t n);  // flat Dirichlet weights
  std::vector<std::size_t> permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

DensityMatrix random_density(Eigen::Index n, Eigen::Index rank, Rng& rng);
DensityMatrix random_density(Eigen::Index n, Eigen::Index rank, std::uint64_t seed);

CMatrix random_unitary(Eigen::Index n, Rng& rng);
CMatrix random_unitary(Eigen::Index n, std::uint64_t seed);

// Mixed-unitary channel {sqrt(w_i) U_i}.
KrausChannel random_bistochastic_channel(Eigen::Index n, std::size_t num_unitaries, Rng& rng);
KrausChannel random_bistochastic_channel(Eigen::Index n, std::size_t num_unitaries, std::uint64_t seed);

// Kraus operators (I (x) <e|) V of a random isometry V : C^N -> C^N (x) C^env.
KrausChannel random_stochastic_channel(Eigen::Index n, Eigen::Index env_dim, Rng& rng);
KrausChannel random_stochastic_channel(Eigen::Index n, Eigen::Index env_dim, std::uint64_t seed);

// Birkhoff mixture of num_perms random permutation matrices.
StochasticMatrix random_bistochastic_matrix(Eigen::Index n, std::size_t num_perms, Rng& rng);
StochasticMatrix random_bistochastic_matrix(Eigen::Index n, std::size_t num_perms, std::uint64_t seed);

std::vector<double> random_probability(Eigen::Index n, Rng& rng);

// Entropy-preserving classical pair: B = P (direct sum of J_m / m) Q with random
// permutations P, Q and all-ones blocks J_m, and p constant on each block's
// preimage under Q, so that H(Bp) = H(p) and B^T B p = p.
struct ClassicalInstance {
  StochasticMatrix b;
  ProbabilityVector p;
};
ClassicalInstance preserving_classical_instance(Eigen::Index n, Rng& rng);

}  // namespace qentropy
