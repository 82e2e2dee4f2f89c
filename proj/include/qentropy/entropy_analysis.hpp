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
#include <optional>
#include <string>
#include <vector>

#include "qentropy/channels.hpp"
#include "qentropy/choi.hpp"

namespace qentropy {

// S(phi(rho)) = S(rho) versus phi^dagger phi(rho) = rho for bistochastic phi.
struct PreservationReport {
  double entropy_in;     // S(rho)
  double entropy_out;    // S(phi(rho))
  double entropy_gap;    // |S_out - S_in|
  double residual_fix;   // ||phi^dagger phi(rho) - rho||_F
  bool entropy_equal;    // entropy_gap <= tol.eq
  bool fixed_point;      // residual_fix <= tol.fix
  bool agreement;        // entropy_equal == fixed_point
  bool preserved() const { return entropy_equal && fixed_point; }
};

PreservationReport entropy_preservation_report(const KrausChannel& phi, const DensityMatrix& rho,
                                               const Tolerances& tol = {});

struct MonotonicityReport {
  double relative_in;                  // S(rho || sigma)
  double relative_out;                 // S(phi(rho) || phi(sigma))
  double slack;                        // relative_in - relative_out
  std::optional<double> entropy_gain;  // S(phi(rho)) - S(rho), bistochastic phi with sigma = I/N
  bool holds;                          // slack >= -tol.eq (and entropy_gain >= -tol.eq)
};

MonotonicityReport entropy_monotonicity_check(const KrausChannel& phi, const DensityMatrix& rho,
                                              const DensityMatrix& sigma, const Tolerances& tol = {});

struct PetzReport {
  double relative_in;
  double relative_out;
  double relative_gap;       // |S(rho||sigma) - S(phi rho||phi sigma)|
  double recovery_residual;  // ||phi_sigma^dagger(phi(rho)) - rho||_F
  bool equality;             // relative_gap <= tol.eq
  bool recovered;            // recovery_residual <= tol.fix
  bool agreement;
};

PetzReport check_petz_equality(const KrausChannel& phi, const DensityMatrix& rho, const DensityMatrix& sigma,
                               const Tolerances& tol = {});

// Orthonormal (Hilbert-Schmidt) basis of Fix(phi^dagger o phi).
struct FixedPointBasis {
  Eigen::Index dim;
  std::vector<CMatrix> basis;
  std::vector<double> eigenvalue_residuals;  // ||phi^dagger phi(F) - F||_F per element
  double spectral_gap;                       // 1 - largest eigenvalue below the cut (1 if none)
  bool hermitian;                            // basis elements are Hermitian
};

FixedPointBasis fixed_point_space(const KrausChannel& phi, const Tolerances& tol = {});

// H = (+)_k V_k (C^dl (x) C^dr). Columns of V_k are ordered a*dr + j.
struct Block {
  CMatrix isometry;
  Eigen::Index dl;
  Eigen::Index dr;
};

struct BlockStructure {
  Eigen::Index dim;
  std::vector<Block> blocks;
  // max over basis elements of the distance to the (+)_k L(H^L_k) (x) I form;
  // zero for structures built directly by the synthesizer.
  double algebra_residual = 0.0;
  std::size_t attempts = 1;
};

// Sort by (dl, dr, rounded isometry entries).
void canonicalize(BlockStructure& b);

// Minimal central projections from a generic central element, then matrix
// units inside each block from a generic element and polar-decomposed
// connecting elements. Random draws come from `seed`, with up to three
// reseeded retries when eigenvalue groups are ambiguous.
BlockStructure decompose_fixed_point_algebra(const FixedPointBasis& fix, const Tolerances& tol = {},
                                             std::uint64_t seed = 0);

struct BlockCheck {
  Eigen::Index dl;
  Eigen::Index dr;
  double weight;          // p_k
  CMatrix left_state;     // rho^L_k (zero when p_k vanishes)
  CMatrix left_unitary;   // U_k, up to global phase
  CMatrix right_superop;  // superoperator matrix of phi^R_k
  double factorization_residual;  // ||V^dagger rho V - p rho^L (x) I/dr||_F
  double leakage_residual;        // mass of phi(V X V^dagger) outside the block range
  double unitary_residual;        // ||U^dagger U - I||_F after extraction
  double action_residual;         // max over product inputs of the Ad_U (x) phi^R mismatch
  double right_bistochastic_residual;
};

struct BlockVerification {
  double isometry_residual;      // max ||V_k^dagger V_k - I||, ||V_j^dagger V_k||, completeness
  double block_diagonal_residual;  // ||rho - sum_k P_k rho P_k||_F
  std::vector<BlockCheck> blocks;
  std::string failed_check;      // empty when every check passed
  bool passed() const { return failed_check.empty(); }
};

// Non-throwing inspection: fills every residual and names the first failing check.
BlockVerification inspect_block_structure(const BlockStructure& b, const KrausChannel& phi,
                                          const DensityMatrix& rho, const Tolerances& tol = {});
// Same, but throws StructureMismatch naming the failing check.
BlockVerification verify_block_structure(const BlockStructure& b, const KrausChannel& phi,
                                         const DensityMatrix& rho, const Tolerances& tol = {});

struct BlockSpec {
  struct Dims {
    Eigen::Index dl;
    Eigen::Index dr;
  };
  std::vector<Dims> dims;
  std::vector<double> weights;           // p_k; drawn at random when empty
  std::vector<CMatrix> left_states;      // rho^L_k; random full rank when empty
  std::vector<CMatrix> left_unitaries;   // U_k; random when empty

  Eigen::Index total_dim() const;
};

// "2x1,1x2" -> {(2,1), (1,2)}
BlockSpec parse_block_spec(const std::string& text);

struct SynthesizedPair {
  KrausChannel channel;
  DensityMatrix state;
  BlockStructure structure;
};

// rho = (+) p_k rho^L_k (x) I/dr and phi = (+) Ad_{U_k} (x) phi^R_k, with
// mixed-unitary phi^R_k (three unitaries when dr > 1), conjugated by a random
// global unitary. Blocks do not talk to each other: off-diagonal blocks are
// annihilated, so Fix(phi^dagger phi) is exactly (+) L(H^L_k) (x) I.
SynthesizedPair synthesize_pair(const BlockSpec& spec, std::uint64_t seed);

// S^map(phi o psi) = S^map(psi) versus phi^dagger phi psi = psi.
struct MapEntropyReport {
  double map_entropy_in;   // S^map(psi)
  double map_entropy_out;  // S^map(phi o psi)
  double entropy_gap;
  double channel_residual;  // ||S(phi)^dagger S(phi) S(psi) - S(psi)||_F
  bool entropy_equal;       // entropy_gap <= tol.eq
  bool fixed_point;         // channel_residual <= tol.fix * N
  bool agreement;
};

MapEntropyReport map_entropy_preservation_report(const KrausChannel& phi, const KrausChannel& psi,
                                                 const Tolerances& tol = {});

}  // namespace qentropy
