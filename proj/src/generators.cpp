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

#include "qentropy/generators.hpp"

#include <cmath>
#include <numbers>

namespace qentropy {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t Rng::index(std::size_t n) {
  const auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
  return k < n ? k : n - 1;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

CMatrix Rng::ginibre(Eigen::Index rows, Eigen::Index cols) {
  CMatrix g(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) g(r, c) = complex_normal();
  return g;
}

std::vector<double> Rng::simplex(std::size_t n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (double& x : w) {
    x = -std::log(1.0 - uniform());
    total += x;
  }
  if (total <= 0.0) return std::vector<double>(n, 1.0 / static_cast<double>(n));
  for (double& x : w) x /= total;
  return w;
}

std::vector<std::size_t> Rng::permutation(std::size_t n) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[index(i)]);
  return perm;
}

DensityMatrix random_density(Eigen::Index n, Eigen::Index rank, Rng& rng) {
  if (n < 1 || rank < 1 || rank > n) {
    throw Error(ErrorKind::InvalidRank, "random_density requires 1 <= rank <= N");
  }
  const CMatrix g = rng.ginibre(n, rank);
  CMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix::validate(hermitian_part(m));
}

DensityMatrix random_density(Eigen::Index n, Eigen::Index rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(n, rank, rng);
}

CMatrix random_unitary(Eigen::Index n, Rng& rng) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "random_unitary requires N >= 1");
  const CMatrix g = rng.ginibre(n, n);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    const Complex phase = mag > 0.0 ? r(k, k) / mag : Complex(1.0);
    q.col(k) *= phase;
  }
  return q;
}

CMatrix random_unitary(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(n, rng);
}

KrausChannel random_bistochastic_channel(Eigen::Index n, std::size_t num_unitaries, Rng& rng) {
  if (num_unitaries < 1) throw Error(ErrorKind::InvalidArgument, "need at least one unitary");
  const std::vector<double> w = rng.simplex(num_unitaries);
  std::vector<CMatrix> ks;
  ks.reserve(num_unitaries);
  for (double wi : w) ks.push_back(std::sqrt(wi) * random_unitary(n, rng));
  return KrausChannel(std::move(ks));
}

KrausChannel random_bistochastic_channel(Eigen::Index n, std::size_t num_unitaries, std::uint64_t seed) {
  Rng rng(seed);
  return random_bistochastic_channel(n, num_unitaries, rng);
}

KrausChannel random_stochastic_channel(Eigen::Index n, Eigen::Index env_dim, Rng& rng) {
  if (env_dim < 1) throw Error(ErrorKind::InvalidArgument, "environment dimension must be >= 1");
  const CMatrix w = random_unitary(n * env_dim, rng);
  // Isometry C^N -> C^N (x) C^env, row index i*env + e.
  const CMatrix v = w.leftCols(n);
  std::vector<CMatrix> ks;
  ks.reserve(static_cast<std::size_t>(env_dim));
  for (Eigen::Index e = 0; e < env_dim; ++e) {
    CMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m.row(i) = v.row(i * env_dim + e);
    ks.push_back(std::move(m));
  }
  return KrausChannel(std::move(ks));
}

KrausChannel random_stochastic_channel(Eigen::Index n, Eigen::Index env_dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_stochastic_channel(n, env_dim, rng);
}

namespace {

RMatrix permutation_matrix(const std::vector<std::size_t>& perm) {
  const auto n = static_cast<Eigen::Index>(perm.size());
  RMatrix p = RMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) p(static_cast<Eigen::Index>(perm[j]), j) = 1.0;
  return p;
}

}  // namespace

StochasticMatrix random_bistochastic_matrix(Eigen::Index n, std::size_t num_perms, Rng& rng) {
  if (num_perms < 1) throw Error(ErrorKind::InvalidArgument, "need at least one permutation");
  const std::vector<double> w = rng.simplex(num_perms);
  RMatrix b = RMatrix::Zero(n, n);
  for (double wi : w) b += wi * permutation_matrix(rng.permutation(static_cast<std::size_t>(n)));
  return StochasticMatrix::validate(b);
}

StochasticMatrix random_bistochastic_matrix(Eigen::Index n, std::size_t num_perms, std::uint64_t seed) {
  Rng rng(seed);
  return random_bistochastic_matrix(n, num_perms, rng);
}

std::vector<double> random_probability(Eigen::Index n, Rng& rng) {
  return rng.simplex(static_cast<std::size_t>(n));
}

ClassicalInstance preserving_classical_instance(Eigen::Index n, Rng& rng) {
  std::vector<Eigen::Index> sizes;
  for (Eigen::Index left = n; left > 0;) {
    const auto m = static_cast<Eigen::Index>(1 + rng.index(static_cast<std::size_t>(left)));
    sizes.push_back(m);
    left -= m;
  }
  const std::vector<double> mass = rng.simplex(sizes.size());
  RMatrix averaging = RMatrix::Zero(n, n);
  RVector y(n);
  Eigen::Index offset = 0;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const Eigen::Index m = sizes[k];
    averaging.block(offset, offset, m, m).setConstant(1.0 / static_cast<double>(m));
    y.segment(offset, m).setConstant(mass[k] / static_cast<double>(m));
    offset += m;
  }
  const RMatrix p_perm = permutation_matrix(rng.permutation(static_cast<std::size_t>(n)));
  const RMatrix q_perm = permutation_matrix(rng.permutation(static_cast<std::size_t>(n)));
  const RVector p = q_perm.transpose() * y;
  const RMatrix b = p_perm * averaging * q_perm;
  return {StochasticMatrix::validate(b), ProbabilityVector::validate(std::span<const double>(p.data(), p.size()))};
}

}  // namespace qentropy
