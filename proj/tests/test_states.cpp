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

#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "qentropy/generators.hpp"
#include "qentropy/states.hpp"
#include "support.hpp"

using namespace qentropy;

namespace {

CMatrix diag(std::initializer_list<double> d) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) m(i, i) = x, ++i;
  return m;
}

CVector ket(Eigen::Index n, Eigen::Index i) {
  CVector v = CVector::Zero(n);
  v(i) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("validate_state accepts and rejects the basic cases") {
  const DensityMatrix half = validate_state(0.5 * CMatrix::Identity(2, 2));
  CHECK(half.spectrum().eigenvalues(0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(half.spectrum().eigenvalues(1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_NOTHROW(validate_state(diag({0.8, 0.2})));

  CMatrix upper = CMatrix::Zero(2, 2);
  upper(0, 1) = 1.0;
  REQUIRE_ERROR_KIND(validate_state(upper), ErrorKind::NotHermitian);
  REQUIRE_ERROR_KIND(validate_state(diag({0.6, 0.6})), ErrorKind::TraceNotOne);
  REQUIRE_ERROR_KIND(validate_state(diag({1.1, -0.1})), ErrorKind::NotPositive);
  REQUIRE_ERROR_KIND(validate_state(CMatrix::Zero(2, 3)), ErrorKind::NotSquare);
  CMatrix nan = diag({0.5, 0.5});
  nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
  REQUIRE_ERROR_KIND(validate_state(nan), ErrorKind::NotFinite);
}

TEST_CASE("tiny negative eigenvalues are clipped") {
  const DensityMatrix rho = validate_state(diag({1.0 + 5e-11, -5e-11}));
  CHECK(rho.spectrum().eigenvalues.minCoeff() >= 0.0);
  CHECK(von_neumann_entropy(rho) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("von Neumann entropy of reference states") {
  CHECK(von_neumann_entropy(maximally_mixed(2)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(von_neumann_entropy(pure_state(ket(2, 0))) == 0.0);
  const double expected = -0.8 * std::log2(0.8) - 0.2 * std::log2(0.2);
  CHECK(std::abs(von_neumann_entropy(validate_state(diag({0.8, 0.2}))) - expected) < 1e-14);
  CHECK(expected == doctest::Approx(0.721928).epsilon(1e-6));
}

TEST_CASE("entropy agrees with the general eigensolver") {
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    const auto n = static_cast<Eigen::Index>(1 + rng.index(6));
    const auto r = static_cast<Eigen::Index>(1 + rng.index(static_cast<std::size_t>(n)));
    const DensityMatrix rho = random_density(n, r, rng);
    CHECK(std::abs(von_neumann_entropy(rho) - oracle::entropy(rho.matrix())) < 1e-9);
  }
}

TEST_CASE("support projector and generalized inverse") {
  const Tolerances tol;
  CHECK((support_projector(validate_state(diag({0.5, 0.5, 0.0}))) - diag({1, 1, 0})).norm() < 1e-14);
  CHECK((support_projector(pure_state(ket(2, 0))) - diag({1, 0})).norm() < 1e-14);
  CHECK((generalized_inverse(validate_state(diag({0.5, 0.0, 0.5}))) - diag({2, 0, 2})).norm() < 1e-12);
  CHECK((generalized_inverse(maximally_mixed(3)) - 3.0 * CMatrix::Identity(3, 3)).norm() < 1e-12);

  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = random_density(4, 4, rng);
    CHECK((support_projector(rho) - CMatrix::Identity(4, 4)).norm() < 1e-12);
    CHECK((rho.matrix() * generalized_inverse(rho) - CMatrix::Identity(4, 4)).norm() < 1e-8);
  }
  // Applying the generalized inverse twice returns rho on its support.
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = random_density(5, 2, rng);
    const CMatrix inv = generalized_inverse(rho);
    const DensityMatrix inv_state = validate_state(inv / inv.trace().real());
    const CMatrix back = generalized_inverse(inv_state) / inv.trace().real();
    CHECK((back - rho.matrix()).norm() <= tol.recon * 5 * 1e2);
  }
}

TEST_CASE("relative entropy reference values") {
  const DensityMatrix zero = pure_state(ket(2, 0));
  const DensityMatrix half = maximally_mixed(2);
  CHECK(relative_entropy(half, half) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(relative_entropy(zero, half) - 1.0) < 1e-12);
  CHECK(std::isinf(relative_entropy(half, zero)));
  CHECK(relative_entropy(half, zero) > 0.0);
  const RelativeEntropy d = relative_entropy_detail(half, zero);
  CHECK_FALSE(d.finite());
  CHECK(d.support_residual > 0.5);
}

TEST_CASE("relative entropy matches the matrix logarithm on full-rank pairs") {
  Rng rng(44);
  for (int t = 0; t < 30; ++t) {
    const auto n = static_cast<Eigen::Index>(2 + rng.index(4));
    const DensityMatrix rho = random_density(n, n, rng);
    const DensityMatrix sigma = random_density(n, n, rng);
    CHECK(std::abs(relative_entropy(rho, sigma) -
                   oracle::relative_entropy_full_rank(rho.matrix(), sigma.matrix())) < 1e-8);
  }
}

TEST_CASE("state invariants over random samples") {
  const Tolerances tol;
  Rng rng(99);
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<Eigen::Index>(1 + rng.index(6));
    const auto r = static_cast<Eigen::Index>(1 + rng.index(static_cast<std::size_t>(n)));
    const DensityMatrix rho = random_density(n, r, rng);
    const double s = von_neumann_entropy(rho);
    CHECK(s >= 0.0);
    CHECK(s <= std::log2(static_cast<double>(n)) + tol.eq);

    const RVector& ev = rho.spectrum().eigenvalues;
    CHECK(ev.minCoeff() >= 0.0);
    CHECK(ev.maxCoeff() <= 1.0 + tol.trace);
    CHECK(std::abs(ev.sum() - 1.0) <= tol.trace);
    const CMatrix back = rho.spectrum().eigenvectors * ev.cast<Complex>().asDiagonal() *
                         rho.spectrum().eigenvectors.adjoint();
    CHECK((back - rho.matrix()).norm() <= tol.recon * static_cast<double>(n));

    const CMatrix u = random_unitary(n, rng);
    const DensityMatrix rotated = validate_state(u * rho.matrix() * u.adjoint());
    CHECK(std::abs(von_neumann_entropy(rotated) - s) <= tol.eq);

    CHECK(std::abs(relative_entropy(rho, maximally_mixed(n)) - (std::log2(static_cast<double>(n)) - s)) <= tol.eq);

    const DensityMatrix sigma = random_density(n, static_cast<Eigen::Index>(1 + rng.index(static_cast<std::size_t>(n))), rng);
    const double d = relative_entropy(rho, sigma);
    if (std::isfinite(d)) CHECK(d >= -tol.eq);
  }
}

TEST_CASE("psd square roots") {
  Rng rng(2);
  const DensityMatrix rho = random_density(4, 4, rng);
  const CMatrix s = psd_sqrt(rho.matrix());
  CHECK((s * s - rho.matrix()).norm() < 1e-12);
  const CMatrix is = psd_inverse_sqrt(rho.matrix());
  CHECK((is * rho.matrix() * is - CMatrix::Identity(4, 4)).norm() < 1e-8);
}
