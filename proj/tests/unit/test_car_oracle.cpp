/*
 * Copyright 2026 The qfstates Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <vector>

#include "qf/car_oracle.hpp"
#include "qf/error.hpp"
#include "support/generators.hpp"

namespace qf {
namespace {

using testing::Rng;

Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

TEST(JwGenerators, SingleMode) {
  const CliffordRep rep = jw_generators(1);
  ASSERT_EQ(rep.generators.size(), 2u);
  const Matrix c1 = rep.generators[0].dense(1);
  const Matrix c2 = rep.generators[1].dense(1);
  Matrix x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  EXPECT_EQ(c1, x);
  EXPECT_EQ(c2.diagonal(), Vector::Zero(2));
  EXPECT_EQ(anticommutator(c1, c2), Matrix::Zero(2, 2));
}

TEST(JwGenerators, CliffordRelationsAreExact) {
  for (int n = 1; n <= 4; ++n) {
    const CliffordRep rep = jw_generators(n);
    const Index dim = rep.fock_dim();
    for (int j = 0; j < 2 * n; ++j) {
      const Matrix cj = rep.generators[j].dense(n);
      EXPECT_EQ(cj, Matrix(cj.adjoint()));
      for (int k = j; k < 2 * n; ++k) {
        const Matrix expected = j == k ? Matrix(2.0 * Matrix::Identity(dim, dim)) : Matrix::Zero(dim, dim);
        EXPECT_EQ(anticommutator(cj, rep.generators[k].dense(n)), expected) << n << ":" << j << "," << k;
      }
    }
  }
}

TEST(JwGenerators, SizeCap) {
  EXPECT_THROW(jw_generators(0), Error);
  EXPECT_THROW(jw_generators(11), Error);
  try {
    jw_generators(11);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ResourceCap);
  }
}

TEST(PauliString, ProductMatchesDense) {
  const CliffordRep rep = jw_generators(3);
  for (std::uint32_t mask : {0b11u, 0b101101u, 0b111111u, 0b10010u}) {
    Matrix dense = Matrix::Identity(8, 8);
    for (int j = 0; j < 6; ++j)
      if (mask & (1u << j)) dense = dense * rep.generators[j].dense(3);
    EXPECT_LT(testing::max_abs(rep.monomial(mask).dense(3) - dense), 1e-15);
  }
}

TEST(DensityFromCovariance, TracialState) {
  const DensityMatrix rho = density_from_covariance(validate_car(Matrix::Identity(6, 6) * 0.5));
  EXPECT_LT(testing::max_abs(rho.matrix() - Matrix::Identity(8, 8) / 8.0), 1e-14);
}

TEST(DensityFromCovariance, FockStateIsPure) {
  Rng rng(51);
  const CarCovariance s = testing::random_car(rng, 6, 1.0);
  const DensityMatrix rho = density_from_covariance(s);
  const Matrix r = rho.matrix();
  EXPECT_NEAR((r * r).trace().real(), 1.0, 1e-10);
  EXPECT_LT(hs_norm(r * r - r), 1e-9);
}

TEST(DensityFromCovariance, SingleModeSpectrum) {
  for (double mu : {-0.5, -0.2, 0.0, 0.3}) {
    const EigenSystem es = eig_h(density_from_covariance(car_mode_covariance(mu)).hermitian());
    EXPECT_NEAR(es.values(0), 0.5 - std::abs(mu), 1e-13);
    EXPECT_NEAR(es.values(1), 0.5 + std::abs(mu), 1e-13);
  }
}

TEST(DensityFromCovariance, TwoPointFunctionAndParity) {
  Rng rng(52);
  const int n = 3;
  const CarCovariance s = testing::random_car(rng, 2 * n, 0.3);
  const DensityMatrix rho = density_from_covariance(s);
  const CliffordRep rep = jw_generators(n);
  for (int j = 0; j < 2 * n; ++j)
    for (int k = 0; k < 2 * n; ++k) {
      // e_j = c_j / sqrt 2.
      const Matrix ejek = rep.generators[j].dense(n) * rep.generators[k].dense(n) * 0.5;
      const cplx v = (rho.matrix() * ejek).trace();
      EXPECT_LT(std::abs(v - s.matrix()(j, k)), 1e-10) << j << "," << k;
    }
  for (std::uint32_t mask = 0; mask < (1u << (2 * n)); ++mask) {
    if (std::popcount(mask) % 2 == 1) {
      EXPECT_LT(std::abs(expectation(rho, rep.monomial(mask))), 1e-12) << mask;
    }
  }
}

TEST(DensityFromCovariance, HigherMomentsMatchWick) {
  Rng rng(53);
  const int n = 3;
  const CarCovariance s = testing::random_car(rng, 2 * n);
  const DensityMatrix rho = density_from_covariance(s);
  const CliffordRep rep = jw_generators(n);
  for (std::uint32_t mask : {0b1111u, 0b110011u, 0b111111u, 0b101110u}) {
    std::vector<Vector> xs;
    for (int j = 0; j < 2 * n; ++j)
      if (mask & (1u << j)) {
        Vector e = Vector::Zero(2 * n);
        e(j) = 1.0;
        xs.push_back(e);
      }
    const double scale = std::pow(2.0, std::popcount(mask) / 2.0);
    const cplx expected = wick_moment(s, xs) * scale;
    const cplx got = (rho.matrix() * rep.monomial(mask).dense(n)).trace();
    EXPECT_LT(std::abs(got - expected), 1e-10) << mask;
  }
}

TEST(DensityMatrix, RejectsBadTrace) {
  EXPECT_THROW(DensityMatrix(HermitianMatrix::identity(2)), Error);
  EXPECT_THROW(DensityMatrix(HermitianMatrix::diagonal(RealVector{{1.5, -0.5}})), Error);
}

DensityMatrix pure(const Vector& v) { return DensityMatrix(HermitianMatrix::symmetrized(v * v.adjoint())); }

TEST(Overlap, Examples) {
  Vector e0 = Vector::Zero(2), e1 = Vector::Zero(2);
  e0(0) = 1.0;
  e1(1) = 1.0;
  EXPECT_NEAR(overlap(pure(e0), pure(e0)), 1.0, 1e-14);
  EXPECT_NEAR(overlap(pure(e0), pure(e1)), 0.0, 1e-14);
  const DensityMatrix half(HermitianMatrix::identity(2) * 0.5);
  EXPECT_NEAR(overlap(half, pure(e0)), 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(FidelityTr, Examples) {
  Rng rng(54);
  const DensityMatrix rho = density_from_covariance(testing::random_car(rng, 4));
  EXPECT_NEAR(fidelity_tr(rho, rho), 1.0, 1e-12);
  const RealVector p{{0.1, 0.2, 0.3, 0.4}};
  const RealVector q{{0.4, 0.4, 0.1, 0.1}};
  double bhattacharyya = 0.0;
  for (int i = 0; i < 4; ++i) bhattacharyya += std::sqrt(p(i) * q(i));
  EXPECT_NEAR(fidelity_tr(DensityMatrix(HermitianMatrix::diagonal(p)), DensityMatrix(HermitianMatrix::diagonal(q))),
              bhattacharyya, 1e-14);
}

TEST(OracleVersusFormula, RandomPairs) {
  Rng rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 4;
    const CarCovariance s = testing::random_car(rng, 2 * n, 0.25);
    const CarCovariance t = testing::random_car(rng, 2 * n, 0.25);
    const DensityMatrix rho = density_from_covariance(s);
    const DensityMatrix tau = density_from_covariance(t);
    const double ov = overlap(rho, tau);
    EXPECT_NEAR(ov, trans_prob_car(CarStatePair(s, t)), 1e-8) << "trial " << trial;
    const double fid = fidelity_tr(rho, tau);
    EXPECT_GE(fid * fid - ov * ov, -1e-10);
    EXPECT_GE(ov - fid * fid, -1e-10);
  }
}

}  // namespace
}  // namespace qf
