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

#include <cmath>

#include "qf/ccr_oracle.hpp"
#include "qf/error.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace qf {
namespace {

TEST(BosonOps, LadderEntries) {
  const BosonOps ops = boson_ops(1, 3);
  ASSERT_EQ(ops.dim(), 4);
  const Matrix& a = ops.a[0];
  for (int n = 1; n <= 3; ++n) EXPECT_NEAR(a(n - 1, n).real(), std::sqrt(double(n)), 1e-15);
  Matrix rest = a;
  for (int n = 1; n <= 3; ++n) rest(n - 1, n) = 0.0;
  EXPECT_EQ(testing::max_abs(rest), 0.0);
}

TEST(BosonOps, CommutatorDefectAtTopState) {
  const BosonOps ops = boson_ops(1, 6);
  const Matrix comm = ops.a[0] * ops.adag[0] - ops.adag[0] * ops.a[0];
  Matrix expected = Matrix::Identity(7, 7);
  expected(6, 6) = -6.0;
  EXPECT_LT(testing::max_abs(comm - expected), 1e-12);
}

TEST(BosonOps, QuadraturesHermitianAndTwoModesCommute) {
  const BosonOps ops = boson_ops(2, 4);
  for (int j = 0; j < 2; ++j) {
    EXPECT_LT(testing::max_abs(ops.q[j] - Matrix(ops.q[j].adjoint())), 1e-15);
    EXPECT_LT(testing::max_abs(ops.p[j] - Matrix(ops.p[j].adjoint())), 1e-15);
  }
  EXPECT_LT(testing::max_abs(ops.a[0] * ops.adag[1] - ops.adag[1] * ops.a[0]), 1e-12);
}

TEST(BosonOps, ResourceCaps) {
  EXPECT_THROW(boson_ops(3, 4), Error);
  EXPECT_THROW(boson_ops(1, 1), Error);
  try {
    boson_ops(2, 60);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ResourceCap);
  }
}

TEST(GaussianDensity, ThermalPopulations) {
  const double beta = 0.7;
  const TruncatedState st = gaussian_density(QuadraticHamiltonian::thermal(beta), 30);
  const Matrix& rho = st.rho.matrix();
  for (int n = 0; n < 10; ++n) {
    EXPECT_NEAR(rho(n + 1, n + 1).real() / rho(n, n).real(), std::exp(-beta), 1e-12);
  }
  EXPECT_LT(testing::max_abs(rho - Matrix(rho.diagonal().asDiagonal())), 1e-14);
}

TEST(GaussianDensity, MeanPhotonNumberAtHalf) {
  const TruncatedState st = gaussian_density(QuadraticHamiltonian::thermal(std::log(2.0)), 40);
  const BosonOps ops = boson_ops(1, 40);
  const double nbar = (st.rho.matrix() * ops.adag[0] * ops.a[0]).trace().real();
  EXPECT_NEAR(nbar, 1.0, 1e-8);
}

TEST(GaussianDensity, SmallSqueezing) {
  QuadraticHamiltonian h;
  h.n_modes = 1;
  h.omega = Matrix::Constant(1, 1, 1.0);
  h.xi = Matrix::Constant(1, 1, 0.1);
  const TruncatedState st = gaussian_density(h, 40);
  EXPECT_NEAR(st.rho.matrix().trace().real(), 1.0, 1e-10);
  EXPECT_GE(eig_h(st.rho.hermitian()).values(0), -1e-12);
}

TEST(GaussianDensity, GaplessHamiltonianRejected) {
  QuadraticHamiltonian h;
  h.n_modes = 1;
  h.omega = Matrix::Constant(1, 1, 0.0);
  h.xi = Matrix::Constant(1, 1, 0.0);
  EXPECT_THROW(gaussian_density(h, 20), Error);
  h.omega(0, 0) = 1.0;
  h.xi(0, 0) = 1.5;
  try {
    gaussian_density(h, 20);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonConvergence);
  }
}

TEST(CovarianceOfDensity, Vacuum) {
  const CcrCovariance r = covariance_of_density(gaussian_density(QuadraticHamiltonian::thermal(40.0), 20));
  EXPECT_LT((r.r() - RealMatrix::Identity(2, 2) * 0.5).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_TRUE(r.space().same_as(SymplecticSpace::canonical(1)));
}

TEST(CovarianceOfDensity, ThermalHalf) {
  const CcrCovariance r = covariance_of_density(gaussian_density(QuadraticHamiltonian::thermal(std::log(2.0)), 60));
  EXPECT_LT((r.r() - RealMatrix::Identity(2, 2) * 1.5).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(CovarianceOfDensity, SqueezedVacuum) {
  const double rsq = 0.3;
  const CcrCovariance r =
      covariance_of_density(gaussian_density(QuadraticHamiltonian::squeezed_thermal(40.0, rsq), 60));
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(r.r());
  EXPECT_NEAR(es.eigenvalues()(0), std::exp(-2.0 * rsq) / 2.0, 1e-8);
  EXPECT_NEAR(es.eigenvalues()(1), std::exp(2.0 * rsq) / 2.0, 1e-8);
  EXPECT_NEAR((2.0 * r.r()).determinant(), 1.0, 1e-8);
}

TEST(CovarianceOfDensity, UnconvergedStateRejected) {
  EXPECT_THROW(covariance_of_density(gaussian_density(QuadraticHamiltonian::thermal(0.2), 20)), Error);
}

TEST(OverlapCcr, Examples) {
  const TruncatedState vac = gaussian_density(QuadraticHamiltonian::thermal(40.0), 20);
  EXPECT_NEAR(overlap_ccr(vac, vac).value, 1.0, 1e-10);
  const TruncatedState half = gaussian_density(QuadraticHamiltonian::thermal(std::log(2.0)), 20);
  const TruncatedState third = gaussian_density(QuadraticHamiltonian::thermal(std::log(3.0)), 20);
  EXPECT_NEAR(overlap_ccr(half, vac).value, 1.0 / std::sqrt(2.0), 1e-6);
  EXPECT_NEAR(overlap_ccr(half, third).value, testing::thermal_overlap(0.5, 1.0 / 3.0), 1e-6);
  EXPECT_NEAR(overlap_ccr(half, third).value, 0.9756630355, 1e-6);
}

TEST(OverlapCcr, FormulaAgreementSqueezedAndTwoMode) {
  const TruncatedState sq = gaussian_density(QuadraticHamiltonian::squeezed_thermal(1.0, 0.2), 40);
  const TruncatedState th = gaussian_density(QuadraticHamiltonian::thermal(1.3), 40);
  const CcrOverlap ov = overlap_ccr(sq, th);
  EXPECT_NEAR(ov.value, trans_prob_ccr(covariance_of_density(sq), covariance_of_density(th)), 1e-6);
  EXPECT_GE(ov.fidelity * ov.fidelity - ov.value * ov.value, -1e-10);
  EXPECT_GE(ov.value - ov.fidelity * ov.fidelity, -1e-10);

  const auto h1 = QuadraticHamiltonian::product(QuadraticHamiltonian::thermal(1.5),
                                                QuadraticHamiltonian::squeezed_thermal(2.0, 0.15));
  const auto h2 =
      QuadraticHamiltonian::product(QuadraticHamiltonian::thermal(2.5), QuadraticHamiltonian::thermal(1.8));
  const TruncatedState a = gaussian_density(h1, 20);
  const TruncatedState b = gaussian_density(h2, 20);
  EXPECT_NEAR(overlap_ccr(a, b).value, trans_prob_ccr(covariance_of_density(a), covariance_of_density(b)), 1e-6);
}

}  // namespace
}  // namespace qf
