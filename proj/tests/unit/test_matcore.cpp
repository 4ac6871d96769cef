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

#include "qf/error.hpp"
#include "qf/matcore.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace qf {
namespace {

using testing::Rng;
using testing::max_abs;

const cplx I(0.0, 1.0);

TEST(EigH, IdentityHasUnitSpectrum) {
  const EigenSystem es = eig_h(HermitianMatrix::identity(3));
  EXPECT_NEAR(es.values(0), 1.0, 1e-14);
  EXPECT_NEAR(es.values(1), 1.0, 1e-14);
  EXPECT_NEAR(es.values(2), 1.0, 1e-14);
}

TEST(EigH, DiagonalIsSortedWithPermutationVectors) {
  const EigenSystem es = eig_h(HermitianMatrix::diagonal(RealVector{{3.0, 1.0, 2.0}}));
  EXPECT_NEAR(es.values(0), 1.0, 1e-14);
  EXPECT_NEAR(es.values(1), 2.0, 1e-14);
  EXPECT_NEAR(es.values(2), 3.0, 1e-14);
  EXPECT_NEAR(std::abs(es.vectors(1, 0)), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(es.vectors(2, 1)), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(es.vectors(0, 2)), 1.0, 1e-14);
}

TEST(EigH, PauliY) {
  Matrix y(2, 2);
  y << 0.0, -I, I, 0.0;
  const EigenSystem es = eig_h(HermitianMatrix(y));
  EXPECT_NEAR(es.values(0), -1.0, 1e-14);
  EXPECT_NEAR(es.values(1), 1.0, 1e-14);
}

TEST(EigH, ReconstructsRandomHermitianAndIsDeterministic) {
  Rng rng(11);
  for (Index n : {1, 3, 8, 17}) {
    const Matrix g = testing::random_complex(rng, n, n);
    const HermitianMatrix h = HermitianMatrix::symmetrized(g);
    const EigenSystem es = eig_h(h);
    const Matrix back = es.vectors * es.values.cast<cplx>().asDiagonal() * es.vectors.adjoint();
    EXPECT_LE(hs_norm(back - h.matrix()), 1e-10 * n * h.matrix().norm());
    for (Index j = 1; j < n; ++j) EXPECT_LE(es.values(j - 1), es.values(j));
    const EigenSystem again = eig_h(h);
    EXPECT_EQ(es.values, again.values);
    EXPECT_EQ(es.vectors, again.vectors);
  }
}

TEST(HermitianMatrix, RejectsNonHermitian) {
  Matrix m(2, 2);
  m << 1.0, 1.0, 0.0, 1.0;
  EXPECT_THROW(HermitianMatrix{m}, Error);
  EXPECT_THROW(HermitianMatrix{Matrix(2, 3)}, Error);
}

TEST(SqrtPsd, Diagonal) {
  const HermitianMatrix r = sqrt_psd(HermitianMatrix::diagonal(RealVector{{4.0, 9.0}}));
  EXPECT_NEAR(r.matrix()(0, 0).real(), 2.0, 1e-14);
  EXPECT_NEAR(r.matrix()(1, 1).real(), 3.0, 1e-14);
  EXPECT_NEAR(std::abs(r.matrix()(0, 1)), 0.0, 1e-14);
}

TEST(SqrtPsd, ZeroMatrix) {
  EXPECT_EQ(max_abs(sqrt_psd(HermitianMatrix::zero(3)).matrix()), 0.0);
}

TEST(SqrtPsd, SquaresBackOnRandomPsd) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 1 + trial % 7;
    const Index rank = 1 + trial % n;
    const HermitianMatrix h = testing::random_psd(rng, n, rank);
    const Matrix r = sqrt_psd(h).matrix();
    EXPECT_LE(hs_norm(r * r - h.matrix()), 1e-8 * h.matrix().norm());
    EXPECT_GE(eig_h(HermitianMatrix::symmetrized(r)).values(0), -1e-12);
  }
}

TEST(SqrtPsd, RejectsNegativeEigenvalueWithMagnitude) {
  try {
    sqrt_psd(HermitianMatrix::diagonal(RealVector{{1.0, -0.25}}));
    FAIL() << "expected NotPsd";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPsd);
    EXPECT_DOUBLE_EQ(e.magnitude(), -0.25);
  }
}

TEST(SqrtPsd, TinyNegativeEigenvaluesClampToZero) {
  const HermitianMatrix r = sqrt_psd(HermitianMatrix::diagonal(RealVector{{1.0, -1e-13}}));
  EXPECT_EQ(r.matrix()(1, 1), cplx(0.0));
}

TEST(Pfaffian, TwoByTwo) {
  Matrix a(2, 2);
  a << 0.0, cplx(1.5, -0.5), -cplx(1.5, -0.5), 0.0;
  EXPECT_LT(std::abs(pfaffian(SkewMatrix(a)) - cplx(1.5, -0.5)), 1e-15);
}

TEST(Pfaffian, FourByFourExpansion) {
  Rng rng(3);
  const Matrix a = testing::random_skew(rng, 4);
  const cplx expected = a(0, 1) * a(2, 3) - a(0, 2) * a(1, 3) + a(0, 3) * a(1, 2);
  EXPECT_LT(std::abs(pfaffian(SkewMatrix(a)) - expected), 1e-12 * (1.0 + std::abs(expected)));
}

TEST(Pfaffian, EightByEightMatchesAll105Pairings) {
  ASSERT_EQ(testing::double_factorial_odd(8), 105);
  Rng rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix a = testing::random_skew(rng, 8);
    const cplx oracle = testing::pfaffian_by_pairings(a);
    EXPECT_LT(std::abs(pfaffian(SkewMatrix(a)) - oracle), 1e-10 * std::abs(oracle));
  }
}

TEST(Pfaffian, SquareEqualsDeterminant) {
  Rng rng(21);
  for (Index n = 2; n <= 12; n += 2) {
    const Matrix a = testing::random_skew(rng, n);
    const cplx pf = pfaffian(SkewMatrix(a));
    const cplx det = a.determinant();
    EXPECT_LT(std::abs(pf * pf - det), 1e-8 * std::abs(det)) << "n = " << n;
  }
}

TEST(Pfaffian, OddDimensionIsContractViolation) {
  EXPECT_THROW(pfaffian(SkewMatrix(Matrix::Zero(3, 3))), Error);
}

TEST(Pfaffian, SingularMatrixGivesZero) {
  Matrix a = Matrix::Zero(4, 4);
  a(0, 1) = 1.0;
  a(1, 0) = -1.0;
  EXPECT_EQ(pfaffian(SkewMatrix(a)), cplx(0.0));
}

TEST(GeometricMean, Idempotent) {
  Rng rng(1);
  const HermitianMatrix a = testing::random_psd(rng, 4);
  EXPECT_LT(hs_norm(geometric_mean(a, a).value.matrix() - a.matrix()), 1e-9 * a.matrix().norm());
}

TEST(GeometricMean, WithIdentityIsSquareRoot) {
  Rng rng(2);
  for (Index rank : {4, 2}) {
    const HermitianMatrix b = testing::random_psd(rng, 4, rank);
    const GeometricMean gm = geometric_mean(HermitianMatrix::identity(4), b);
    EXPECT_LT(hs_norm(gm.value.matrix() - sqrt_psd(b).matrix()), 1e-9) << "rank " << rank;
    EXPECT_EQ(gm.support_mismatch, rank != 4);
  }
}

TEST(GeometricMean, CommutingCase) {
  const GeometricMean gm = geometric_mean(HermitianMatrix::diagonal(RealVector{{1.0, 4.0}}),
                                          HermitianMatrix::diagonal(RealVector{{9.0, 1.0}}));
  EXPECT_NEAR(gm.value.matrix()(0, 0).real(), 3.0, 1e-12);
  EXPECT_NEAR(gm.value.matrix()(1, 1).real(), 2.0, 1e-12);
  EXPECT_NEAR(std::abs(gm.value.matrix()(0, 1)), 0.0, 1e-12);
}

TEST(GeometricMean, OrthogonalSupportsGiveZero) {
  const GeometricMean gm = geometric_mean(HermitianMatrix::diagonal(RealVector{{1.0, 0.0}}),
                                          HermitianMatrix::diagonal(RealVector{{0.0, 2.0}}));
  EXPECT_TRUE(gm.support_mismatch);
  EXPECT_EQ(gm.common_rank, 0);
  EXPECT_EQ(max_abs(gm.value.matrix()), 0.0);
}

TEST(GeometricMean, SymmetricAndCongruenceCovariant) {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + trial % 4;
    const Index rank = trial % 3 == 0 ? n - 1 : n;
    const HermitianMatrix a = testing::random_psd(rng, n, rank);
    const HermitianMatrix b = testing::random_psd(rng, n, trial % 2 ? rank : n);
    const Matrix ab = geometric_mean(a, b).value.matrix();
    const Matrix ba = geometric_mean(b, a).value.matrix();
    EXPECT_LT(hs_norm(ab - ba), 1e-7 * (1.0 + ab.norm()));

    const Matrix c = testing::random_invertible(rng, n);
    const HermitianMatrix ca = HermitianMatrix::symmetrized(c * a.matrix() * c.adjoint());
    const HermitianMatrix cb = HermitianMatrix::symmetrized(c * b.matrix() * c.adjoint());
    const Matrix lhs = geometric_mean(ca, cb).value.matrix();
    const Matrix rhs = c * ab * c.adjoint();
    EXPECT_LT(hs_norm(lhs - rhs), 1e-7 * (1.0 + rhs.norm())) << "trial " << trial;
  }
}

TEST(Ratio, SelfRatioIsSupportProjection) {
  Rng rng(6);
  const HermitianMatrix g = testing::random_psd(rng, 5, 3);
  const Matrix r = ratio(g, g).matrix();
  EXPECT_LT(hs_norm(r - support_projection(g).matrix()), 1e-9);
}

TEST(Ratio, Diagonal) {
  const Matrix r = ratio(HermitianMatrix::diagonal(RealVector{{1.0, 0.0}}),
                         HermitianMatrix::diagonal(RealVector{{2.0, 2.0}}))
                       .matrix();
  EXPECT_NEAR(r(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(r(1, 1)), 0.0, 1e-15);
}

TEST(Ratio, ContractionWhenDominated) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + trial % 5;
    const HermitianMatrix x = testing::random_psd(rng, n, 1 + trial % n);
    const HermitianMatrix y = testing::random_psd(rng, n, 1 + (trial + 1) % n);
    const EigenSystem es = eig_h(ratio(x, x + y));
    EXPECT_GE(es.values(0), -1e-10);
    EXPECT_LE(es.values(n - 1), 1.0 + 1e-10);
  }
}

TEST(Ratio, PartitionOfUnityOnSupport) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + trial % 5;
    const HermitianMatrix x = testing::random_psd(rng, n, 1 + trial % n);
    const HermitianMatrix y = testing::random_psd(rng, n, 1 + (trial * 3) % n);
    const HermitianMatrix g = x + y;
    const Matrix sum = ratio(x, g).matrix() + ratio(y, g).matrix();
    EXPECT_LT(hs_norm(sum - support_projection(g).matrix()), 1e-8);
  }
}

TEST(Ratio, SupportViolationNamesWitness) {
  try {
    ratio(HermitianMatrix::diagonal(RealVector{{0.0, 1.0}}), HermitianMatrix::diagonal(RealVector{{1.0, 0.0}}));
    FAIL() << "expected SupportViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SupportViolation);
    EXPECT_NE(std::string(e.what()).find("witness"), std::string::npos);
  }
}

TEST(ProjectionMeet, SelfMeet) {
  Rng rng(10);
  const ProjectionMatrix p = support_projection(testing::random_psd(rng, 4, 2));
  EXPECT_LT(hs_norm(projection_meet(p, p).matrix() - p.matrix()), 1e-9);
}

TEST(ProjectionMeet, OrthogonalRankOneGiveZero) {
  const ProjectionMatrix p(HermitianMatrix::diagonal(RealVector{{1.0, 0.0}}));
  const ProjectionMatrix r(HermitianMatrix::diagonal(RealVector{{0.0, 1.0}}));
  EXPECT_EQ(projection_meet(p, r).rank(), 0);
}

TEST(ProjectionMeet, SharedUnitVector) {
  // span{e1, e2} and span{e1, (e2 + e3)/sqrt 2} share exactly e1.
  Matrix bp = Matrix::Zero(3, 2);
  bp(0, 0) = 1.0;
  bp(1, 1) = 1.0;
  Matrix br = Matrix::Zero(3, 2);
  br(0, 0) = 1.0;
  br(1, 1) = br(2, 1) = 1.0 / std::sqrt(2.0);
  const ProjectionMatrix meet = projection_meet(ProjectionMatrix::onto(bp, 3), ProjectionMatrix::onto(br, 3));
  EXPECT_EQ(meet.rank(), 1);
  // nullspace of 2I - P - R is e1.
  EXPECT_NEAR(meet.matrix()(0, 0).real(), 1.0, 1e-10);
  EXPECT_NEAR(meet.matrix().trace().real(), 1.0, 1e-10);
}

TEST(ProjectionMeet, MeetIsBelowBothProjections) {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix common = testing::random_complex(rng, 6, 2);
    Matrix gp(6, 4);
    gp << common, testing::random_complex(rng, 6, 2);
    Matrix gr(6, 3);
    gr << common, testing::random_complex(rng, 6, 1);
    const ProjectionMatrix p = support_projection(HermitianMatrix::symmetrized(gp * gp.adjoint()));
    const ProjectionMatrix r = support_projection(HermitianMatrix::symmetrized(gr * gr.adjoint()));
    const ProjectionMatrix m = projection_meet(p, r);
    EXPECT_EQ(m.rank(), 2);
    EXPECT_LT(hs_norm(m.matrix() * p.matrix() - m.matrix()), 1e-8);
    EXPECT_LT(hs_norm(p.matrix() * m.matrix() - m.matrix()), 1e-8);
    EXPECT_LT(hs_norm(m.matrix() * r.matrix() - m.matrix()), 1e-8);
  }
}

TEST(ProjectionMatrix, RejectsNonIdempotent) {
  EXPECT_THROW(ProjectionMatrix(HermitianMatrix::diagonal(RealVector{{0.5, 1.0}})), Error);
}

TEST(HsNorm, Basics) {
  EXPECT_EQ(hs_norm(Matrix::Zero(3, 3)), 0.0);
  EXPECT_NEAR(hs_norm(Matrix::Identity(5, 5)), std::sqrt(5.0), 1e-15);
  Vector u(3);
  u << cplx(1, 1), 2.0, cplx(0, -1);
  u.normalize();
  EXPECT_NEAR(hs_norm(u * u.adjoint()), 1.0, 1e-15);
}

TEST(ConjMatrix, RealAndImaginaryBlocks) {
  RealMatrix re(2, 2);
  re << 1.0, 2.0, 3.0, 4.0;
  EXPECT_EQ(conj_matrix(Matrix(re.cast<cplx>())), Matrix(re.cast<cplx>()));
  Matrix block(2, 2);
  block << 0.0, I, -I, 0.0;
  EXPECT_EQ(conj_matrix(block), Matrix(-block));
}

TEST(SupportProjection, ThresholdDefinition) {
  const ProjectionMatrix p = support_projection(HermitianMatrix::diagonal(RealVector{{1.0, 1e-14, 2.0}}), 1e-10);
  EXPECT_NEAR(p.matrix()(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(p.matrix()(1, 1)), 0.0, 1e-15);
  EXPECT_NEAR(p.matrix()(2, 2).real(), 1.0, 1e-15);
}

}  // namespace
}  // namespace qf
