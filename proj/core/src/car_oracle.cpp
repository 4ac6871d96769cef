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

#include "qf/car_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "qf/error.hpp"
#include "qf/parallel.hpp"

namespace qf {

namespace {

double parity_sign(std::uint32_t bits) { return (std::popcount(bits) & 1) ? -1.0 : 1.0; }


}  // namespace

PauliString PauliString::operator*(const PauliString& o) const {
  // Z^z X^{o.x} = (-1)^{|z & o.x|} X^{o.x} Z^z
  return {x ^ o.x, z ^ o.z, phase * o.phase * parity_sign(z & o.x)};
}

Matrix PauliString::dense(int n_modes) const {
  const std::uint32_t dim = 1u << n_modes;
  Matrix m = Matrix::Zero(dim, dim);
  for (std::uint32_t b = 0; b < dim; ++b) m(b ^ x, b) = phase * parity_sign(z & b);
  return m;
}

PauliString CliffordRep::monomial(std::uint32_t mask) const {
  PauliString out;
  for (std::size_t j = 0; j < generators.size(); ++j) {
    if (mask & (1u << j)) out = out * generators[j];
  }
  return out;
}

CliffordRep jw_generators(int n_modes) {
  if (n_modes < 1 || n_modes > kMaxOracleModes) {
    std::ostringstream os;
    os << "jw_generators: n_modes = " << n_modes << " outside [1, " << kMaxOracleModes << "]";
    throw Error(ErrorKind::ResourceCap, os.str(), n_modes);
  }
  CliffordRep rep;
  rep.n_modes = n_modes;
  for (int j = 0; j < n_modes; ++j) {
    const std::uint32_t bit = 1u << j;
    const std::uint32_t string = bit - 1;  // Z on modes < j
    rep.generators.push_back({bit, string, 1.0});                           // Z..Z X
    rep.generators.push_back({bit, string | bit, cplx(0.0, 1.0)});          // Z..Z Y, Y = iXZ
  }
  return rep;
}

DensityMatrix::DensityMatrix(const HermitianMatrix& rho, double psd_tol) : rho_(rho) {
  const double tr = rho_.matrix().trace().real();
  if (std::abs(tr - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "density matrix trace " << tr << " != 1";
    throw Error(ErrorKind::Validation, os.str(), tr - 1.0);
  }
  const double lo = eig_h(rho_).values(0);
  if (lo < -psd_tol) {
    std::ostringstream os;
    os << "density matrix not PSD (eigenvalue " << lo << ")";
    throw Error(ErrorKind::NotPsd, os.str(), lo);
  }
}

cplx expectation(const DensityMatrix& rho, const PauliString& op) {
  const Matrix& m = rho.matrix();
  cplx acc = 0.0;
  // tr(rho P) = sum_b <b| rho P |b> = sum_b rho(b, b^x) * phase(b)
  for (Index b = 0; b < m.rows(); ++b) {
    const auto ub = static_cast<std::uint32_t>(b);
    acc += m(b, ub ^ op.x) * parity_sign(op.z & ub);
  }
  return acc * op.phase;
}

DensityMatrix density_from_covariance(const CarCovariance& s) {
  const Index d = s.dim();
  if (d % 2 != 0) {
    throw Error(ErrorKind::Validation, "density_from_covariance: covariance dimension must be even");
  }
  const int n_modes = static_cast<int>(d / 2);
  const CliffordRep rep = jw_generators(n_modes);

  const std::uint32_t subsets = 1u << d;
  std::vector<cplx> moments(subsets, 0.0);
  parallel_for(subsets, [&](std::size_t i) {
    const auto mask = static_cast<std::uint32_t>(i);
    const int k = std::popcount(mask);
    if (k % 2 != 0) return;  // odd moments vanish
    std::vector<Index> idx;
    for (Index j = 0; j < d; ++j) {
      if (mask & (1u << j)) idx.push_back(j);
    }
    Matrix pairing = Matrix::Zero(k, k);
    for (int a = 0; a < k; ++a) {
      for (int b = a + 1; b < k; ++b) {
        pairing(a, b) = s.matrix()(idx[a], idx[b]);
        pairing(b, a) = -pairing(a, b);
      }
    }
    // <c_A> = 2^{k/2} phi(e_A)
    moments[i] = std::ldexp(1.0, k / 2) * pfaffian(SkewMatrix(pairing));
  });

  const Index dim = rep.fock_dim();
  Matrix rho = Matrix::Zero(dim, dim);
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    const int k = std::popcount(mask);
    if (k % 2 != 0) continue;
    // c_A^* = (-1)^{k(k-1)/2} c_A, which is (-1)^{k/2} for even k.
    const cplx coeff = ((k / 2) % 2 ? -1.0 : 1.0) * moments[mask];
    if (coeff == cplx(0.0)) continue;
    const PauliString op = rep.monomial(mask);
    const cplx c = coeff * op.phase;
    for (std::uint32_t b = 0; b < static_cast<std::uint32_t>(dim); ++b) {
      rho(b ^ op.x, b) += c * parity_sign(op.z & b);
    }
  }
  rho /= static_cast<double>(dim);

  const HermitianMatrix h = HermitianMatrix::symmetrized(rho);
  const double lo = eig_h(h).values(0);
  if (lo < -1e-9) {
    std::ostringstream os;
    os << "density_from_covariance: moment expansion is not PSD (eigenvalue " << lo << ")";
    throw Error(ErrorKind::ConsistencyViolation, os.str(), lo);
  }
  return DensityMatrix(h);
}

Matrix density_sqrt(const DensityMatrix& rho) {
  const EigenSystem es = eig_h(rho.hermitian());
  const double cut = 1e-12 * spectral_radius(es);
  return spectral_map(es, [cut](double v) { return v > cut ? std::sqrt(v) : 0.0; }).matrix();
}

double overlap(const DensityMatrix& rho, const DensityMatrix& tau) {
  if (rho.dim() != tau.dim()) throw Error(ErrorKind::Validation, "overlap: dimension mismatch");
  const Matrix prod = density_sqrt(rho) * density_sqrt(tau);
  return prod.trace().real();
}

double fidelity_tr(const DensityMatrix& rho, const DensityMatrix& tau) {
  if (rho.dim() != tau.dim()) throw Error(ErrorKind::Validation, "fidelity_tr: dimension mismatch");
  const Matrix prod = density_sqrt(rho) * density_sqrt(tau);
  Eigen::BDCSVD<Matrix> svd(prod);
  return svd.singularValues().sum();
}

}  // namespace qf
