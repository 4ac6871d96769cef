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

#include "qf/ccr_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "qf/error.hpp"

namespace qf {

namespace {

constexpr std::array<int, 4> kCutoffSchedule = {20, 40, 80, 120};

Index fock_dim(int n_modes, int cutoff) {
  Index d = 1;
  for (int m = 0; m < n_modes; ++m) d *= cutoff + 1;
  return d;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Embeds a matrix on the cutoff-`from` grid into the cutoff-`to` grid (to >= from).
Matrix embed(const Matrix& m, int n_modes, int from, int to) {
  const Index small = fock_dim(n_modes, from);
  const Index big = fock_dim(n_modes, to);
  std::vector<Index> map(static_cast<std::size_t>(small));
  for (Index i = 0; i < small; ++i) {
    Index rest = i;
    Index target = 0;
    Index stride = 1;
    for (int mode = n_modes - 1; mode >= 0; --mode) {
      const Index occ = rest % (from + 1);
      rest /= from + 1;
      target += occ * stride;
      stride *= to + 1;
    }
    map[static_cast<std::size_t>(i)] = target;
  }
  Matrix out = Matrix::Zero(big, big);
  for (Index i = 0; i < small; ++i)
    for (Index j = 0; j < small; ++j) out(map[i], map[j]) = m(i, j);
  return out;
}

void check_hamiltonian(const QuadraticHamiltonian& h) {
  const Index n = h.n_modes;
  if (h.n_modes < 1 || h.n_modes > kMaxBosonModes) {
    std::ostringstream os;
    os << "quadratic Hamiltonian: n_modes = " << h.n_modes << " outside [1, " << kMaxBosonModes << "]";
    throw Error(ErrorKind::ResourceCap, os.str(), h.n_modes);
  }
  if (h.omega.rows() != n || h.omega.cols() != n || h.xi.rows() != n || h.xi.cols() != n) {
    throw Error(ErrorKind::Validation, "quadratic Hamiltonian: omega and xi must be n_modes x n_modes");
  }
  const double scale = 1.0 + h.omega.cwiseAbs().maxCoeff() + h.xi.cwiseAbs().maxCoeff();
  if ((h.omega - h.omega.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorKind::Validation, "quadratic Hamiltonian: omega is not Hermitian");
  }
  if ((h.xi - h.xi.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorKind::Validation, "quadratic Hamiltonian: xi is not symmetric");
  }
  // H = 1/2 (a^dag, a) K (a, a^dag)^T + const; exp(-H) is trace class iff K > 0.
  Matrix k(2 * n, 2 * n);
  k << h.omega, h.xi, h.xi.conjugate(), h.omega.conjugate();
  const double gap = eig_h(HermitianMatrix::symmetrized(k)).values(0);
  if (gap <= 1e-12 * scale) {
    std::ostringstream os;
    os << "quadratic Hamiltonian is gapless or unbounded below (min mode energy " << gap
       << "); partition function diverges";
    throw Error(ErrorKind::NonConvergence, os.str(), gap);
  }
}

HermitianMatrix hamiltonian_matrix(const QuadraticHamiltonian& h, const BosonOps& ops) {
  const Index dim = ops.dim();
  Matrix hm = Matrix::Zero(dim, dim);
  Matrix pair = Matrix::Zero(dim, dim);
  for (int j = 0; j < h.n_modes; ++j) {
    for (int k = 0; k < h.n_modes; ++k) {
      if (h.omega(j, k) != cplx(0.0)) hm += h.omega(j, k) * ops.adag[j] * ops.a[k];
      if (h.xi(j, k) != cplx(0.0)) pair += 0.5 * h.xi(j, k) * ops.adag[j] * ops.adag[k];
    }
  }
  hm += pair + pair.adjoint();
  return HermitianMatrix::symmetrized(hm);
}

/// sqrt(rho) = U diag(root) U*.
struct SqrtFactor {
  Matrix u;
  RealVector root;
};

SqrtFactor factor_from_weights(const EigenSystem& es, RealVector w) {
  const double cut = 1e-12 * w.maxCoeff();
  for (Index j = 0; j < w.size(); ++j) w(j) = w(j) > cut ? std::sqrt(w(j)) : 0.0;
  return SqrtFactor{es.vectors, std::move(w)};
}

RealVector gibbs_weights(const EigenSystem& es) {
  const double e0 = es.values(0);
  RealVector w(es.values.size());
  for (Index j = 0; j < w.size(); ++j) w(j) = std::exp(-(es.values(j) - e0));
  return w / w.sum();
}

EigenSystem hamiltonian_eigensystem(const QuadraticHamiltonian& h, int cutoff) {
  return eig_h(hamiltonian_matrix(h, boson_ops(h.n_modes, cutoff)));
}

DensityMatrix gibbs(const QuadraticHamiltonian& h, int cutoff) {
  const EigenSystem es = hamiltonian_eigensystem(h, cutoff);
  const RealVector w = gibbs_weights(es);
  return DensityMatrix(
      HermitianMatrix::symmetrized(es.vectors * w.cast<cplx>().asDiagonal() * es.vectors.adjoint()));
}

SqrtFactor gibbs_sqrt(const QuadraticHamiltonian& h, int cutoff) {
  const EigenSystem es = hamiltonian_eigensystem(h, cutoff);
  return factor_from_weights(es, gibbs_weights(es));
}

SqrtFactor density_sqrt_factor(const DensityMatrix& rho) {
  const EigenSystem es = eig_h(rho.hermitian());
  return factor_from_weights(es, es.values.cwiseMax(0.0));
}

/// With M = U* V: tr(sqrt rho sqrt tau) = sum_jk a_j b_k |M_jk|^2, and
/// tr|sqrt rho sqrt tau| is the trace norm of W = diag(a) M diag(b).
struct OverlapPair {
  double value;
  Matrix w;
};

OverlapPair overlap_of_factors(const SqrtFactor& r, const SqrtFactor& t) {
  const Matrix m = r.u.adjoint() * t.u;
  const Matrix w = r.root.cast<cplx>().asDiagonal() * m * t.root.cast<cplx>().asDiagonal();
  double value = 0.0;
  for (Index k = 0; k < m.cols(); ++k)
    for (Index j = 0; j < m.rows(); ++j) value += r.root(j) * t.root(k) * std::norm(m(j, k));
  return OverlapPair{value, w};
}

double trace_norm(const Matrix& w) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(HermitianMatrix::symmetrized(w * w.adjoint()).matrix(),
                                               Eigen::EigenvaluesOnly);
  double sum = 0.0;
  for (Index j = 0; j < solver.eigenvalues().size(); ++j) sum += std::sqrt(std::max(0.0, solver.eigenvalues()(j)));
  return sum;
}

}  // namespace

Index BosonOps::dim() const { return fock_dim(n_modes, cutoff); }

BosonOps boson_ops(int n_modes, int cutoff) {
  if (n_modes < 1 || n_modes > kMaxBosonModes || cutoff < 2 || fock_dim(n_modes, cutoff) > kMaxBosonDim) {
    std::ostringstream os;
    os << "boson_ops: n_modes = " << n_modes << ", cutoff = " << cutoff << " exceeds oracle limits ("
       << kMaxBosonModes << " modes, Fock dimension " << kMaxBosonDim << ")";
    throw Error(ErrorKind::ResourceCap, os.str(), static_cast<double>(fock_dim(n_modes, std::max(cutoff, 0))));
  }
  const Index local = cutoff + 1;
  Matrix a1 = Matrix::Zero(local, local);
  for (Index n = 1; n < local; ++n) a1(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Matrix id = Matrix::Identity(local, local);

  BosonOps ops;
  ops.n_modes = n_modes;
  ops.cutoff = cutoff;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int m = 0; m < n_modes; ++m) {
    Matrix a = Matrix::Ones(1, 1);
    for (int f = 0; f < n_modes; ++f) a = kron(a, f == m ? a1 : id);
    Matrix adag = a.adjoint();
    ops.q.push_back((a + adag) * inv_sqrt2);
    ops.p.push_back((a - adag) * cplx(0.0, -inv_sqrt2));
    ops.a.push_back(std::move(a));
    ops.adag.push_back(std::move(adag));
  }
  return ops;
}

QuadraticHamiltonian QuadraticHamiltonian::thermal(double beta) {
  QuadraticHamiltonian h;
  h.n_modes = 1;
  h.omega = Matrix::Constant(1, 1, beta);
  h.xi = Matrix::Zero(1, 1);
  return h;
}

QuadraticHamiltonian QuadraticHamiltonian::squeezed_thermal(double beta, double r) {
  QuadraticHamiltonian h;
  h.n_modes = 1;
  h.omega = Matrix::Constant(1, 1, beta * std::cosh(2.0 * r));
  h.xi = Matrix::Constant(1, 1, beta * std::sinh(2.0 * r));
  return h;
}

QuadraticHamiltonian QuadraticHamiltonian::product(const QuadraticHamiltonian& a, const QuadraticHamiltonian& b) {
  QuadraticHamiltonian h;
  h.n_modes = a.n_modes + b.n_modes;
  h.omega = block_diag(a.omega, b.omega);
  h.xi = block_diag(a.xi, b.xi);
  return h;
}

TruncatedState gaussian_density(const QuadraticHamiltonian& h, int cutoff) {
  check_hamiltonian(h);
  DensityMatrix rho = gibbs(h, cutoff);
  double increment = 0.0;
  if (fock_dim(h.n_modes, cutoff + 4) <= kMaxBosonDim) {
    const DensityMatrix finer = gibbs(h, cutoff + 4);
    increment = hs_norm(embed(rho.matrix(), h.n_modes, cutoff, cutoff + 4) - finer.matrix());
  } else {
    // No room to refine: report the weight on the outermost occupation shell.
    const Index dim = rho.dim();
    const Index local = cutoff + 1;
    for (Index i = 0; i < dim; ++i) {
      Index rest = i;
      bool edge = false;
      for (int m = 0; m < h.n_modes; ++m) {
        edge = edge || rest % local == cutoff;
        rest /= local;
      }
      if (edge) increment += rho.matrix()(i, i).real();
    }
  }
  return TruncatedState{h, cutoff, std::move(rho), increment};
}

CcrCovariance covariance_of_density(const TruncatedState& state) {
  if (state.increment > 1e-6) {
    std::ostringstream os;
    os << "covariance_of_density: state not converged at cutoff " << state.cutoff << " (increment "
       << state.increment << "); truncation too low";
    throw Error(ErrorKind::Validation, os.str(), state.increment);
  }
  const int n = state.hamiltonian.n_modes;
  const BosonOps ops = boson_ops(n, state.cutoff);
  std::vector<const Matrix*> x;
  for (int m = 0; m < n; ++m) x.push_back(&ops.q[m]);
  for (int m = 0; m < n; ++m) x.push_back(&ops.p[m]);

  const Matrix& rho = state.rho.matrix();
  RealMatrix r(2 * n, 2 * n);
  for (int j = 0; j < 2 * n; ++j) {
    const Matrix rx = rho * *x[j];
    for (int k = 0; k < 2 * n; ++k) r(j, k) = (rx * *x[k]).trace().real();
  }
  try {
    return validate_ccr(SymplecticSpace::canonical(n), r);
  } catch (const Error& e) {
    throw Error(ErrorKind::Validation,
                std::string("covariance_of_density: extracted form invalid, truncation too low: ") + e.what(),
                e.magnitude());
  }
}

CcrOverlap overlap_ccr(const TruncatedState& rho, const TruncatedState& tau, double tol, int max_cutoff) {
  if (rho.cutoff != tau.cutoff || rho.hamiltonian.n_modes != tau.hamiltonian.n_modes) {
    throw Error(ErrorKind::Validation, "overlap_ccr: states live on different cutoff grids");
  }
  const int n = rho.hamiltonian.n_modes;
  std::vector<int> cutoffs = {rho.cutoff};
  for (int c : kCutoffSchedule) {
    if (c > rho.cutoff && c <= std::min(max_cutoff, kMaxCutoff) && fock_dim(n, c) <= kMaxBosonDim) {
      cutoffs.push_back(c);
    }
  }

  CcrOverlap out;
  double previous = 0.0;
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    const int c = cutoffs[i];
    const SqrtFactor r = i == 0 ? density_sqrt_factor(rho.rho) : gibbs_sqrt(rho.hamiltonian, c);
    const SqrtFactor t = i == 0 ? density_sqrt_factor(tau.rho) : gibbs_sqrt(tau.hamiltonian, c);
    const OverlapPair ov = overlap_of_factors(r, t);
    if (i > 0) {
      out.increment = std::abs(ov.value - previous);
      if (out.increment < tol) {
        out.value = ov.value;
        out.fidelity = trace_norm(ov.w);
        out.cutoff = c;
        return out;
      }
    }
    previous = ov.value;
  }
  std::ostringstream os;
  os << "overlap_ccr: no convergence to " << tol << " by cutoff " << cutoffs.back() << " (last increment "
     << out.increment << ")";
  throw Error(ErrorKind::NonConvergence, os.str(), out.increment);
}

}  // namespace qf
