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

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "qf/car.hpp"
#include "qf/car_oracle.hpp"
#include "qf/ccr.hpp"
#include "qf/matcore.hpp"

namespace qf {
namespace {

RealMatrix random_orthogonal(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  RealMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = g(rng);
  Eigen::HouseholderQR<RealMatrix> qr(m);
  return qr.householderQ();
}

CarCovariance random_car(std::mt19937_64& rng, Index d) {
  std::uniform_real_distribution<double> u(0.0, 0.5);
  RealMatrix k = RealMatrix::Zero(d, d);
  for (Index j = 0; j + 1 < d; j += 2) {
    const double lambda = u(rng);
    k(j, j + 1) = lambda;
    k(j + 1, j) = -lambda;
  }
  const RealMatrix o = random_orthogonal(rng, d);
  const RealMatrix rot = o * k * o.transpose();
  return validate_car(Matrix::Identity(d, d) * 0.5 + cplx(0.0, 1.0) * rot.cast<cplx>());
}

void BM_Pfaffian(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Index n = state.range(0);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
  const SkewMatrix skew(Matrix(a - a.transpose()));
  for (auto _ : state) benchmark::DoNotOptimize(pfaffian(skew));
}
BENCHMARK(BM_Pfaffian)->RangeMultiplier(2)->Range(4, 128);

void BM_TransProbCar(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Index d = state.range(0);
  const CarStatePair pair(random_car(rng, d), random_car(rng, d));
  for (auto _ : state) benchmark::DoNotOptimize(trans_prob_car(pair));
}
BENCHMARK(BM_TransProbCar)->RangeMultiplier(2)->Range(2, 128);

void BM_DensityFromCovariance(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const CarCovariance s = random_car(rng, 2 * state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(density_from_covariance(s).dim());
}
BENCHMARK(BM_DensityFromCovariance)->DenseRange(1, 6);

void BM_TransProbCcr(benchmark::State& state) {
  const Index modes = state.range(0);
  CcrCovariance a = ccr_thermal_mode(1.5);
  CcrCovariance b = ccr_thermal_mode(2.5);
  for (Index j = 1; j < modes; ++j) {
    a = direct_sum(a, ccr_thermal_mode(1.0 + 0.1 * double(j)));
    b = direct_sum(b, ccr_thermal_mode(1.0 + 0.2 * double(j)));
  }
  for (auto _ : state) benchmark::DoNotOptimize(trans_prob_ccr(a, b));
}
BENCHMARK(BM_TransProbCcr)->RangeMultiplier(2)->Range(1, 64);

}  // namespace
}  // namespace qf

BENCHMARK_MAIN();
