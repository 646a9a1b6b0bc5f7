// bench/diarkit_bench.cc

// Copyright 2026  The diarkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// OpenMP kernels against their serial references.

#include <random>

#include <benchmark/benchmark.h>

#include "diarkit/kernels.h"

namespace {

Eigen::MatrixXd Gaussian(Eigen::Index r, Eigen::Index c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = z(rng);
  return m;
}

template <bool kParallel>
void BM_PldaLlrMatrix(benchmark::State &state) {
  const Eigen::Index n = state.range(0), d = 128;
  const Eigen::MatrixXd u = Gaussian(n, d, 1);
  const Eigen::VectorXd phi = Gaussian(d, 1, 2).col(0).array().abs() + 0.1;
  for (auto _ : state) {
    Eigen::MatrixXd s = kParallel ? diarkit::kernels::PldaLlrMatrix(u, phi)
                                  : diarkit::kernels::PldaLlrMatrixSerial(u, phi);
    benchmark::DoNotOptimize(s.data());
  }
  state.SetItemsProcessed(state.iterations() * n * (n + 1) / 2);
}

template <bool kParallel>
void BM_VbLogEmissions(benchmark::State &state) {
  const Eigen::Index t = state.range(0), d = 128, s = 8;
  const Eigen::MatrixXd rho = Gaussian(t, d, 3), alpha = Gaussian(s, d, 4);
  const Eigen::MatrixXd inv_l = Gaussian(s, d, 5).array().abs();
  const Eigen::VectorXd phi = Gaussian(d, 1, 6).col(0).array().abs() + 0.1;
  const Eigen::VectorXd g = Gaussian(t, 1, 7).col(0);
  for (auto _ : state) {
    Eigen::MatrixXd e = kParallel
                            ? diarkit::kernels::VbLogEmissions(rho, g, alpha, inv_l, phi, 0.3)
                            : diarkit::kernels::VbLogEmissionsSerial(rho, g, alpha, inv_l, phi, 0.3);
    benchmark::DoNotOptimize(e.data());
  }
  state.SetItemsProcessed(state.iterations() * t * s);
}

BENCHMARK(BM_PldaLlrMatrix<false>)->Name("PldaLlrMatrix/serial")->Arg(200)->Arg(800);
BENCHMARK(BM_PldaLlrMatrix<true>)->Name("PldaLlrMatrix/openmp")->Arg(200)->Arg(800);
BENCHMARK(BM_VbLogEmissions<false>)->Name("VbLogEmissions/serial")->Arg(1000)->Arg(8000);
BENCHMARK(BM_VbLogEmissions<true>)->Name("VbLogEmissions/openmp")->Arg(1000)->Arg(8000);

}  // namespace

BENCHMARK_MAIN();
