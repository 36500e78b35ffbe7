// Copyright 2026 The mpseg Authors
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

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "mpseg/features.hpp"
#include "mpseg/grid_ops.hpp"
#include "mpseg/pca.hpp"
#include "mpseg/primal_dual.hpp"
#include "mpseg/simplex.hpp"
#include "mpseg/synth.hpp"

namespace {

using namespace mpseg;

ImageGrid noise_image(int size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  ImageGrid img(size, size);
  for (double& v : img.values()) v = normal(rng);
  return img;
}

void BM_SimplexProjection(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  std::vector<double> source(static_cast<std::size_t>(k) * 1024);
  for (double& v : source) v = normal(rng);
  std::vector<double> work(k);
  for (auto _ : state) {
    for (std::size_t off = 0; off < source.size(); off += k) {
      std::copy_n(source.begin() + static_cast<std::ptrdiff_t>(off), k, work.begin());
      project_simplex_inplace(work);
      benchmark::DoNotOptimize(work.data());
    }
  }
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_SimplexProjection)->Arg(2)->Arg(5)->Arg(16)->Arg(64);

void BM_GradientDivergence(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const GridExtent e{size, size};
  const ImageGrid u = noise_image(size, 2);
  std::vector<double> gx(e.size()), gy(e.size()), div(e.size());
  for (auto _ : state) {
    gradient(e, u.values(), gx, gy);
    divergence(e, gx, gy, div);
    benchmark::DoNotOptimize(div.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(e.size()));
}
BENCHMARK(BM_GradientDivergence)->Arg(256)->Arg(512);

// Fixed iteration count so that timings do not depend on convergence.
void BM_SolverIterations(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const GridExtent e{size, size};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  IndicatorField f{e, Eigen::MatrixXd(static_cast<Eigen::Index>(e.size()), k)};
  for (Eigen::Index i = 0; i < f.f.size(); ++i) f.f.data()[i] = unif(rng);
  SolverParams params;
  params.lambda = 0.3;
  params.epsilon = 1e-300;
  params.max_iterations = 49;
  for (auto _ : state) benchmark::DoNotOptimize(solve(f, params).iterations);
  state.SetItemsProcessed(state.iterations() * 50);
}
BENCHMARK(BM_SolverIterations)->Args({128, 2})->Args({256, 2})->Args({256, 5})->Unit(benchmark::kMillisecond);

void BM_FftModulus(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  const ImageGrid img = noise_image(128, 4);
  for (auto _ : state) benchmark::DoNotOptimize(fft_modulus(img, WindowSpec{s}).values.data());
}
BENCHMARK(BM_FftModulus)->Arg(7)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_SpectralHistogram(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  const ImageGrid img = noise_image(128, 5);
  constexpr double pi = std::numbers::pi;
  const FilterBank bank = FilterBank::gabor_bank({5.0, 7.0, 9.0}, {0.0, 0.5 * pi, 0.25 * pi, -0.25 * pi}, 11);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_histogram(img, bank, WindowSpec{s}).values.data());
}
BENCHMARK(BM_SpectralHistogram)->Arg(15)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_PcaFit(benchmark::State& state) {
  const auto m = static_cast<Eigen::Index>(state.range(0));
  FeatureMatrix features;
  features.extent = GridExtent{128, 128};
  features.values = Eigen::MatrixXd::Random(m, 128 * 128);
  for (auto _ : state) benchmark::DoNotOptimize(fit_pca_model(features, 5).basis.data());
}
BENCHMARK(BM_PcaFit)->Arg(143)->Arg(225)->Arg(961)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
