// Microbenchmarks for the hot paths: dense factorizations, closed-form
// enumeration per model family, tangent projection, and a full descent run.

#include <benchmark/benchmark.h>

#include <eddeg/descent.hpp>
#include <eddeg/linalg.hpp>
#include <eddeg/models.hpp>
#include <eddeg/rng.hpp>
#include <eddeg/stationary.hpp>

using namespace edd;
using core::Matrix;
using core::SymmetricMatrix;

namespace {

void BM_sym_eig(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SymmetricMatrix A = core::random_symmetric(n, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(core::sym_eig(A, 0.0));
  }
}
BENCHMARK(BM_sym_eig)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_full_svd(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const core::RectMatrix A = core::random_rect(n, n / 2, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(core::full_svd(A));
  }
}
BENCHMARK(BM_full_svd)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_enumerate_flag(benchmark::State& state) {
  const models::ModelHandle model{models::FlagSpec(6, {1, 3}, {2, 1, 0})};
  const Matrix A = core::random_symmetric(6, 3).mat();
  for (auto _ : state) {
    benchmark::DoNotOptimize(stationary::enumerate_stationary(model, A));
  }
}
BENCHMARK(BM_enumerate_flag);

void BM_enumerate_grassmann(benchmark::State& state) {
  const models::ModelHandle model{models::GrassmannSpec(8, 3)};
  const Matrix A = core::random_symmetric(8, 3).mat();
  for (auto _ : state) {
    benchmark::DoNotOptimize(stationary::enumerate_stationary(model, A));
  }
}
BENCHMARK(BM_enumerate_grassmann);

void BM_enumerate_stiefel(benchmark::State& state) {
  const models::ModelHandle model{models::StiefelSpec(6, 4)};
  const Matrix A = core::random_rect(6, 4, 3).mat();
  for (auto _ : state) {
    benchmark::DoNotOptimize(stationary::enumerate_stationary(model, A));
  }
}
BENCHMARK(BM_enumerate_stiefel);

void BM_enumerate_schubert(benchmark::State& state) {
  const models::ModelHandle model{
      models::SchubertSpec(7, 1, 3, 5, core::random_orthogonal(7, 11))};
  const Matrix A = core::random_symmetric(7, 3).mat();
  for (auto _ : state) {
    benchmark::DoNotOptimize(stationary::enumerate_stationary(model, A));
  }
}
BENCHMARK(BM_enumerate_schubert);

void BM_nearest_point(benchmark::State& state) {
  const models::ModelHandle model{models::GrassmannSpec(16, 5)};
  const Matrix A = core::random_symmetric(16, 3).mat();
  for (auto _ : state) {
    benchmark::DoNotOptimize(stationary::nearest_point(model, A));
  }
}
BENCHMARK(BM_nearest_point);

void BM_tangent_project(benchmark::State& state) {
  const models::ModelHandle model{models::GrassmannSpec(12, 4)};
  const Matrix X = models::random_point(model, 5);
  const Matrix Z = core::random_symmetric(12, 6).mat();
  for (auto _ : state) {
    benchmark::DoNotOptimize(models::tangent_project(model, X, Z));
  }
}
BENCHMARK(BM_tangent_project);

void BM_descent_grassmann(benchmark::State& state) {
  const models::ModelHandle model{models::GrassmannSpec(6, 2)};
  const Matrix A = core::random_symmetric(6, 3).mat();
  const Matrix X0 = models::random_point(model, 9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(descent::riemannian_descent(model, A, X0));
  }
}
BENCHMARK(BM_descent_grassmann);

}  // namespace

BENCHMARK_MAIN();
