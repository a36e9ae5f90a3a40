// Micro benchmarks for the hot paths: field arithmetic, the commutator
// equation solve, the full decomposition pipeline and the brute-force oracle.

#include <benchmark/benchmark.h>

#include "slbracket/oracle.hpp"
#include "slbracket/rng.hpp"
#include "slbracket/solver.hpp"

using namespace slb;

namespace {

void bm_field_mul(benchmark::State& state) {
  Field f = state.range(0) == 0 ? FieldSpec::prime(5) : FieldSpec::extension(3, 2);
  auto es = f->elements();
  std::size_t i = 0;
  for (auto _ : state) {
    const Scalar& a = es[i % es.size()];
    const Scalar& b = es[(i * 7 + 3) % es.size()];
    benchmark::DoNotOptimize(a * b);
    ++i;
  }
}
BENCHMARK(bm_field_mul)->Arg(0)->Arg(1);

void bm_field_inv(benchmark::State& state) {
  Field f = FieldSpec::extension(3, 2);
  auto es = f->elements();
  std::size_t i = 0;
  for (auto _ : state) {
    const Scalar& a = es[1 + i % (es.size() - 1)];
    benchmark::DoNotOptimize(f->inv(a));
    ++i;
  }
}
BENCHMARK(bm_field_inv);

void bm_mat_mul(benchmark::State& state) {
  Field f = FieldSpec::prime(5);
  int n = static_cast<int>(state.range(0));
  Rng rng(1);
  Mat a = rng.matrix(f, n), b = rng.matrix(f, n);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(bm_mat_mul)->Arg(3)->Arg(8);

void bm_solve_commutator(benchmark::State& state) {
  Field f = FieldSpec::prime(5);
  int n = static_cast<int>(state.range(0));
  Mat j = Mat::jordan(f, n);
  Mat a = Mat::unit(f, n, 0, n - 1);
  for (auto _ : state) benchmark::DoNotOptimize(solve_commutator_equation(j, a));
}
BENCHMARK(bm_solve_commutator)->Arg(3)->Arg(5);

void bm_decompose(benchmark::State& state) {
  Field f = FieldSpec::prime(5);
  Rng rng(2);
  Mat a = rng.nonzero_trace_zero_matrix(f, 3);
  Mat b = rng.nonzero_trace_zero_matrix(f, 3);
  Hyperplane h(b);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(a, h));
}
BENCHMARK(bm_decompose);

void bm_oracle_exhaustive(benchmark::State& state) {
  Field f = FieldSpec::extension(2, 2);
  Rng rng(3);
  Mat a = rng.nonzero_trace_zero_matrix(f, 3);
  Mat b = rng.nonzero_trace_zero_matrix(f, 3);
  Hyperplane h(b);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_decompose(a, h));
}
BENCHMARK(bm_oracle_exhaustive);

void bm_sweep_block(benchmark::State& state) {
  SweepConfig cfg;
  cfg.field = FieldSpec::prime(5);
  cfg.n = 3;
  cfg.count = 50;
  cfg.seed = 4;
  for (auto _ : state) benchmark::DoNotOptimize(sweep(cfg));
}
BENCHMARK(bm_sweep_block);

}  // namespace

BENCHMARK_MAIN();
