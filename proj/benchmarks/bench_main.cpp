#include <benchmark/benchmark.h>

#include "ncg/workspace.hpp"

using namespace ncg;

namespace {

void BM_TotalComplexM2(benchmark::State& state) {
  Algebra m2 = matrix_algebra(2, 0, "M2");
  Subalgebra k = scalars_in(m2);
  const size_t degree = static_cast<size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_total_complex(m2, k, degree));
}
BENCHMARK(BM_TotalComplexM2)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_HomologyT2(benchmark::State& state) {
  Algebra t2 = upper_triangular_algebra(2, 0, "T2");
  TotalComplex tc = build_total_complex(t2, scalars_in(t2), 5);
  const size_t n = static_cast<size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(homology(tc, n).dim());
}
BENCHMARK(BM_HomologyT2)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_RankOverFp(benchmark::State& state) {
  Algebra m2 = matrix_algebra(2, 101, "M2");
  TotalComplex tc = build_total_complex(m2, scalars_in(m2), 4);
  for (auto _ : state) benchmark::DoNotOptimize(rank(tc.d[4]));
}
BENCHMARK(BM_RankOverFp)->Unit(benchmark::kMillisecond);

void BM_SolveConnection(benchmark::State& state) {
  Fixture f = make_fixture("FIX-NC");
  Subalgebra t = scalars_in(f.x.e.a);
  for (auto _ : state) benchmark::DoNotOptimize(solve_strong_connection(f.x, t));
}
BENCHMARK(BM_SolveConnection)->Unit(benchmark::kMillisecond);

void BM_CanonicalMaps(benchmark::State& state) {
  Fixture f = make_fixture("FIX-NC");
  for (auto _ : state) benchmark::DoNotOptimize(canonical_maps(f.x).galois);
}
BENCHMARK(BM_CanonicalMaps)->Unit(benchmark::kMicrosecond);

void BM_ChgComponents(benchmark::State& state) {
  Fixture f = make_fixture("FIX-NC");
  const StrongConnection& sc = f.connections.at("varpi");
  const Coidempotent& e = f.coidempotents.at("e");
  const size_t l = static_cast<size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(chg_components(f.x, sc, e, l));
}
BENCHMARK(BM_ChgComponents)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_ValidateWorkspace(benchmark::State& state) {
  Workspace w = workspace_from_fixture(make_fixture("FIX-NC"));
  for (auto _ : state) benchmark::DoNotOptimize(validate_workspace(w).ok());
}
BENCHMARK(BM_ValidateWorkspace)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
