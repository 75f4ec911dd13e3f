#include <benchmark/benchmark.h>

#include "nspace/cocycle.hpp"
#include "nspace/fixtures.hpp"
#include "nspace/relation.hpp"
#include "nspace/structure.hpp"

using namespace nspace;
namespace fx = nspace::fixtures;

static void BM_HkCubeGroupHeisenberg(benchmark::State& st) {
  Filtration F = Filtration::lower_central(FiniteGroup::heisenberg(2));
  const int k = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(hk_cube_group(F, k, 1 << 20).elements.size());
}
BENCHMARK(BM_HkCubeGroupHeisenberg)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_HkCubeGroupZn(benchmark::State& st) {
  Filtration F = Filtration::constant(FiniteGroup::cyclic(static_cast<std::size_t>(st.range(0))), 1);
  for (auto _ : st) benchmark::DoNotOptimize(hk_cube_group(F, 3, 1 << 20).elements.size());
}
BENCHMARK(BM_HkCubeGroupZn)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

// fresh copies so the cached verdicts do not short-circuit the loop
static void BM_IsFibrant(benchmark::State& st) {
  CubeSpace X = fx::heisenberg_space(2, 3);
  for (auto _ : st) {
    st.PauseTiming();
    CubeSpace Y = CubeSpace::create(X.labels(), X.max_dim(), [&] {
      std::vector<std::vector<Configuration>> c(static_cast<std::size_t>(X.max_dim()) + 1);
      for (int k = 1; k <= X.max_dim(); ++k)
        for (const auto& key : X.cubes(k)) c[static_cast<std::size_t>(k)].push_back(key.unpack(k));
      return c;
    }());
    st.ResumeTiming();
    benchmark::DoNotOptimize(is_fibrant(Y).ok);
  }
}
BENCHMARK(BM_IsFibrant)->Unit(benchmark::kMillisecond);

static void BM_CanonicalRelation(benchmark::State& st) {
  CubeSpace X = fx::heisenberg_space(2, 3);
  const int k = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(canonical_relation(X, k).relation.pair_count());
}
BENCHMARK(BM_CanonicalRelation)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_ExtractStructureGroup(benchmark::State& st) {
  CubeMap f = map_to_point(fx::heisenberg_space(2, 3));
  for (auto _ : st) benchmark::DoNotOptimize(extract_structure_group(f, 2).group.order());
}
BENCHMARK(BM_ExtractStructureGroup)->Unit(benchmark::kMillisecond);

static void BM_SolveCoboundary(benchmark::State& st) {
  CubeMap f = map_to_point(fx::d_s(FiniteGroup::cyclic(6), 1, 3));
  FiberCubeSet S = fiber_cubes(f, static_cast<int>(st.range(0)));
  FiniteGroup A = FiniteGroup::cyclic(12);
  Cochain h(f.domain.size());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = static_cast<Elem>((5 * i + 1) % 12);
  FiberCocycle rho = coboundary(S, A, h);
  for (auto _ : st) benchmark::DoNotOptimize(solve_coboundary(rho).h.has_value());
}
BENCHMARK(BM_SolveCoboundary)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
