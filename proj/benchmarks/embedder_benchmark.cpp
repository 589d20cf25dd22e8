#include <benchmark/benchmark.h>

#include "lensembed/lensspace.hpp"

namespace {

using namespace lensembed;

CFString string_of(const benchmark::State& state) {
  std::vector<Integer> a;
  for (int64_t i = 0; i < state.range(0); ++i) a.emplace_back(6 + i % 3);
  return CFString(a);
}

// F_{k+1} / F_k: operands grow linearly in k bits, expansion length too.
void BM_ExpandDual(benchmark::State& state) {
  Integer a = 0, b = 1;
  for (int64_t i = 0; i < state.range(0); ++i) std::swap(a, b), b += a;
  const Fraction f(a + b, b);
  for (auto _ : state) benchmark::DoNotOptimize(dual(expand(f)));
}
BENCHMARK(BM_ExpandDual)->Arg(20)->Arg(100)->Arg(400);

// Unique orbit of the dual lattice at the minimal rank.
void BM_EnumerateMinimal(benchmark::State& state) {
  const CFString s = string_of(state);
  const IntegralLattice l = chain_lattice(dual(s));
  const std::size_t n = static_cast<std::size_t>(s.sum()) - s.length() + 1;
  std::uint64_t nodes = 0;
  for (auto _ : state) {
    const EmbedResult r =
        run_embedding_search(EmbedQuery{l, diagonal_lattice(n), EmbedMode::kListOrbits, {}});
    nodes = r.nodes;
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_EnumerateMinimal)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

// Exhaustive search with no solution, one rank below the minimum.
void BM_RefuteBelowMinimal(benchmark::State& state) {
  const CFString s = string_of(state);
  const IntegralLattice l = chain_lattice(dual(s));
  const std::size_t n = static_cast<std::size_t>(s.sum()) - s.length();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        run_embedding_search(EmbedQuery{l, diagonal_lattice(n), EmbedMode::kCountOrbits, {}}));
}
BENCHMARK(BM_RefuteBelowMinimal)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_Complement(benchmark::State& state) {
  const CFString s = string_of(state);
  const LatticeMap f = explicit_dual_embedding(s);
  for (auto _ : state) benchmark::DoNotOptimize(orthogonal_complement(f));
}
BENCHMARK(BM_Complement)->DenseRange(1, 4);

void BM_FillingForm(benchmark::State& state) {
  const CFString s = string_of(state);
  const Fraction f = eval(s);
  const IntegralLattice form = chain_lattice(s);
  for (auto _ : state) benchmark::DoNotOptimize(filling_form_check(f.p(), f.q(), form));
}
BENCHMARK(BM_FillingForm)->DenseRange(1, 3);

}  // namespace

BENCHMARK_MAIN();
