#include <benchmark/benchmark.h>

#include "ansatz/families.hpp"
#include "ansatz/representation.hpp"

using namespace ansatz;

namespace {

FamilyDescriptor family_for(int index) {
  switch (index) {
    case 0:
      return make_family("gamma");
    case 1:
      return make_family("legendre", {{"x", 0.5}});
    case 2:
      return make_family("hermite", {{"x", 1.0}});
    case 3:
      return make_family("laguerre", {{"x", 2.0}});
    default:
      return make_family("gauss2f1", {{"b", 0.7}, {"c", 1.9}, {"z", -0.45}});
  }
}

void set_label(benchmark::State& state, const FamilyDescriptor& fam) { state.SetLabel(fam.name); }

void BM_Derive(benchmark::State& state) {
  const auto fam = family_for(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const auto sol = derive_resolvent(fam.spec);
    benchmark::DoNotOptimize(find_endpoints(sol, fam.window));
  }
  set_label(state, fam);
}
BENCHMARK(BM_Derive)->DenseRange(0, 4);

void BM_Solve(benchmark::State& state) {
  const auto fam = family_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve(fam.spec, fam.window, 1e-10));
  set_label(state, fam);
}
BENCHMARK(BM_Solve)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

// One evaluation of a solved representation at a non-integer x, by tolerance.
void BM_Evaluate(benchmark::State& state) {
  const auto fam = family_for(static_cast<int>(state.range(0)));
  const double tol = std::pow(10.0, -static_cast<double>(state.range(1)));
  const auto rep = solve(fam.spec, fam.window, tol).front();
  int nodes = 0;
  for (auto _ : state) {
    const Evaluation e = evaluate_detailed(rep, 2.5);
    nodes = e.quadrature.nodes_used;
    benchmark::DoNotOptimize(e.value);
  }
  state.counters["nodes"] = nodes;
  set_label(state, fam);
}
BENCHMARK(BM_Evaluate)->ArgsProduct({{0, 1, 2, 3, 4}, {6, 10, 14}})->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
