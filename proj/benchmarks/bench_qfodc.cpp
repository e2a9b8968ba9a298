#include <benchmark/benchmark.h>

#include "qfodc/fodc.hpp"

using namespace qfodc;

namespace {

FieldConfig field_for(int series, int n) { return series == 0 ? FieldConfig::sl(n) : FieldConfig::sp(n, 1); }

}  // namespace

// Fresh contexts each iteration so the functional caches start cold.
static void BM_LRep(benchmark::State& state) {
  FieldConfig f = FieldConfig::sl(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    CoordAlgebra A(f);
    DualContext D(A);
    auto v = A.build_corep("proj:sym(tensor(u,u))");
    benchmark::DoNotOptimize(D.lrep_of(*v));
  }
}
BENCHMARK(BM_LRep)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_EvalMatrix(benchmark::State& state) {
  CoordAlgebra A(FieldConfig::sl(2));
  DualContext D(A);
  std::vector<Functional> fs = D.l_generators();
  const int degree = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(D.eval_matrix(fs, degree));
  state.SetLabel("sl2");
}
BENCHMARK(BM_EvalMatrix)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_QuantumLie(benchmark::State& state) {
  FieldConfig f = field_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    CoordAlgebra A(f);
    DualContext D(A);
    FodcContext F(D);
    benchmark::DoNotOptimize(F.quantum_lie(A.build_corep("u"), 0, Policy{}));
  }
}
BENCHMARK(BM_QuantumLie)->Args({0, 2})->Args({0, 3})->Args({1, 2})->Unit(benchmark::kMillisecond);

static void BM_Coideal(benchmark::State& state) {
  FieldConfig f = FieldConfig::sl(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    CoordAlgebra A(f);
    DualContext D(A);
    FodcContext F(D);
    QuantumLieAlgebra X = F.quantum_lie(A.build_corep("u"), 0, Policy{});
    std::vector<Functional> b = X.basis;
    b.push_back(D.eps());
    benchmark::DoNotOptimize(D.coideal_check(b, 3));
  }
}
BENCHMARK(BM_Coideal)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_Classify(benchmark::State& state) {
  for (auto _ : state) {
    CoordAlgebra A(FieldConfig::sl(2));
    DualContext D(A);
    FodcContext F(D);
    QuantumLieAlgebra X = F.quantum_lie(A.build_corep("sum(1,u)"), 1, Policy{});
    benchmark::DoNotOptimize(F.classify(X.basis, 3));
  }
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
