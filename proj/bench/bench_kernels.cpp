#include <benchmark/benchmark.h>

#include "negabeta/alphasrs.hpp"
#include "negabeta/negabase.hpp"
#include "negabeta/negarith.hpp"

using namespace negabeta;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_WitnessClosure(benchmark::State& state) {
  auto p = srs_from_base(isolate_pisot_base(IntPolynomial::parse("1,-2,-2,-2,-2,-2,-2,-2")));
  for (auto _ : state) benchmark::DoNotOptimize(witness_closure(p, kDefaultClosureCap, exec_of(state)));
  label(state);
}

void BM_VerifyV(benchmark::State& state) {
  CubicSystem sys(6);
  VSet v = build_v(6);
  for (auto _ : state) benchmark::DoNotOptimize(verify_v_invariant(sys, v, exec_of(state)));
  label(state);
}

void BM_FrmaxAdd(benchmark::State& state) {
  CubicSystem sys(6);
  for (auto _ : state) benchmark::DoNotOptimize(frmax_add(sys, exec_of(state)));
  label(state);
}

void BM_Oracle(benchmark::State& state) {
  CubicSystem sys(1);
  for (auto _ : state) benchmark::DoNotOptimize(frmax_oracle(sys, 6, FrOp::Sub, exec_of(state)));
  label(state);
}

void BM_EnumerateZmb(benchmark::State& state) {
  NegativeBase nb(isolate_pisot_base(IntPolynomial::parse("1,-1,-1,-1")));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_zmb(nb, 10, exec_of(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_WitnessClosure)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyV)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FrmaxAdd)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Oracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateZmb)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
