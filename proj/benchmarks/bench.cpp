#include <benchmark/benchmark.h>

#include <cmath>

#include "qtoda/checks.hpp"
#include "qtoda/sim.hpp"
#include "qtoda/toda.hpp"

using namespace qtoda;

static void BM_CoeffRecursive(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Drift d(Rational(2, 3), {1, 0, 2});
  for (auto _ : state) benchmark::DoNotOptimize(coeff_recursive({n, n, n}, d));
}
BENCHMARK(BM_CoeffRecursive)->Arg(1)->Arg(2)->Arg(3)->Arg(4);

static void BM_CoeffDirect(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Drift d(Rational(2, 3), {1, 0, 2});
  for (auto _ : state) benchmark::DoNotOptimize(coeff_direct({n, n, n}, d));
}
BENCHMARK(BM_CoeffDirect)->Arg(1)->Arg(2)->Arg(3);

static void BM_SkewFiber(benchmark::State& state) {
  SkewShape s(Diagram({3, 3, 3}), Diagram({2, 2}));
  Drift d(Rational(2, 3), {1, 0, 1});
  CellArray sigma(s.lambda(), s.mu());
  for (Cell c : sigma.cells()) sigma.set(c, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_fiber(s, sigma, d));
}
BENCHMARK(BM_SkewFiber)->Arg(2)->Arg(4)->Arg(6);

static void BM_Intertwining(benchmark::State& state) {
  SkewShape s(staircase(4), staircase(3));
  Drift d(Rational(1, 2));
  CellArray sigma = diagonal_boundary({1, 1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(intertwining_check(s, sigma, d));
}
BENCHMARK(BM_Intertwining)->Unit(benchmark::kMillisecond);

static void BM_Simulate(benchmark::State& state) {
  RateVariant v = RateVariant::basic(3, Rational(1, 2));
  CellArray pi(staircase(4));
  for (Cell c : pi.lambda().cells()) pi.set(c, 4);
  uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(pi, v, INFINITY, seed++));
}
BENCHMARK(BM_Simulate);
BENCHMARK_MAIN();
