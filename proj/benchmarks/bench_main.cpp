#include <benchmark/benchmark.h>

#include <random>

#include "svnfa/cg1.hpp"
#include "svnfa/cg2.hpp"
#include "svnfa/exec.hpp"
#include "svnfa/tables.hpp"
#include "svnfa/verify.hpp"

using namespace svnfa;

namespace {

OneWayNfa bench_one_way() {
  std::mt19937_64 rng(12);
  return random_one_way(3, 2, rng);
}

TwoWayNfa bench_two_way() {
  std::mt19937_64 rng(12);
  return random_two_way(3, 1, rng);
}

void BM_decide_plain(benchmark::State& state) {
  TwoWayNfa a = bench_two_way();
  exec::TwoWayNfaMachine m(a);
  Word w(size_t(state.range(0)), 0);
  for (auto _ : state) benchmark::DoNotOptimize(exec::decide(m, w));
}
BENCHMARK(BM_decide_plain)->Arg(8)->Arg(32);

void BM_update_ltable_chain(benchmark::State& state) {
  TwoWayNfa a = bench_two_way();
  for (auto _ : state) {
    Relation r = ltable(a, {});
    for (int i = 0; i < state.range(0); ++i) r = update_ltable(a, r, 0);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_update_ltable_chain)->Arg(16)->Arg(64);

void BM_cg1_decide(benchmark::State& state) {
  OneWayNfa a = bench_one_way();
  Cg1Machine m = build_cg1(a);
  AnnotationSpec spec = AnnotationSpec::cg1(a);
  Word w;
  std::mt19937_64 rng(3);
  for (int i = 0; i < state.range(0); ++i) w.push_back(uint32_t(rng() % 2));
  AnnotatedWord x = annotate(spec, w);
  for (auto _ : state) benchmark::DoNotOptimize(exec::decide(m, x));
}
BENCHMARK(BM_cg1_decide)->Arg(6)->Arg(10);

void BM_cg2_decide(benchmark::State& state) {
  TwoWayNfa a = bench_two_way();
  Cg2Machine m = build_cg2(a, Cg2Options{false, false});
  AnnotationSpec spec = AnnotationSpec::cg2(m.normalized());
  Word w(size_t(state.range(0)), 0);
  AnnotatedWord x = annotate(spec, w);
  exec::Limits lim;
  lim.max_configs = 400'000'000;
  for (auto _ : state) benchmark::DoNotOptimize(exec::decide(m, x, lim));
}
BENCHMARK(BM_cg2_decide)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
