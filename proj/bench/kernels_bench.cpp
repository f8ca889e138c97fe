// Serial reference vs OpenMP kernels: the brute-force oracle and replicated
// search runs.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "wsps/bench.hpp"
#include "wsps/brute_force.hpp"
#include "wsps/instance_gen.hpp"

using namespace wsps;

namespace {

const Instance& oracle_instance() {
  static const Instance inst = [] {
    const NetworkData net = generate_synthetic_network(16, 7, 510, 0.6);
    return generate_instance(net, InstanceSpec{4, 2, 3, 'L', 510});
  }();
  return inst;
}

const Instance& search_instance() {
  static const Instance inst = [] {
    const NetworkData net = generate_synthetic_network(81, 16, 7);
    return generate_instance(net, InstanceSpec{7, 5, 10, 'S', 1});
  }();
  return inst;
}

OracleLimits four() {
  OracleLimits l;
  l.max_warehouses = 4;
  return l;
}

void BM_OracleSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_solve_serial(oracle_instance(), {Variant::WSPSDP}, four()));
  state.counters["leaves"] = static_cast<double>(brute_force_solve_serial(oracle_instance(), {Variant::WSPSDP}, four()).leaves);
}

void BM_OracleParallel(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_solve(oracle_instance(), {Variant::WSPSDP}, four()));
}

void BM_Replications(benchmark::State& state) {
  SearchParams p;
  p.iterations = 2000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_replicated(search_instance(), {Variant::WSPSDP}, p, 8, static_cast<int>(state.range(0))));
  }
}

}  // namespace

BENCHMARK(BM_OracleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Replications)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
