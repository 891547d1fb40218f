// Serial reference vs OpenMP for the three parallel kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "combicache/delivery.hpp"
#include "combicache/kernels.hpp"
#include "combicache/placement.hpp"

using namespace combicache;

namespace {

struct CombineInput {
  std::vector<Gf16> coeff;
  std::vector<Bytes> src;
  std::vector<ByteView> views;
  std::vector<Bytes> out;
};

CombineInput make_combine(std::size_t k, std::size_t m, std::size_t len)
{
  CombineInput in;
  std::mt19937_64 rng(7);
  in.coeff.resize(k * m);
  for (auto& c : in.coeff) {
    c = static_cast<Gf16>(rng());
  }
  in.src.assign(k, Bytes(len));
  for (auto& s : in.src) {
    for (auto& b : s) {
      b = static_cast<std::uint8_t>(rng());
    }
  }
  in.views.assign(in.src.begin(), in.src.end());
  in.out.assign(m, Bytes(len));
  return in;
}

template <bool Omp>
void BM_linear_combine(benchmark::State& state)
{
  auto in = make_combine(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(0)), 4096);
  for (auto _ : state) {
    if constexpr (Omp) {
      kernels::linear_combine_omp(in.coeff, in.views, in.out);
    } else {
      kernels::linear_combine_serial(in.coeff, in.views, in.out);
    }
    benchmark::DoNotOptimize(in.out.front().data());
  }
  state.SetBytesProcessed(state.iterations() * state.range(0) * state.range(0) * 4096);
}

template <bool Omp>
void BM_uncovered_cached_counts(benchmark::State& state)
{
  const auto net = CombinationNetwork::build(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    auto v = Omp ? kernels::uncovered_cached_counts_omp(net, 4) : kernels::uncovered_cached_counts_serial(net, 4);
    benchmark::DoNotOptimize(v.data());
  }
}

template <Execution Exec>
void BM_worst_case_load(benchmark::State& state)
{
  const auto net = CombinationNetwork::build(4, 2);
  const auto layout = asym_coded_placement(net, static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    auto wc = worst_case_load(net, layout, AllDemands{}, Exec);
    benchmark::DoNotOptimize(wc.evaluated);
  }
}

}  // namespace

BENCHMARK(BM_linear_combine<false>)->Arg(16)->Arg(64);
BENCHMARK(BM_linear_combine<true>)->Arg(16)->Arg(64);
BENCHMARK(BM_uncovered_cached_counts<false>)->Arg(7)->Arg(9);
BENCHMARK(BM_uncovered_cached_counts<true>)->Arg(7)->Arg(9);
BENCHMARK(BM_worst_case_load<Execution::Serial>)->Arg(3)->Arg(4);
BENCHMARK(BM_worst_case_load<Execution::Parallel>)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
