// Serial reference kernels against their OpenMP counterparts.
// The parallel variants take the worker count as the benchmark argument; times are wall-clock.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "hlcu/kernels.hpp"

using namespace hlcu;

namespace {

struct ShotFixture {
  HybridChannel ch;
  HybridSampler sampler;

  static ShotFixture make() {
    std::mt19937_64 rng(1);
    auto dec = random_lcu(6, 8, rng);
    HybridChannel ch(dec, Partition::parse("1,2,3|4,5|6", 6));
    const auto rho = random_mixed_state(8, 4, rng);
    const Observable o(random_hermitian(8, rng));
    HybridSampler s(ch, rho, o);
    return {std::move(ch), std::move(s)};
  }
};

const ShotFixture& shots() {
  static const ShotFixture f = ShotFixture::make();
  return f;
}

struct ScanFixture {
  LcuDecomposition dec;
  MixedState rho;
  std::vector<Partition> parts;
};

const ScanFixture& scan() {
  static const ScanFixture f = [] {
    std::mt19937_64 rng(2);
    auto dec = random_lcu(8, 8, rng);
    auto rho = random_mixed_state(8, 2, rng);
    return ScanFixture{std::move(dec), std::move(rho), enumerate_partitions(8)};
  }();
  return f;
}

struct SineFixture {
  std::vector<double> z, w, y, lambda;
};

const SineFixture& sine() {
  static const SineFixture f = [] {
    SineFixture s;
    for (int k = 1; k <= 200; ++k) {
      s.z.push_back(0.01 * k);
      s.w.push_back(0.01 * k * std::exp(-0.5 * 1e-4 * k * k));
    }
    for (int j = 0; j < 4000; ++j) s.y.push_back(0.05 * j);
    for (int l = 0; l < 16; ++l) s.lambda.push_back(-1.0 + 2.0 * l / 15.0);
    return s;
  }();
  return f;
}

struct ExpFixture {
  ComplexMatrix h, l;
  std::vector<double> nodes, weights;
};

const ExpFixture& expsum() {
  static const ExpFixture f = [] {
    std::mt19937_64 rng(3);
    ExpFixture e{random_hermitian(8, rng), random_hermitian(8, rng), {}, {}};
    for (int j = 0; j <= 2000; ++j) {
      const double k = -5.0 + 10.0 * j / 2000.0;
      e.nodes.push_back(k);
      e.weights.push_back(1.0 / (1.0 + k * k));
    }
    return e;
  }();
  return f;
}

void BM_SampleShotsSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::sample_shots(shots().sampler, 7, 1, 100000));
  st.SetItemsProcessed(st.iterations() * 100000);
}

void BM_SampleShotsParallel(benchmark::State& st) {
  kernels::set_workers(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::parallel::sample_shots(shots().sampler, 7, 1, 100000));
  st.SetItemsProcessed(st.iterations() * 100000);
}

void BM_PartitionScanSerial(benchmark::State& st) {
  const auto& f = scan();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::scan_reduction_factors(f.dec, f.parts, f.rho));
}

void BM_PartitionScanParallel(benchmark::State& st) {
  kernels::set_workers(static_cast<int>(st.range(0)));
  const auto& f = scan();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::parallel::scan_reduction_factors(f.dec, f.parts, f.rho));
}

void BM_SineTableSerial(benchmark::State& st) {
  const auto& f = sine();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::odd_sine_table(f.z, f.w, f.y, f.lambda));
}

void BM_SineTableParallel(benchmark::State& st) {
  kernels::set_workers(static_cast<int>(st.range(0)));
  const auto& f = sine();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::parallel::odd_sine_table(f.z, f.w, f.y, f.lambda));
}

void BM_ExponentialSumSerial(benchmark::State& st) {
  const auto& f = expsum();
  for (auto _ : st)
    benchmark::DoNotOptimize(kernels::serial::weighted_exponential_sum(f.h, f.l, 1.0, f.nodes, f.weights));
}

void BM_ExponentialSumParallel(benchmark::State& st) {
  kernels::set_workers(static_cast<int>(st.range(0)));
  const auto& f = expsum();
  for (auto _ : st)
    benchmark::DoNotOptimize(kernels::parallel::weighted_exponential_sum(f.h, f.l, 1.0, f.nodes, f.weights));
}

}  // namespace

BENCHMARK(BM_SampleShotsSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SampleShotsParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PartitionScanSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PartitionScanParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SineTableSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SineTableParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExponentialSumSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExponentialSumParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
