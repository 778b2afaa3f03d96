// Parallel kernels against their serial references.

#include <random>

#include <benchmark/benchmark.h>

#include "dynsamp/kernels.hpp"

using namespace dynsamp;

namespace {

std::vector<Complex> complements(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> r(0.0, 0.99);
  std::uniform_real_distribution<double> th(-3.14159, 3.14159);
  std::vector<Complex> a;
  for (std::size_t k = 0; k < n; ++k) a.push_back(1.0 - std::polar(r(rng), th(rng)));
  return a;
}

ComplexMatrix random_matrix(Eigen::Index r, Eigen::Index c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

struct SubsetCase {
  std::vector<ComplexMatrix> blocks;
  std::vector<std::size_t> required;
  std::vector<double> refs;
  std::vector<std::vector<std::size_t>> candidates;
};

SubsetCase subset_case(std::size_t d) {
  SubsetCase c;
  for (std::size_t s = 0; s < 3; ++s) {
    c.blocks.push_back(random_matrix(3, static_cast<Eigen::Index>(d), 10 + s));
    c.required.push_back(3);
    c.refs.push_back(c.blocks.back().norm());
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      for (std::size_t k = j + 1; k < d; ++k) c.candidates.push_back({i, j, k});
    }
  }
  return c;
}

void BM_CarlesonParallel(benchmark::State& st) {
  const auto a = complements(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::carleson_log_products(a));
}
void BM_CarlesonSerial(benchmark::State& st) {
  const auto a = complements(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::carleson_log_products(a));
}

void BM_GramianParallel(benchmark::State& st) {
  const auto a = complements(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::kernel_gramian(a));
}
void BM_GramianSerial(benchmark::State& st) {
  const auto a = complements(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::kernel_gramian(a));
}

void BM_SubsetsParallel(benchmark::State& st) {
  const auto c = subset_case(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    benchmark::DoNotOptimize(kernels::subsets_spanning(c.blocks, c.required, c.refs, c.candidates, 1e-10));
  }
}
void BM_SubsetsSerial(benchmark::State& st) {
  const auto c = subset_case(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    benchmark::DoNotOptimize(
        kernels::serial::subsets_spanning(c.blocks, c.required, c.refs, c.candidates, 1e-10));
  }
}

void BM_EnergyParallel(benchmark::State& st) {
  const ComplexMatrix m = random_matrix(60, 30, 2);
  const ComplexMatrix f = random_matrix(30, st.range(0), 3);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::energy_ratios(m, f));
}
void BM_EnergySerial(benchmark::State& st) {
  const ComplexMatrix m = random_matrix(60, 30, 2);
  const ComplexMatrix f = random_matrix(30, st.range(0), 3);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::energy_ratios(m, f));
}

}  // namespace

BENCHMARK(BM_CarlesonParallel)->Arg(256)->Arg(1024)->Arg(4096)->UseRealTime();
BENCHMARK(BM_CarlesonSerial)->Arg(256)->Arg(1024)->Arg(4096)->UseRealTime();
BENCHMARK(BM_GramianParallel)->Arg(256)->Arg(1024)->UseRealTime();
BENCHMARK(BM_GramianSerial)->Arg(256)->Arg(1024)->UseRealTime();
BENCHMARK(BM_SubsetsParallel)->Arg(12)->Arg(20)->UseRealTime();
BENCHMARK(BM_SubsetsSerial)->Arg(12)->Arg(20)->UseRealTime();
BENCHMARK(BM_EnergyParallel)->Arg(1000)->Arg(10000)->UseRealTime();
BENCHMARK(BM_EnergySerial)->Arg(1000)->Arg(10000)->UseRealTime();

int main(int argc, char** argv) {
  kernels::apply_thread_cap_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
