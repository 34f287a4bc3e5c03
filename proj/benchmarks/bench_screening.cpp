#include <benchmark/benchmark.h>

#include "herit/rng.hpp"
#include "herit/screening.hpp"
#include "herit/simulate.hpp"

namespace {

void bench_sis_screen(benchmark::State& state) {
  const herit::Index n = state.range(0);
  const herit::Index p = state.range(1);
  herit::StandardizedMatrix z =
      herit::standardize(herit::simulate_genotypes(n, p, 0.1, 0.5, 1));
  auto noise = herit::rng::substream(2, herit::rng::Purpose::Noise, 0);
  herit::Vector y = herit::simulate_phenotype(
      z.values, herit::Vector::Zero(z.snp_count()), 1.0, nullptr, nullptr, noise);
  for (auto _ : state) {
    auto result = herit::sis_screen(y, z.values, n);
    benchmark::DoNotOptimize(result);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p));
}

}  // namespace

BENCHMARK(bench_sis_screen)->Args({200, 2000})->Args({500, 5000})->Unit(benchmark::kMillisecond);
