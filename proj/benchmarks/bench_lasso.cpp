#include <benchmark/benchmark.h>

#include "herit/lasso.hpp"
#include "herit/rng.hpp"
#include "herit/simulate.hpp"

namespace {

void bench_lasso_path(benchmark::State& state) {
  const herit::Index n = state.range(0);
  const herit::Index p = state.range(1);
  herit::StandardizedMatrix z =
      herit::standardize(herit::simulate_genotypes(n, p, 0.1, 0.5, 3));
  herit::Vector u = herit::Vector::Zero(z.snp_count());
  auto stream = herit::rng::substream(3, herit::rng::Purpose::Effects, 0);
  for (auto j : stream.sample_without_replacement(
           static_cast<std::size_t>(z.snp_count()), 10)) {
    u(static_cast<herit::Index>(j)) = 1.0;
  }
  auto noise = herit::rng::substream(3, herit::rng::Purpose::Noise, 0);
  herit::Vector y = herit::simulate_phenotype(z.values, u, 2.0, nullptr, nullptr, noise);
  for (auto _ : state) {
    herit::LassoPath path = herit::lasso_path(y, z.values, 50, 1e-2);
    benchmark::DoNotOptimize(path);
  }
}

}  // namespace

BENCHMARK(bench_lasso_path)->Args({100, 100})->Args({250, 250})->Unit(benchmark::kMillisecond);
