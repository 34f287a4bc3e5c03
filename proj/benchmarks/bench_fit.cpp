#include <benchmark/benchmark.h>

#include "herit/bootstrap.hpp"
#include "herit/mle.hpp"
#include "herit/rng.hpp"
#include "herit/simulate.hpp"

namespace {

herit::KinshipEigen make_kinship(herit::Index n, herit::Index n_sel) {
  herit::StandardizedMatrix z =
      herit::standardize(herit::simulate_genotypes(n, n_sel, 0.1, 0.5, 5));
  auto noise = herit::rng::substream(6, herit::rng::Purpose::Noise, 0);
  herit::Vector y = herit::simulate_phenotype(
      z.values, herit::Vector::Ones(z.snp_count()), 1.0, nullptr, nullptr, noise);
  return herit::kinship_eigen(z.values, y);
}

void bench_fit_heritability(benchmark::State& state) {
  herit::KinshipEigen ke = make_kinship(state.range(0), 10);
  for (auto _ : state) {
    herit::HeritabilityFit fit = herit::fit_heritability(ke);
    benchmark::DoNotOptimize(fit);
  }
}

void bench_bootstrap_ci(benchmark::State& state) {
  herit::KinshipEigen ke = make_kinship(state.range(0), 10);
  herit::HeritabilityFit fit = herit::fit_heritability(ke);
  for (auto _ : state) {
    herit::BootstrapResult boot = herit::bootstrap_ci(ke, fit, 80, 1);
    benchmark::DoNotOptimize(boot);
  }
}

}  // namespace

BENCHMARK(bench_fit_heritability)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_bootstrap_ci)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
