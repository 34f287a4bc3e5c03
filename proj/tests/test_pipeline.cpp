#include <doctest.h>

#include <numeric>

#include "herit/parallel.hpp"
#include "herit/pipeline.hpp"
#include "herit/simulate.hpp"
#include "test_util.hpp"

using namespace herit;

namespace {

struct Dataset {
  StandardizedMatrix z;
  Vector y;
  std::vector<Index> support;
};

Dataset signal_dataset(Index n, Index p, std::uint64_t seed) {
  Dataset d{standardize(simulate_genotypes(n, p, 0.1, 0.5, seed)), {}, {}};
  Vector u = Vector::Zero(d.z.snp_count());
  auto stream = rng::substream(seed, rng::Purpose::Effects, 0);
  auto pos = stream.sample_without_replacement(
      static_cast<std::size_t>(d.z.snp_count()), 5);
  for (auto j : pos) {
    u(static_cast<Index>(j)) = stream.uniform() < 0.5 ? -1.5 : 1.5;
    d.support.push_back(static_cast<Index>(j));
  }
  auto noise = rng::substream(seed, rng::Purpose::Noise, 0);
  d.y = simulate_phenotype(d.z.values, u, 1.0, nullptr, nullptr, noise);
  return d;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("oracle mode over all columns reproduces full mode exactly") {
  Dataset d = signal_dataset(120, 300, 131);
  PipelineConfig full;
  full.mode = Mode::Full;
  full.bootstrap_replicates = 40;
  full.seed = 2;
  PipelineConfig oracle = full;
  oracle.mode = Mode::Oracle;
  oracle.oracle_support.resize(static_cast<std::size_t>(d.z.snp_count()));
  std::iota(oracle.oracle_support.begin(), oracle.oracle_support.end(), Index{0});

  PipelineResult a = run(d.y, d.z.values, nullptr, full);
  PipelineResult b = run(d.y, d.z.values, nullptr, oracle);
  CHECK(a.fit.eta_hat == b.fit.eta_hat);
  CHECK(a.fit.sigma2_hat == b.fit.sigma2_hat);
  CHECK(a.boot.ci_low == b.boot.ci_low);
  CHECK(a.boot.ci_high == b.boot.ci_high);
}

TEST_CASE("prepare with no covariates projects out the intercept") {
  // The ones direction is removed and the dimension drops by one; inner
  // products with centered data are preserved.
  Dataset d = signal_dataset(50, 80, 132);
  auto [py, pz] = prepare(d.y, d.z.values, nullptr);
  REQUIRE(py.size() == 49);
  REQUIRE(pz.rows() == 49);
  const Vector yc = d.y.array() - d.y.mean();
  CHECK(py.squaredNorm() == doctest::Approx(yc.squaredNorm()).epsilon(1e-10));
  const Vector cross_projected = pz.transpose() * py;
  const Vector cross_centered = d.z.values.transpose() * yc;
  CHECK((cross_projected - cross_centered).cwiseAbs().maxCoeff() <=
        1e-8 * std::max(1.0, cross_centered.cwiseAbs().maxCoeff()));
}

TEST_CASE("fixed-effect estimates are invariant to the covariate signal") {
  // Adding x*beta to y and projecting it out must not move the estimate.
  Dataset d = signal_dataset(100, 200, 133);
  Matrix x(100, 2);
  x.col(0).setOnes();
  x.col(1) = testutil::random_vector(100, 134);
  Vector beta(2);
  beta << 4.0, -7.0;

  PipelineConfig config;
  config.mode = Mode::Oracle;
  config.oracle_support = d.support;
  config.bootstrap_replicates = 40;
  config.seed = 3;

  PipelineResult base = run(d.y, d.z.values, &x, config);
  const Vector shifted = d.y + x * beta;
  PipelineResult moved = run(shifted, d.z.values, &x, config);
  CHECK(std::abs(base.fit.eta_hat - moved.fit.eta_hat) <= 1e-8);
  // sigma2 is more sensitive to the (tiny) eta difference than eta itself.
  CHECK(base.fit.sigma2_hat ==
        doctest::Approx(moved.fit.sigma2_hat).epsilon(1e-6));
}

TEST_CASE("select mode reports the selection and fits only those columns") {
  Dataset d = signal_dataset(200, 500, 135);
  PipelineConfig config;
  config.mode = Mode::Select;
  config.stability.n_subsamples = 30;
  config.stability.threshold = 0.6;
  config.bootstrap_replicates = 40;
  config.seed = 4;
  PipelineResult result = run(d.y, d.z.values, nullptr, config);
  REQUIRE(result.selection.has_value());
  CHECK(result.selection->n_final() >= 1);
  CHECK(result.fit.mode == FitMode::Select);
  // One eigenvalue per projected dimension (n - 1 after the intercept).
  CHECK(result.fit.lambdas_used.size() == 199);
}

TEST_CASE("pipeline is deterministic across worker counts") {
  Dataset d = signal_dataset(80, 160, 136);
  PipelineConfig config;
  config.mode = Mode::Select;
  config.stability.n_subsamples = 20;
  config.stability.threshold = 0.5;
  config.bootstrap_replicates = 30;
  config.seed = 5;
  set_thread_count(1);
  PipelineResult a = run(d.y, d.z.values, nullptr, config);
  set_thread_count(4);
  PipelineResult b = run(d.y, d.z.values, nullptr, config);
  set_thread_count(0);
  CHECK(a.fit.eta_hat == b.fit.eta_hat);
  CHECK(a.boot.replicate_etas == b.boot.replicate_etas);
  REQUIRE(a.selection.has_value());
  REQUIRE(b.selection.has_value());
  CHECK(a.selection->selected == b.selection->selected);
  CHECK(a.selection->frequencies == b.selection->frequencies);
}

TEST_CASE("config validation") {
  PipelineConfig config;
  config.mode = Mode::Oracle;  // oracle_support empty
  CHECK_THROWS_AS(config.validate(), InvalidConfig);
  config.mode = Mode::Select;
  config.bootstrap_replicates = 10;
  CHECK_THROWS_AS(config.validate(), InvalidConfig);
}

TEST_CASE("oracle on the true support beats a wrong support in likelihood") {
  Dataset d = signal_dataset(150, 400, 137);
  PipelineConfig config;
  config.mode = Mode::Oracle;
  config.bootstrap_replicates = 30;
  config.seed = 6;
  config.oracle_support = d.support;
  PipelineResult truth = run(d.y, d.z.values, nullptr, config);
  CHECK(truth.fit.eta_hat > 0.2);
}

}  // TEST_SUITE
