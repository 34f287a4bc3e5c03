#include "herit/simulate.hpp"

#include <cmath>

#include "herit/parallel.hpp"

namespace herit {

void SimConfig::validate() const {
  if (n < 2 || n_snps < 1) throw InvalidConfig("need n >= 2 and N >= 1");
  if (!(maf_min > 0.0 && maf_min <= maf_max && maf_max <= 0.5)) {
    throw InvalidConfig("maf range must satisfy 0 < min <= max <= 0.5");
  }
  if (fixed_effect_count < 0) throw InvalidConfig("fixed_effect_count must be >= 0");
  if (target_eta && !(*target_eta > 0.0 && *target_eta < 1.0)) {
    throw InvalidConfig("target_eta must lie in (0,1)");
  }
  TraitParams check = params;
  if (target_eta) check.sigma_e2 = 0.0;  // sigma_e2 is replaced, not validated
  check.validate();
}

GenotypeMatrix simulate_genotypes(Index n, Index n_snps, double maf_min,
                                  double maf_max, std::uint64_t seed) {
  GenotypeValues values(n, n_snps);
  parallel_for(static_cast<std::size_t>(n_snps), [&](std::size_t sj) {
    const Index j = static_cast<Index>(sj);
    auto maf_stream = rng::substream(seed, rng::Purpose::MinorAlleleFreq, sj);
    const double p = maf_stream.uniform(maf_min, maf_max);
    auto col_stream = rng::substream(seed, rng::Purpose::GenotypeColumn, sj);
    for (Index i = 0; i < n; ++i) {
      values(i, j) = static_cast<std::int8_t>(col_stream.binomial2(p));
    }
  });
  return GenotypeMatrix(std::move(values));
}

std::pair<Vector, std::vector<Index>> simulate_effects(Index n_snps,
                                                       const TraitParams& params,
                                                       rng::Stream& stream) {
  params.validate();
  Vector u = Vector::Zero(n_snps);
  std::vector<Index> support;
  const double sigma_u = std::sqrt(params.sigma_u2);
  for (Index i = 0; i < n_snps; ++i) {
    if (stream.uniform() < params.q) {
      double v = stream.normal() * sigma_u;
      while (v == 0.0) v = stream.normal() * sigma_u;
      u(i) = v;
      support.push_back(i);
    }
  }
  return {std::move(u), std::move(support)};
}

Vector simulate_phenotype(const Matrix& z, const Vector& u, double sigma_e2,
                          const Matrix* x, const Vector* beta,
                          rng::Stream& noise_stream) {
  if (u.size() != z.cols()) throw DimensionMismatch("effect vector length != SNP count");
  if ((x == nullptr) != (beta == nullptr)) {
    throw DimensionMismatch("fixed effects require both X and beta");
  }
  Vector y = z * u;
  if (x) {
    if (x->rows() != z.rows()) throw DimensionMismatch("X rows != n");
    if (beta->size() != x->cols()) throw DimensionMismatch("beta length != X columns");
    y += *x * *beta;
  }
  const double sigma_e = std::sqrt(sigma_e2);
  for (Index i = 0; i < y.size(); ++i) y(i) += sigma_e * noise_stream.normal();
  return y;
}

double solve_sigma_e(Index n_snps, double q, double sigma_u2, double target_eta) {
  return static_cast<double>(n_snps) * q * sigma_u2 * (1.0 - target_eta) / target_eta;
}

SimOutput simulate(const SimConfig& config) {
  config.validate();
  GenotypeMatrix w =
      simulate_genotypes(config.n, config.n_snps, config.maf_min, config.maf_max,
                         config.seed);
  StandardizedMatrix z = standardize(w);

  TraitParams params = config.params;
  if (config.target_eta) {
    params.sigma_e2 =
        solve_sigma_e(z.snp_count(), params.q, params.sigma_u2, *config.target_eta);
  }

  auto effect_stream = rng::substream(config.seed, rng::Purpose::Effects, 0);
  auto [u, support] = simulate_effects(z.snp_count(), params, effect_stream);

  std::optional<Matrix> x;
  std::optional<Vector> beta;
  if (config.fixed_effect_count > 0) {
    auto fx = rng::substream(config.seed, rng::Purpose::FixedEffects, 0);
    Matrix design(config.n, config.fixed_effect_count);
    design.col(0).setOnes();
    for (Index j = 1; j < design.cols(); ++j) {
      for (Index i = 0; i < design.rows(); ++i) design(i, j) = fx.normal();
    }
    Vector b(design.cols());
    for (Index j = 0; j < b.size(); ++j) b(j) = fx.normal();
    x = std::move(design);
    beta = std::move(b);
  }

  auto noise_stream = rng::substream(config.seed, rng::Purpose::Noise, 0);
  Vector noise(config.n);
  const double sigma_e = std::sqrt(params.sigma_e2);
  for (Index i = 0; i < noise.size(); ++i) noise(i) = sigma_e * noise_stream.normal();

  Vector y = z.values * u + noise;
  if (x) y += *x * *beta;

  const double eta = implied_heritability(params, z.snp_count());
  return SimOutput{std::move(w),     std::move(z),    std::move(u),
                   std::move(support), std::move(noise), std::move(x),
                   std::move(beta),  std::move(y),    params.sigma_e2,
                   eta};
}

}  // namespace herit
