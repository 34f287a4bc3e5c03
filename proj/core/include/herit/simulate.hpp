#ifndef HERIT_SIMULATE_HPP
#define HERIT_SIMULATE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "herit/rng.hpp"
#include "herit/types.hpp"

namespace herit {

struct SimConfig {
  Index n = 500;
  Index n_snps = 5000;
  TraitParams params;
  // When set, sigma_e2 is solved from the target and params.sigma_e2 is
  // ignored.
  std::optional<double> target_eta;
  double maf_min = 0.1;
  double maf_max = 0.5;
  int fixed_effect_count = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SimOutput {
  GenotypeMatrix genotypes;
  StandardizedMatrix z;
  Vector effects;                  // length N (over retained columns of z)
  std::vector<Index> support;      // indices of non-zero effects, into z columns
  Vector noise;                    // length n
  std::optional<Matrix> x;         // fixed-effect design (intercept + Gaussians)
  std::optional<Vector> beta;
  Vector y;
  double sigma_e2 = 0.0;
  double eta_star = 0.0;           // implied heritability of the draw's parameters
};

// Column j is n iid draws from Binomial(2, p_j), p_j ~ U[maf_min, maf_max].
GenotypeMatrix simulate_genotypes(Index n, Index n_snps, double maf_min,
                                  double maf_max, std::uint64_t seed);

// Spike-and-slab effects; returns (u, support).
std::pair<Vector, std::vector<Index>> simulate_effects(Index n_snps,
                                                       const TraitParams& params,
                                                       rng::Stream& stream);

// Y = X beta + Z u + e with e_i iid Gaussian(0, sigma_e2).
Vector simulate_phenotype(const Matrix& z, const Vector& u, double sigma_e2,
                          const Matrix* x, const Vector* beta,
                          rng::Stream& noise_stream);

// sigma_e2 achieving the target heritability: N q sigma_u2 (1-eta)/eta.
double solve_sigma_e(Index n_snps, double q, double sigma_u2, double target_eta);

SimOutput simulate(const SimConfig& config);

}  // namespace herit

#endif
