#include "herit/bootstrap.hpp"

#include <algorithm>
#include <cmath>

#include "herit/errors.hpp"
#include "herit/parallel.hpp"
#include "herit/rng.hpp"

namespace herit {

BootstrapResult bootstrap_ci(const KinshipEigen& ke, const HeritabilityFit& fit,
                             int replicates, std::uint64_t seed, Recolor recolor) {
  if (replicates < 20) throw InvalidConfig("bootstrap needs at least 20 replicates");
  const Index n = ke.n();

  // Fitted diagonal covariance of the rotated vector.
  Vector gamma(n);
  for (Index i = 0; i < n; ++i) {
    gamma(i) = fit.sigma2_hat * (fit.eta_hat * (ke.lambdas(i) - 1.0) + 1.0);
    if (gamma(i) <= 0.0) {
      throw DegenerateLikelihood("fitted covariance is not positive");
    }
  }
  const Vector whitened = ke.rotated.array() / gamma.array().sqrt();
  Vector color(n);
  for (Index i = 0; i < n; ++i) {
    color(i) = recolor == Recolor::SqrtGamma ? std::sqrt(gamma(i)) : gamma(i);
  }

  std::vector<double> etas(static_cast<std::size_t>(replicates));
  std::vector<char> ok(static_cast<std::size_t>(replicates), 0);
  parallel_for(static_cast<std::size_t>(replicates), [&](std::size_t k) {
    auto stream = rng::substream(seed, rng::Purpose::BootstrapReplicate, k);
    Vector resampled(n);
    for (Index i = 0; i < n; ++i) {
      resampled(i) =
          color(i) * whitened(static_cast<Index>(stream.below(static_cast<std::uint64_t>(n))));
    }
    try {
      KinshipEigen replicate{ke.lambdas, std::move(resampled), ke.n_sel};
      etas[k] = fit_heritability(replicate, fit.mode).eta_hat;
      ok[k] = 1;
    } catch (const DegenerateLikelihood&) {
      // replicate dropped
    }
  });

  BootstrapResult result;
  result.replicate_count = replicates;
  for (std::size_t k = 0; k < etas.size(); ++k) {
    if (ok[k]) result.replicate_etas.push_back(etas[k]);
  }
  result.dropped = replicates - static_cast<int>(result.replicate_etas.size());
  if (result.dropped * 10 > replicates) {
    throw DegenerateLikelihood("more than 10% of bootstrap replicates failed to fit");
  }

  std::vector<double> sorted = result.replicate_etas;
  std::sort(sorted.begin(), sorted.end());
  const auto kk = static_cast<long>(sorted.size());
  // 1-based order statistics floor(0.025 K) and floor(0.975 K), clamped.
  const long k_lo = std::clamp<long>(static_cast<long>(std::floor(0.025 * kk)), 1, kk);
  const long k_hi = std::clamp<long>(static_cast<long>(std::floor(0.975 * kk)), 1, kk);
  result.ci_low = sorted[static_cast<std::size_t>(k_lo - 1)];
  result.ci_high = sorted[static_cast<std::size_t>(k_hi - 1)];

  double mean = 0.0;
  for (double e : sorted) mean += e;
  mean /= static_cast<double>(kk);
  double var = 0.0;
  for (double e : sorted) var += (e - mean) * (e - mean);
  result.variance = kk > 1 ? var / static_cast<double>(kk - 1) : 0.0;
  return result;
}

}  // namespace herit
