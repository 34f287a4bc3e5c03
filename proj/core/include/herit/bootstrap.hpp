#ifndef HERIT_BOOTSTRAP_HPP
#define HERIT_BOOTSTRAP_HPP

#include <cstdint>
#include <vector>

#include "herit/mle.hpp"

namespace herit {

// Recoloring transform applied after resampling the whitened vector.
// SqrtGamma restores the fitted covariance (identity resample gives back
// the original rotated vector); FullGamma is the compatibility variant.
enum class Recolor { SqrtGamma, FullGamma };

struct BootstrapResult {
  std::vector<double> replicate_etas;  // successful refits only
  double ci_low = 0.0;
  double ci_high = 0.0;
  double variance = 0.0;
  int replicate_count = 0;  // requested K
  int dropped = 0;
};

// Whiten Yt with Gamma^{-1/2}, resample components with replacement K
// times, recolor, refit eta for each replicate; 95% bounds are the
// floor(0.025K)-th and floor(0.975K)-th order statistics.
BootstrapResult bootstrap_ci(const KinshipEigen& ke, const HeritabilityFit& fit,
                             int replicates = 80, std::uint64_t seed = 0,
                             Recolor recolor = Recolor::SqrtGamma);

}  // namespace herit

#endif
