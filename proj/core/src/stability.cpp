#include "herit/stability.hpp"

#include <cmath>

#include "herit/lasso.hpp"
#include "herit/parallel.hpp"
#include "herit/rng.hpp"
#include "herit/screening.hpp"

namespace herit {

void StabilityConfig::validate() const {
  if (n_subsamples < 2) throw InvalidConfig("need at least two subsamples");
  if (!(subsample_fraction > 0.0 && subsample_fraction < 1.0)) {
    throw InvalidConfig("subsample_fraction must lie in (0,1)");
  }
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw InvalidConfig("selection threshold must lie in (0,1)");
  }
}

std::vector<double> selection_frequencies(const Vector& y, const Matrix& z,
                                          int n_subsamples, double subsample_fraction,
                                          std::uint64_t seed, Index screen_n_max) {
  if (y.size() != z.rows()) throw DimensionMismatch("phenotype length != rows of Z");
  const Index n = z.rows();
  if (n < 4) throw InvalidConfig("stability selection needs n >= 4");
  const auto m = static_cast<Index>(std::floor(subsample_fraction * static_cast<double>(n)));
  if (m < 2) throw InvalidConfig("subsample size too small");
  const Index n_max_sub = std::min(screen_n_max, m);

  // One hit vector per subsample, merged afterwards: deterministic for
  // any worker count.
  std::vector<std::vector<Index>> hits(static_cast<std::size_t>(n_subsamples));
  parallel_for(static_cast<std::size_t>(n_subsamples), [&](std::size_t s) {
    auto stream = rng::substream(seed, rng::Purpose::Subsample, s);
    const auto rows =
        stream.sample_without_replacement(static_cast<std::size_t>(n),
                                          static_cast<std::size_t>(m));
    Vector ys(m);
    Matrix zs(m, z.cols());
    for (Index i = 0; i < m; ++i) {
      ys(i) = y(static_cast<Index>(rows[static_cast<std::size_t>(i)]));
      zs.row(i) = z.row(static_cast<Index>(rows[static_cast<std::size_t>(i)]));
    }

    const ScreenResult screen = sis_screen(ys, zs, n_max_sub);
    Matrix z_red(m, static_cast<Index>(screen.kept.size()));
    for (std::size_t k = 0; k < screen.kept.size(); ++k) {
      z_red.col(static_cast<Index>(k)) = zs.col(screen.kept[k]);
    }

    // Half-subsample problems are nearly square after screening, so the
    // smallest-lambda fits are saturated and converge slowly; give them a
    // generous sweep budget (sweeps are cheap at these sizes).
    const LassoPath path = lasso_path(ys, z_red, 100, 1e-3, 1e-7, 200000);
    const LassoFit& last = path.fits.back();  // smallest grid lambda
    for (Index k : last.active_set) {
      hits[s].push_back(screen.kept[static_cast<std::size_t>(k)]);
    }
  });

  std::vector<double> frequencies(static_cast<std::size_t>(z.cols()), 0.0);
  for (const auto& h : hits) {
    for (Index j : h) frequencies[static_cast<std::size_t>(j)] += 1.0;
  }
  for (double& f : frequencies) f /= static_cast<double>(n_subsamples);
  return frequencies;
}

std::vector<Index> threshold_select(const std::vector<double>& frequencies,
                                    double threshold) {
  std::vector<Index> selected;
  for (std::size_t j = 0; j < frequencies.size(); ++j) {
    if (frequencies[j] >= threshold) selected.push_back(static_cast<Index>(j));
  }
  return selected;
}

SelectionResult stability_select(const Vector& y, const Matrix& z,
                                 const StabilityConfig& config, Index screen_n_max) {
  config.validate();
  std::vector<double> frequencies = selection_frequencies(
      y, z, config.n_subsamples, config.subsample_fraction, config.seed, screen_n_max);
  std::vector<Index> selected = threshold_select(frequencies, config.threshold);
  if (selected.empty()) {
    throw EmptySelection("no column reaches selection frequency " +
                         std::to_string(config.threshold));
  }
  return SelectionResult{std::move(frequencies), std::move(selected)};
}

}  // namespace herit
