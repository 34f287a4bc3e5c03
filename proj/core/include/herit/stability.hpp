#ifndef HERIT_STABILITY_HPP
#define HERIT_STABILITY_HPP

#include <cstdint>
#include <vector>

#include "herit/types.hpp"

namespace herit {

struct StabilityConfig {
  int n_subsamples = 50;
  double subsample_fraction = 0.5;
  double threshold = 0.76;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SelectionResult {
  // frequencies[j]: fraction of subsamples whose smallest-lambda active
  // set contained column j.
  std::vector<double> frequencies;
  std::vector<Index> selected;  // {j : frequencies[j] >= threshold}

  Index n_final() const { return static_cast<Index>(selected.size()); }
};

// Threshold-independent part: screening + lasso path on each random
// half-subsample, frequencies aggregated over subsamples. Per-subsample
// screening keeps at most min(screen_n_max, floor(fraction*n)) columns.
std::vector<double> selection_frequencies(const Vector& y, const Matrix& z,
                                          int n_subsamples, double subsample_fraction,
                                          std::uint64_t seed, Index screen_n_max);

std::vector<Index> threshold_select(const std::vector<double>& frequencies,
                                    double threshold);

// Throws EmptySelection when no column passes the threshold.
SelectionResult stability_select(const Vector& y, const Matrix& z,
                                 const StabilityConfig& config,
                                 Index screen_n_max);

}  // namespace herit

#endif
