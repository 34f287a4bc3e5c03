#ifndef HERIT_CALIBRATE_HPP
#define HERIT_CALIBRATE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "herit/bootstrap.hpp"
#include "herit/pipeline.hpp"
#include "herit/types.hpp"

namespace herit {

struct ThresholdCell {
  double threshold = 0.0;
  bool ok = false;  // false when selection was empty or the fit failed
  double eta_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  Index n_selected = 0;

  bool operator==(const ThresholdCell&) const = default;
};

struct ThresholdSweep {
  std::vector<ThresholdCell> cells;  // thresholds strictly increasing
};

struct Decision {
  Mode verdict = Mode::Full;
  double overlap = 0.0;
  double cutoff = 10.0;
  bool forced_full = false;  // every threshold yielded an empty selection
};

struct DecisionOutput {
  Decision decision;
  ThresholdSweep sweep;
  HeritabilityFit fit;
  BootstrapResult boot;
};

struct CalibrationCell {
  double eta_star = 0.0;
  double q = 0.0;
  double threshold = 0.0;
  double mean_abs_error = 0.0;
  bool failed = false;
};

struct CalibrationResult {
  double best_threshold = 0.0;
  std::vector<CalibrationCell> table;
};

struct CalibrateOptions {
  int reps = 10;
  double sigma_u2 = 1.0;
  int n_subsamples = 50;
  int bootstrap_replicates = 0;  // CIs not needed for the error table
  std::uint64_t seed = 0;
};

struct DecideOptions {
  std::vector<double> thresholds = default_threshold_grid();
  double cutoff = 10.0;
  double report_threshold = 0.76;  // cell returned on a Select verdict
  int n_subsamples = 50;
  int bootstrap_replicates = 80;
  std::uint64_t seed = 0;

  static std::vector<double> default_threshold_grid();  // 0.70:0.01:0.85
};

// Mean over thresholds t of the number of thresholds t' (including t)
// whose interval intersects t's. Cells with ok == false are excluded;
// returns 0 when fewer than two cells carry an interval.
double overlap_count(const std::vector<ThresholdCell>& cells);

// Simulate `reps` phenotypes per (eta*, q) on the given standardized
// matrix, run the selection pipeline at every threshold, and record the
// mean |eta* - eta_hat|. The best threshold minimizes the worst mean
// error over the (eta*, q) grid.
CalibrationResult calibrate_threshold(const Matrix& z,
                                      const std::vector<double>& eta_grid,
                                      const std::vector<double>& q_grid,
                                      const std::vector<double>& thresholds,
                                      const CalibrateOptions& options);

// One stability-frequency pass, one fit + CI per threshold, overlap
// criterion; verdict Select above the cutoff, Full otherwise (Full fit
// computed on all of z).
DecisionOutput decide(const Vector& y, const Matrix& z, const Matrix* x,
                      const DecideOptions& options);

}  // namespace herit

#endif
