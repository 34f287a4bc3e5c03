#include "herit/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "herit/rng.hpp"
#include "herit/simulate.hpp"

namespace herit {

std::vector<double> DecideOptions::default_threshold_grid() {
  std::vector<double> grid;
  for (int k = 0; k < 16; ++k) grid.push_back(0.70 + 0.01 * k);
  return grid;
}

double overlap_count(const std::vector<ThresholdCell>& cells) {
  std::vector<const ThresholdCell*> with_ci;
  for (const auto& c : cells) {
    if (c.ok) with_ci.push_back(&c);
  }
  if (with_ci.size() < 2) return 0.0;
  double total = 0.0;
  for (const auto* a : with_ci) {
    for (const auto* b : with_ci) {
      if (a->ci_low <= b->ci_high && b->ci_low <= a->ci_high) total += 1.0;
    }
  }
  return total / static_cast<double>(with_ci.size());
}

namespace {

Matrix select_columns(const Matrix& z, const std::vector<Index>& columns) {
  Matrix out(z.rows(), static_cast<Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) {
    out.col(static_cast<Index>(k)) = z.col(columns[k]);
  }
  return out;
}

void check_thresholds(const std::vector<double>& thresholds) {
  if (thresholds.empty()) throw InvalidConfig("threshold grid is empty");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] > 0.0 && thresholds[i] < 1.0)) {
      throw InvalidConfig("thresholds must lie in (0,1)");
    }
    if (i > 0 && thresholds[i] <= thresholds[i - 1]) {
      throw InvalidConfig("thresholds must be strictly increasing");
    }
  }
}

}  // namespace

CalibrationResult calibrate_threshold(const Matrix& z,
                                      const std::vector<double>& eta_grid,
                                      const std::vector<double>& q_grid,
                                      const std::vector<double>& thresholds,
                                      const CalibrateOptions& options) {
  if (eta_grid.empty() || q_grid.empty()) throw InvalidConfig("parameter grids are empty");
  if (options.reps < 2) throw InvalidConfig("calibration needs reps >= 2");
  check_thresholds(thresholds);

  const Index n = z.rows();
  CalibrationResult result;

  std::uint64_t cell_counter = 0;
  for (double eta_star : eta_grid) {
    for (double q : q_grid) {
      const double sigma_e2 = solve_sigma_e(z.cols(), q, options.sigma_u2, eta_star);
      TraitParams params{q, options.sigma_u2, sigma_e2};

      // err[t][rep]; a rep contributes to every threshold from one
      // stability-frequency pass.
      std::vector<std::vector<double>> errs(thresholds.size());
      std::vector<std::vector<char>> rep_ok(thresholds.size());
      for (auto& v : errs) v.resize(static_cast<std::size_t>(options.reps), 0.0);
      for (auto& v : rep_ok) v.resize(static_cast<std::size_t>(options.reps), 0);

      for (int rep = 0; rep < options.reps; ++rep) {
        const std::uint64_t cell_seed =
            rng::stream_id(rng::Purpose::CalibrationCell,
                           options.seed + 0x10000ULL * cell_counter +
                               static_cast<std::uint64_t>(rep));
        auto effect_stream = rng::Stream(cell_seed, 1);
        auto [u, support] = simulate_effects(z.cols(), params, effect_stream);
        auto noise_stream = rng::Stream(cell_seed, 2);
        Vector y = simulate_phenotype(z, u, sigma_e2, nullptr, nullptr, noise_stream);
        y.array() -= y.mean();

        std::vector<double> freqs;
        try {
          freqs = selection_frequencies(y, z, options.n_subsamples, 0.5, cell_seed, n);
        } catch (const Error&) {
          continue;  // all thresholds of this rep marked failed
        }
        for (std::size_t t = 0; t < thresholds.size(); ++t) {
          const std::vector<Index> selected = threshold_select(freqs, thresholds[t]);
          if (selected.empty()) continue;
          try {
            const KinshipEigen ke = kinship_eigen(select_columns(z, selected), y);
            const HeritabilityFit fit = fit_heritability(ke, FitMode::Select);
            errs[t][static_cast<std::size_t>(rep)] = std::abs(eta_star - fit.eta_hat);
            rep_ok[t][static_cast<std::size_t>(rep)] = 1;
          } catch (const Error&) {
          }
        }
      }

      for (std::size_t t = 0; t < thresholds.size(); ++t) {
        CalibrationCell cell;
        cell.eta_star = eta_star;
        cell.q = q;
        cell.threshold = thresholds[t];
        int count = 0;
        double sum = 0.0;
        for (int rep = 0; rep < options.reps; ++rep) {
          if (rep_ok[t][static_cast<std::size_t>(rep)]) {
            sum += errs[t][static_cast<std::size_t>(rep)];
            ++count;
          }
        }
        if (count == 0) {
          cell.failed = true;
        } else {
          cell.mean_abs_error = sum / count;
        }
        result.table.push_back(cell);
      }
      ++cell_counter;
    }
  }

  // Best threshold: smallest worst-case mean error over the grid.
  double best_score = std::numeric_limits<double>::infinity();
  double best_threshold = thresholds.front();
  for (double t : thresholds) {
    double worst = 0.0;
    bool any_failed = false;
    for (const auto& cell : result.table) {
      if (cell.threshold != t) continue;
      if (cell.failed) {
        any_failed = true;
        break;
      }
      worst = std::max(worst, cell.mean_abs_error);
    }
    if (any_failed) continue;
    if (worst < best_score) {
      best_score = worst;
      best_threshold = t;
    }
  }
  result.best_threshold = best_threshold;
  return result;
}

DecisionOutput decide(const Vector& y, const Matrix& z, const Matrix* x,
                      const DecideOptions& options) {
  check_thresholds(options.thresholds);
  if (options.cutoff < 0.0) throw InvalidConfig("cutoff must be non-negative");

  auto [yp, zp] = prepare(y, z, x);
  const Index n = zp.rows();

  // Frequencies are threshold-independent: one stability pass feeds the
  // whole sweep.
  const std::vector<double> freqs =
      selection_frequencies(yp, zp, options.n_subsamples, 0.5, options.seed, n);

  DecisionOutput out;
  out.sweep.cells.reserve(options.thresholds.size());
  std::vector<std::optional<std::pair<HeritabilityFit, BootstrapResult>>> fits(
      options.thresholds.size());

  for (std::size_t t = 0; t < options.thresholds.size(); ++t) {
    ThresholdCell cell;
    cell.threshold = options.thresholds[t];
    const std::vector<Index> selected = threshold_select(freqs, cell.threshold);
    cell.n_selected = static_cast<Index>(selected.size());
    if (!selected.empty()) {
      try {
        const KinshipEigen ke = kinship_eigen(select_columns(zp, selected), yp);
        HeritabilityFit fit = fit_heritability(ke, FitMode::Select);
        BootstrapResult boot =
            bootstrap_ci(ke, fit, options.bootstrap_replicates, options.seed);
        cell.ok = true;
        cell.eta_hat = fit.eta_hat;
        cell.ci_low = boot.ci_low;
        cell.ci_high = boot.ci_high;
        fits[t] = std::make_pair(std::move(fit), std::move(boot));
      } catch (const Error&) {
      }
    }
    out.sweep.cells.push_back(cell);
  }

  out.decision.cutoff = options.cutoff;
  out.decision.overlap = overlap_count(out.sweep.cells);
  const bool any_ok =
      std::any_of(out.sweep.cells.begin(), out.sweep.cells.end(),
                  [](const ThresholdCell& c) { return c.ok; });
  out.decision.forced_full = !any_ok;
  out.decision.verdict =
      (any_ok && out.decision.overlap > options.cutoff) ? Mode::Select : Mode::Full;

  if (out.decision.verdict == Mode::Select) {
    // Report the fit at the threshold nearest the calibrated default.
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < options.thresholds.size(); ++t) {
      if (!fits[t]) continue;
      const double dist = std::abs(options.thresholds[t] - options.report_threshold);
      if (dist < best_dist) {
        best_dist = dist;
        best = t;
      }
    }
    out.fit = fits[best]->first;
    out.boot = fits[best]->second;
  } else {
    const KinshipEigen ke = kinship_eigen(zp, yp);
    out.fit = fit_heritability(ke, FitMode::Full);
    out.boot = bootstrap_ci(ke, out.fit, options.bootstrap_replicates, options.seed);
  }
  return out;
}

}  // namespace herit
