#ifndef HERIT_REPORT_HPP
#define HERIT_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "herit/calibrate.hpp"
#include "herit/diagnostics.hpp"
#include "herit/pipeline.hpp"
#include "herit/simulate.hpp"

namespace herit {

// Machine-readable estimation report. Serialized as JSON with stable key
// order; emit/parse round-trips losslessly. Stage timings are printed to
// stdout only so reports stay byte-identical across reruns and worker
// counts.
struct RunReport {
  // config echo
  std::string mode;
  double threshold = 0.0;
  int n_subsamples = 0;
  int bootstrap_replicates = 0;
  std::uint64_t seed = 0;
  Index n = 0;
  Index n_snps = 0;

  // results
  double eta_hat = 0.0;
  double sigma2_hat = 0.0;
  double se = 0.0;
  bool se_reliable = true;
  bool boundary = false;
  bool unidentifiable = false;
  double ci_low = 0.0;
  double ci_high = 0.0;
  Index n_final = 0;
  std::vector<std::string> selected_ids;
  std::vector<double> selected_frequencies;
  std::optional<RecoveryReport> recovery;

  bool operator==(const RunReport&) const = default;
};

std::string emit_report(const RunReport& report);
RunReport parse_report(const std::string& text);

struct DecisionReport {
  std::string verdict;  // "select" or "full"
  double overlap = 0.0;
  double cutoff = 0.0;
  bool forced_full = false;
  std::uint64_t seed = 0;
  std::vector<ThresholdCell> cells;
  RunReport chosen;

  bool operator==(const DecisionReport&) const = default;
};

std::string emit_decision_report(const DecisionReport& report);
DecisionReport parse_decision_report(const std::string& text);

// Simulation truth manifest (eta*, support, sigma_e2, seed, ...).
struct TruthManifest {
  Index n = 0;
  Index n_snps = 0;
  double q = 0.0;
  double sigma_u2 = 0.0;
  double sigma_e2 = 0.0;
  double eta_star = 0.0;
  std::uint64_t seed = 0;
  std::vector<Index> support;
  std::vector<double> effects;  // non-zero effects, aligned with support

  bool operator==(const TruthManifest&) const = default;
};

std::string emit_truth(const TruthManifest& manifest);
TruthManifest parse_truth(const std::string& text);

// SimConfig <-> JSON config file used by the simulate command.
std::string emit_sim_config(const SimConfig& config);
SimConfig parse_sim_config(const std::string& text);

// Calibration error table as CSV (eta_star,q,threshold,mean_abs_error,failed).
std::string calibration_table_csv(const CalibrationResult& result);

std::string mode_name(Mode mode);
Mode mode_from_name(const std::string& name);

}  // namespace herit

#endif
