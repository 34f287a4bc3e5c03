#ifndef HERIT_PIPELINE_HPP
#define HERIT_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "herit/bootstrap.hpp"
#include "herit/mle.hpp"
#include "herit/stability.hpp"

namespace herit {

enum class Mode { Select, Full, Oracle };

struct PipelineConfig {
  Mode mode = Mode::Select;
  StabilityConfig stability;
  // Screening cap for the whole-sample stage; defaults to n when unset.
  std::optional<Index> screen_n_max;
  int bootstrap_replicates = 80;
  std::uint64_t seed = 0;
  // Required in Oracle mode: column indices of the true support.
  std::vector<Index> oracle_support;

  void validate() const;
};

struct PipelineResult {
  HeritabilityFit fit;
  BootstrapResult boot;
  std::optional<SelectionResult> selection;  // Select mode only
};

// Project out fixed effects when x is given (Y centered otherwise), then
// fit per mode: Select = stability selection then MLE on the selected
// columns; Full = MLE on all columns; Oracle = MLE on oracle_support.
PipelineResult run(const Vector& y, const Matrix& z, const Matrix* x,
                   const PipelineConfig& config);

// Shared preprocessing: (y, z) after projection or centering.
std::pair<Vector, Matrix> prepare(const Vector& y, const Matrix& z,
                                  const Matrix* x);

}  // namespace herit

#endif
