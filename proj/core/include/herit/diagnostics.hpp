#ifndef HERIT_DIAGNOSTICS_HPP
#define HERIT_DIAGNOSTICS_HPP

#include <array>
#include <vector>

#include "herit/types.hpp"

namespace herit {

struct RecoveryReport {
  Index selected_size = 0;
  Index true_support_size = 0;
  double capture_fraction = 0.0;  // |selected ∩ true| / |true|
  // Capture per decile of the true support ranked by |u| descending;
  // decile_capture[0] covers the strongest tenth.
  std::array<double, 10> decile_capture{};
  std::array<Index, 10> decile_size{};

  bool operator==(const RecoveryReport&) const = default;
};

RecoveryReport recovery_metrics(const std::vector<Index>& selected,
                                const Vector& u_true);

}  // namespace herit

#endif
