#include "herit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "herit/errors.hpp"

namespace herit {

RecoveryReport recovery_metrics(const std::vector<Index>& selected,
                                const Vector& u_true) {
  std::vector<Index> support;
  for (Index i = 0; i < u_true.size(); ++i) {
    if (u_true(i) != 0.0) support.push_back(i);
  }
  if (support.empty()) throw EmptyTrueSupport();

  // Rank by |u| descending, ties by index.
  std::sort(support.begin(), support.end(), [&](Index a, Index b) {
    const double ma = std::abs(u_true(a));
    const double mb = std::abs(u_true(b));
    if (ma != mb) return ma > mb;
    return a < b;
  });

  const std::unordered_set<Index> picked(selected.begin(), selected.end());
  RecoveryReport report;
  report.selected_size = static_cast<Index>(selected.size());
  report.true_support_size = static_cast<Index>(support.size());

  const std::size_t s = support.size();
  std::size_t captured_total = 0;
  for (int d = 0; d < 10; ++d) {
    const std::size_t lo = s * static_cast<std::size_t>(d) / 10;
    const std::size_t hi = s * static_cast<std::size_t>(d + 1) / 10;
    std::size_t captured = 0;
    for (std::size_t k = lo; k < hi; ++k) {
      if (picked.count(support[k])) ++captured;
    }
    captured_total += captured;
    report.decile_size[static_cast<std::size_t>(d)] = static_cast<Index>(hi - lo);
    report.decile_capture[static_cast<std::size_t>(d)] =
        hi > lo ? static_cast<double>(captured) / static_cast<double>(hi - lo) : 0.0;
  }
  report.capture_fraction = static_cast<double>(captured_total) / static_cast<double>(s);
  return report;
}

}  // namespace herit
