#include "herit/screening.hpp"

#include <algorithm>
#include <numeric>

namespace herit {

ScreenResult sis_screen(const Vector& y, const Matrix& z, Index n_max) {
  if (y.size() != z.rows()) throw DimensionMismatch("phenotype length != rows of Z");
  if (n_max < 1) throw DimensionMismatch("n_max must be positive");
  const Index n_cols = z.cols();
  const Index keep = std::min(n_max, n_cols);

  const Vector scores = (z.transpose() * y).cwiseAbs();

  std::vector<Index> order(static_cast<std::size_t>(n_cols));
  std::iota(order.begin(), order.end(), Index{0});
  const auto better = [&](Index a, Index b) {
    if (scores(a) != scores(b)) return scores(a) > scores(b);
    return a < b;  // deterministic tie-break
  };
  std::nth_element(order.begin(), order.begin() + keep - 1, order.end(), better);
  order.resize(static_cast<std::size_t>(keep));
  std::sort(order.begin(), order.end(), better);

  Vector kept_scores(keep);
  for (Index i = 0; i < keep; ++i) kept_scores(i) = scores(order[static_cast<std::size_t>(i)]);
  return ScreenResult{std::move(order), std::move(kept_scores)};
}

}  // namespace herit
