#ifndef HERIT_SCREENING_HPP
#define HERIT_SCREENING_HPP

#include <vector>

#include "herit/types.hpp"

namespace herit {

struct ScreenResult {
  // Column indices ranked by descending score, ties by ascending index.
  std::vector<Index> kept;
  Vector scores;  // score of kept[i], same order
};

// Sure independence screening: keep the min(n_max, N) columns with the
// largest |Z_j' Y|.
ScreenResult sis_screen(const Vector& y, const Matrix& z, Index n_max);

}  // namespace herit

#endif
