#ifndef HERIT_TESTS_TEST_UTIL_HPP
#define HERIT_TESTS_TEST_UTIL_HPP

#include <algorithm>
#include <vector>

#include "herit/rng.hpp"
#include "herit/types.hpp"

namespace herit::testutil {

// Small deterministic random matrix / vector helpers for property tests.
inline Matrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
  auto stream = rng::substream(seed, rng::Purpose::Generic, 0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = stream.normal();
  }
  return m;
}

inline Vector random_vector(Index n, std::uint64_t seed) {
  auto stream = rng::substream(seed, rng::Purpose::Generic, 1);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = stream.normal();
  return v;
}

inline GenotypeMatrix random_genotypes(Index n, Index n_snps, std::uint64_t seed) {
  auto stream = rng::substream(seed, rng::Purpose::Generic, 2);
  GenotypeValues v(n, n_snps);
  for (Index j = 0; j < n_snps; ++j) {
    for (Index i = 0; i < n; ++i) {
      v(i, j) = static_cast<std::int8_t>(stream.below(3));
    }
  }
  return GenotypeMatrix(std::move(v));
}

inline Matrix columns_of(const Matrix& z, const std::vector<Index>& cols) {
  Matrix out(z.rows(), static_cast<Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    out.col(static_cast<Index>(k)) = z.col(cols[k]);
  }
  return out;
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace herit::testutil

#endif
