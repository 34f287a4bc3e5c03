#include "herit/types.hpp"

#include <cmath>

#include "herit/parallel.hpp"

namespace herit {

GenotypeMatrix::GenotypeMatrix(GenotypeValues values) : values_(std::move(values)) {
  if (values_.rows() < 2 || values_.cols() < 1) {
    throw InvalidConfig("genotype matrix needs n >= 2 individuals and N >= 1 SNPs");
  }
  for (Index j = 0; j < values_.cols(); ++j) {
    for (Index i = 0; i < values_.rows(); ++i) {
      const int v = values_(i, j);
      if (v < 0 || v > 2) {
        throw InvalidConfig("genotype entry outside {0,1,2} at row " +
                            std::to_string(i) + ", column " + std::to_string(j));
      }
    }
  }
}

std::vector<Index> standardize_columns(Matrix& m) {
  const Index n = m.rows();
  std::vector<Index> kept;
  kept.reserve(static_cast<std::size_t>(m.cols()));
  std::vector<char> keep(static_cast<std::size_t>(m.cols()), 0);

  parallel_for(static_cast<std::size_t>(m.cols()), [&](std::size_t sj) {
    const Index j = static_cast<Index>(sj);
    auto col = m.col(j);
    const double mean = col.mean();
    col.array() -= mean;
    // Population sd (divide by n), so the column sum of squares is n.
    const double sd = std::sqrt(col.squaredNorm() / static_cast<double>(n));
    if (sd > 0.0) {
      col /= sd;
      keep[sj] = 1;
    }
  });

  Index out = 0;
  for (Index j = 0; j < m.cols(); ++j) {
    if (!keep[static_cast<std::size_t>(j)]) continue;
    if (out != j) m.col(out) = m.col(j);
    kept.push_back(j);
    ++out;
  }
  m.conservativeResize(Eigen::NoChange, out);
  return kept;
}

StandardizedMatrix standardize(const GenotypeMatrix& w) {
  Matrix values = w.values().cast<double>();
  std::vector<Index> kept = standardize_columns(values);
  if (kept.empty()) throw AllColumnsConstant();
  return StandardizedMatrix{std::move(values), std::move(kept)};
}

void TraitParams::validate() const {
  if (!(q > 0.0 && q <= 1.0)) throw InvalidConfig("q must lie in (0,1]");
  if (!(sigma_u2 > 0.0)) throw InvalidConfig("sigma_u2 must be positive");
  if (!(sigma_e2 >= 0.0)) throw InvalidConfig("sigma_e2 must be non-negative");
}

double implied_heritability(const TraitParams& params, Index n_snps) {
  params.validate();
  const double genetic = static_cast<double>(n_snps) * params.q * params.sigma_u2;
  return genetic / (genetic + params.sigma_e2);
}

}  // namespace herit
