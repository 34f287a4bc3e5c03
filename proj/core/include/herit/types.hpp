#ifndef HERIT_TYPES_HPP
#define HERIT_TYPES_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "herit/errors.hpp"

namespace herit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using GenotypeValues = Eigen::Matrix<std::int8_t, Eigen::Dynamic, Eigen::Dynamic>;

// Raw allele counts, n individuals x N SNPs, entries in {0,1,2}.
class GenotypeMatrix {
 public:
  // Validates every entry; throws InvalidConfig on out-of-range values
  // or degenerate shape (n < 2 or N < 1).
  explicit GenotypeMatrix(GenotypeValues values);

  Index n() const { return values_.rows(); }
  Index snp_count() const { return values_.cols(); }
  const GenotypeValues& values() const { return values_; }

 private:
  GenotypeValues values_;
};

// Column-centered, column-normalized version of a genotype matrix.
// Normalization divides by the population sd (1/n), so each column has
// sum of squares exactly n; constant source columns are dropped.
struct StandardizedMatrix {
  Matrix values;
  // Column j of `values` came from source column source_column_index[j].
  std::vector<Index> source_column_index;

  Index n() const { return values.rows(); }
  Index snp_count() const { return values.cols(); }
};

struct FixedEffects {
  Matrix X;  // n x p, rank d <= p < n
};

// Generative trait parameters: each of the N effects is zero with
// probability 1-q, Gaussian(0, sigma_u2) otherwise; noise is
// Gaussian(0, sigma_e2).
struct TraitParams {
  double q = 1.0;
  double sigma_u2 = 1.0;
  double sigma_e2 = 1.0;

  void validate() const;
};

StandardizedMatrix standardize(const GenotypeMatrix& w);

// Center/normalize real columns in place; returns indices of retained
// (non-constant) columns. Shared kernel behind standardize(), exposed
// for idempotence checks on real-valued input.
std::vector<Index> standardize_columns(Matrix& m);

// N q sigma_u2 / (N q sigma_u2 + sigma_e2).
double implied_heritability(const TraitParams& params, Index n_snps);

}  // namespace herit

#endif
