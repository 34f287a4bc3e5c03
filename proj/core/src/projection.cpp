#include "herit/projection.hpp"

#include <Eigen/QR>

namespace herit {

Projector build_projector(const Matrix& x) {
  const Index n = x.rows();
  if (n < 2) throw DimensionMismatch("projector needs at least two rows");
  if (x.cols() == 0) {
    return Projector{Matrix::Identity(n, n), 0};
  }
  if (!x.allFinite()) throw InvalidConfig("fixed-effect matrix has non-finite entries");

  // Rank-revealing QR: with column pivoting, the first d Householder
  // columns of Q span Im(X); the trailing n-d columns span its
  // orthogonal complement.
  Eigen::ColPivHouseholderQR<Matrix> qr(x);
  const double sigma_max = std::abs(qr.matrixR()(0, 0));
  const double tol = static_cast<double>(n) *
                     std::numeric_limits<double>::epsilon() * sigma_max;
  Index rank = 0;
  const Index k = std::min(x.rows(), x.cols());
  for (Index i = 0; i < k; ++i) {
    if (std::abs(qr.matrixR()(i, i)) > tol) ++rank;
  }
  if (rank >= n) throw DegenerateDesign("fixed effects span the whole sample space");

  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return Projector{q.rightCols(n - rank), rank};
}

std::pair<Vector, Matrix> project(const Projector& p, const Vector& y,
                                  const Matrix& z) {
  if (y.size() != p.n() || z.rows() != p.n()) {
    throw DimensionMismatch("projector row dimension mismatch");
  }
  return {p.basis.transpose() * y, p.basis.transpose() * z};
}

}  // namespace herit
