#ifndef HERIT_PROJECTION_HPP
#define HERIT_PROJECTION_HPP

#include <utility>

#include "herit/types.hpp"

namespace herit {

// Orthonormal basis of Im(X)^perp: basis is n x (n-d) with
// basis' * basis = I and basis * basis' = I - X (X'X)^- X'.
struct Projector {
  Matrix basis;
  Index rank = 0;  // numerical rank d of X

  Index n() const { return basis.rows(); }
};

Projector build_projector(const Matrix& x);

// (A'Y, A'Z): fixed effects are annihilated, effective sample size n-d.
std::pair<Vector, Matrix> project(const Projector& p, const Vector& y,
                                  const Matrix& z);

}  // namespace herit

#endif
