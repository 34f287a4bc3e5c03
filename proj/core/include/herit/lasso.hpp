#ifndef HERIT_LASSO_HPP
#define HERIT_LASSO_HPP

#include <vector>

#include "herit/errors.hpp"
#include "herit/types.hpp"

namespace herit {

// Minimizer of ||Y - Z u||_2^2 + lambda ||u||_1 (note: un-halved RSS,
// so the soft-threshold level is lambda/2).
struct LassoFit {
  double lambda = 0.0;
  Vector coefficients;
  std::vector<Index> active_set;  // indices with non-zero coefficient
  double objective = 0.0;
  int iterations = 0;  // coordinate-descent sweeps
  bool converged = true;
};

struct NonConvergence : Error {
  LassoFit best;
  explicit NonConvergence(LassoFit fit)
      : Error("coordinate descent did not converge"), best(std::move(fit)) {}
};

struct LassoPath {
  std::vector<double> lambdas;  // strictly decreasing, lambdas[0] = lambda_max
  std::vector<LassoFit> fits;
};

// Smallest lambda with an empty active set: 2 max_j |Z_j' Y|.
double lasso_lambda_max(const Vector& y, const Matrix& z);

LassoFit lasso_solve(const Vector& y, const Matrix& z, double lambda,
                     const Vector* init = nullptr, double tol = 1e-7,
                     int max_iter = 10000,
                     std::vector<double>* sweep_objectives = nullptr);

// Log-spaced grid from lambda_max down to lambda_max * lambda_min_ratio,
// warm-started.
LassoPath lasso_path(const Vector& y, const Matrix& z, int n_lambdas = 100,
                     double lambda_min_ratio = 1e-3, double tol = 1e-7,
                     int max_iter = 10000);

}  // namespace herit

#endif
