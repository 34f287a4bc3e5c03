#include "herit/lasso.hpp"

#include <algorithm>
#include <cmath>

namespace herit {

namespace {

inline double soft_threshold(double x, double level) {
  if (x > level) return x - level;
  if (x < -level) return x + level;
  return 0.0;
}

double objective_value(const Vector& residual, const Vector& u, double lambda) {
  return residual.squaredNorm() + lambda * u.lpNorm<1>();
}

std::vector<Index> nonzero_indices(const Vector& u) {
  std::vector<Index> out;
  for (Index j = 0; j < u.size(); ++j) {
    if (u(j) != 0.0) out.push_back(j);
  }
  return out;
}

// One cyclic sweep over the given index list; returns the largest
// |delta u_j| * ||Z_j|| seen (scale-aware change measure).
double sweep(const Vector& /*y*/, const Matrix& z, const Vector& col_sq,
             double lambda, Vector& u, Vector& residual,
             const std::vector<Index>& indices) {
  double max_change = 0.0;
  for (Index j : indices) {
    const double sq = col_sq(j);
    if (sq == 0.0) continue;
    const double old = u(j);
    // Z_j' (residual + Z_j * old) = correlation with the partial residual.
    const double rho = z.col(j).dot(residual) + old * sq;
    const double next = soft_threshold(rho, lambda / 2.0) / sq;
    if (next != old) {
      residual.noalias() -= z.col(j) * (next - old);
      u(j) = next;
      max_change = std::max(max_change, std::abs(next - old) * std::sqrt(sq));
    }
  }
  return max_change;
}

bool kkt_from_grad(const Vector& grad, const Vector& u, double lambda,
                   double slack) {
  for (Index j = 0; j < u.size(); ++j) {
    if (u(j) == 0.0) {
      if (std::abs(grad(j)) > lambda + slack) return false;
    } else if (std::abs(grad(j) - lambda * (u(j) > 0 ? 1.0 : -1.0)) > slack) {
      return false;
    }
  }
  return true;
}

bool kkt_satisfied(const Matrix& z, const Vector& u, const Vector& residual,
                   double lambda, double slack) {
  const Vector grad = 2.0 * (z.transpose() * residual);
  return kkt_from_grad(grad, u, lambda, slack);
}

// Cached Gram/Cholesky state shared by a path's warm-started solves.
struct Workspace {
  Matrix gram;   // Z'Z, filled on first refinement attempt
  Vector zty;    // Z'Y
  bool has_gram = false;
  std::vector<Index> factored_active;
  Eigen::LDLT<Matrix> factor;
};

constexpr Index kGramCap = 4096;  // skip refinement for very wide problems

// Once coordinate descent has roughly located the active set, finish
// with an exact active-set solve: on set A with signs s, the lasso
// minimizer solves Z_A'Z_A u_A = Z_A'Y - (lambda/2) s_A. Coordinates
// whose solved sign flips are dropped, the worst KKT violator outside A
// is added, and the system is re-solved; accept only when the full KKT
// conditions verify. The CD iterate is left untouched on failure.
bool refine(const Vector& y, const Matrix& z, double lambda, double slack,
            Workspace& ws, Vector& u, Vector& residual) {
  const Index p = z.cols();
  if (p > kGramCap) return false;
  std::vector<Index> active = nonzero_indices(u);
  if (active.empty()) return false;
  if (!ws.has_gram) {
    ws.gram.noalias() = z.transpose() * z;
    ws.zty.noalias() = z.transpose() * y;
    ws.has_gram = true;
  }
  std::vector<double> signs(active.size());
  for (std::size_t k = 0; k < active.size(); ++k) {
    signs[k] = u(active[k]) > 0 ? 1.0 : -1.0;
  }

  Vector v;
  for (int round = 0; round < 50 && !active.empty(); ++round) {
    const auto a = static_cast<Index>(active.size());
    if (active != ws.factored_active) {
      Matrix gram_aa(a, a);
      for (Index r = 0; r < a; ++r) {
        for (Index c = 0; c < a; ++c) {
          gram_aa(r, c) = ws.gram(active[static_cast<std::size_t>(r)],
                                  active[static_cast<std::size_t>(c)]);
        }
      }
      ws.factor.compute(gram_aa);
      if (ws.factor.info() != Eigen::Success) {
        ws.factored_active.clear();
        return false;
      }
      ws.factored_active = active;
    }
    Vector rhs(a);
    for (Index k = 0; k < a; ++k) {
      rhs(k) = ws.zty(active[static_cast<std::size_t>(k)]) -
               0.5 * lambda * signs[static_cast<std::size_t>(k)];
    }
    v = ws.factor.solve(rhs);

    bool dropped = false;
    std::vector<Index> next_active;
    std::vector<double> next_signs;
    for (Index k = 0; k < a; ++k) {
      if (v(k) == 0.0 || (v(k) > 0) != (signs[static_cast<std::size_t>(k)] > 0)) {
        dropped = true;
      } else {
        next_active.push_back(active[static_cast<std::size_t>(k)]);
        next_signs.push_back(signs[static_cast<std::size_t>(k)]);
      }
    }
    if (dropped) {
      active = std::move(next_active);
      signs = std::move(next_signs);
      continue;
    }

    // KKT on all coordinates via the Gram: grad = 2 (Z'Y - Z'Z u).
    Vector grad = ws.zty;
    for (Index k = 0; k < a; ++k) {
      grad.noalias() -= ws.gram.col(active[static_cast<std::size_t>(k)]) * v(k);
    }
    grad *= 2.0;
    Index worst = -1;
    double worst_excess = 0.0;
    std::size_t pos = 0;
    for (Index j = 0; j < p; ++j) {
      if (pos < active.size() && active[pos] == j) {
        ++pos;
        continue;
      }
      const double excess = std::abs(grad(j)) - lambda;
      if (excess > slack && excess > worst_excess) {
        worst_excess = excess;
        worst = j;
      }
    }
    if (worst >= 0) {
      // Insert keeping the index list sorted (nonzero_indices order).
      const auto it = std::lower_bound(active.begin(), active.end(), worst);
      signs.insert(signs.begin() + (it - active.begin()), grad(worst) > 0 ? 1.0 : -1.0);
      active.insert(it, worst);
      continue;
    }

    Vector candidate = Vector::Zero(p);
    for (Index k = 0; k < a; ++k) candidate(active[static_cast<std::size_t>(k)]) = v(k);
    Vector cand_residual = y;
    for (Index k = 0; k < a; ++k) {
      cand_residual.noalias() -= z.col(active[static_cast<std::size_t>(k)]) * v(k);
    }
    if (!kkt_satisfied(z, candidate, cand_residual, lambda, slack)) return false;
    u = std::move(candidate);
    residual = std::move(cand_residual);
    return true;
  }
  return false;
}

}  // namespace

double lasso_lambda_max(const Vector& y, const Matrix& z) {
  if (y.size() != z.rows()) throw DimensionMismatch("phenotype length != rows of Z");
  return 2.0 * (z.transpose() * y).cwiseAbs().maxCoeff();
}

namespace {

LassoFit solve_impl(const Vector& y, const Matrix& z, double lambda,
                    const Vector* init, double tol, int max_iter,
                    std::vector<double>* sweep_objectives, Workspace& ws) {
  if (y.size() != z.rows()) throw DimensionMismatch("phenotype length != rows of Z");
  if (lambda < 0.0) throw InvalidConfig("lambda must be non-negative");
  const Index p = z.cols();

  Vector u = init && init->size() == p ? *init : Vector::Zero(p);
  Vector residual = y - z * u;
  const Vector col_sq = z.colwise().squaredNorm();
  const double lmax = lasso_lambda_max(y, z);
  const double slack = tol * std::max(lmax, 1e-300);

  std::vector<Index> all(static_cast<std::size_t>(p));
  for (Index j = 0; j < p; ++j) all[static_cast<std::size_t>(j)] = j;

  int sweeps = 0;
  bool converged = false;
  while (sweeps < max_iter) {
    sweep(y, z, col_sq, lambda, u, residual, all);
    ++sweeps;
    if (sweep_objectives) sweep_objectives->push_back(objective_value(residual, u, lambda));

    // A few active-set sweeps to settle the sign pattern.
    std::vector<Index> active = nonzero_indices(u);
    int inner = 0;
    while (sweeps < max_iter && inner < 5 && !active.empty()) {
      const double ac = sweep(y, z, col_sq, lambda, u, residual, active);
      ++sweeps;
      ++inner;
      if (sweep_objectives) sweep_objectives->push_back(objective_value(residual, u, lambda));
      if (ac <= slack) break;
    }
    if (kkt_satisfied(z, u, residual, lambda, slack)) {
      converged = true;
      break;
    }
    if (refine(y, z, lambda, slack, ws, u, residual)) {
      if (sweep_objectives) sweep_objectives->push_back(objective_value(residual, u, lambda));
      converged = true;
      break;
    }
  }

  LassoFit fit{lambda, u, nonzero_indices(u), objective_value(residual, u, lambda),
               sweeps, converged};
  if (!converged) throw NonConvergence(std::move(fit));
  return fit;
}

}  // namespace

LassoFit lasso_solve(const Vector& y, const Matrix& z, double lambda,
                     const Vector* init, double tol, int max_iter,
                     std::vector<double>* sweep_objectives) {
  Workspace ws;
  return solve_impl(y, z, lambda, init, tol, max_iter, sweep_objectives, ws);
}

LassoPath lasso_path(const Vector& y, const Matrix& z, int n_lambdas,
                     double lambda_min_ratio, double tol, int max_iter) {
  if (n_lambdas < 2) throw InvalidConfig("path needs at least two lambdas");
  if (!(lambda_min_ratio > 0.0 && lambda_min_ratio < 1.0)) {
    throw InvalidConfig("lambda_min_ratio must lie in (0,1)");
  }
  const double lmax = lasso_lambda_max(y, z);

  LassoPath path;
  path.lambdas.resize(static_cast<std::size_t>(n_lambdas));
  const double log_lmax = std::log(lmax);
  const double log_lmin = std::log(lmax * lambda_min_ratio);
  for (int k = 0; k < n_lambdas; ++k) {
    const double t = static_cast<double>(k) / (n_lambdas - 1);
    path.lambdas[static_cast<std::size_t>(k)] =
        std::exp(log_lmax + t * (log_lmin - log_lmax));
  }

  path.fits.reserve(path.lambdas.size());
  Workspace ws;  // Gram and factorization shared across the warm-started path
  const Vector* warm = nullptr;
  for (double lambda : path.lambdas) {
    path.fits.push_back(solve_impl(y, z, lambda, warm, tol, max_iter, nullptr, ws));
    warm = &path.fits.back().coefficients;
  }
  return path;
}

}  // namespace herit
