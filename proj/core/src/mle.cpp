#include "herit/mle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "herit/errors.hpp"

namespace herit {

namespace {

constexpr double kEtaUpper = 1.0 - 1e-9;
constexpr double kEigenClamp = 1e-10;

// L_n without the denominator guard; callers keep eta in [0, kEtaUpper].
double profile_unchecked(double eta, const Vector& lambdas, const Vector& yt) {
  const Index n = lambdas.size();
  double weighted = 0.0;
  double logdet = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double a = eta * (lambdas(i) - 1.0) + 1.0;
    weighted += yt(i) * yt(i) / a;
    logdet += std::log(a);
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  return -std::log(weighted * inv_n) - logdet * inv_n;
}

// Golden-section maximization on [lo, hi].
double golden_max(double lo, double hi, const Vector& lambdas, const Vector& yt) {
  constexpr double phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = profile_unchecked(x1, lambdas, yt);
  double f2 = profile_unchecked(x2, lambdas, yt);
  while (b - a > 1e-12) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = profile_unchecked(x2, lambdas, yt);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = profile_unchecked(x1, lambdas, yt);
    }
  }
  return 0.5 * (a + b);
}

// d/d_eta of profile_unchecked. Evaluated as a ratio of quadratic forms,
// so it is exactly invariant to rescaling yt (unlike the log-likelihood
// values themselves, whose rounding shifts the golden-section argmax by
// ~sqrt(eps)).
double profile_deriv(double eta, const Vector& lambdas, const Vector& yt) {
  const Index n = lambdas.size();
  double s = 0.0, sd = 0.0, t = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double b = lambdas(i) - 1.0;
    const double d = eta * b + 1.0;
    const double w = yt(i) * yt(i) / d;
    s += w;
    sd += w * b / d;
    t += b / d;
  }
  return sd / s - t / static_cast<double>(n);
}

double profile_sigma2(double eta, const Vector& lambdas, const Vector& yt) {
  const Index n = lambdas.size();
  double s = 0.0;
  for (Index i = 0; i < n; ++i) {
    s += yt(i) * yt(i) / (eta * (lambdas(i) - 1.0) + 1.0);
  }
  return s / static_cast<double>(n);
}

}  // namespace

KinshipEigen kinship_eigen(const Matrix& z_sel, const Vector& y) {
  if (z_sel.rows() != y.size()) throw DimensionMismatch("rows of Z_sel != phenotype length");
  if (z_sel.cols() < 1) throw DimensionMismatch("kinship needs at least one column");
  const Index n = z_sel.rows();
  const double n_sel = static_cast<double>(z_sel.cols());

  Matrix r = (z_sel * z_sel.transpose()) / n_sel;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(r);
  Vector lambdas = solver.eigenvalues();
  for (Index i = 0; i < n; ++i) {
    if (lambdas(i) < kEigenClamp) lambdas(i) = 0.0;
  }
  Vector rotated = solver.eigenvectors().transpose() * y;
  return KinshipEigen{std::move(lambdas), std::move(rotated), z_sel.cols()};
}

double profile_loglik(double eta, const KinshipEigen& ke) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidConfig("eta must lie in [0,1]");
  for (Index i = 0; i < ke.lambdas.size(); ++i) {
    if (eta * (ke.lambdas(i) - 1.0) + 1.0 <= 1e-12) {
      throw DegenerateLikelihood("likelihood denominator collapsed at eta=" +
                                 std::to_string(eta));
    }
  }
  return profile_unchecked(eta, ke.lambdas, ke.rotated);
}

double full_gaussian_loglik(double eta, double sigma2, const KinshipEigen& ke) {
  const Index n = ke.lambdas.size();
  double ll = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double v = sigma2 * (eta * (ke.lambdas(i) - 1.0) + 1.0);
    if (v <= 0.0) throw DegenerateLikelihood("non-positive variance in Gaussian fit");
    ll += -0.5 * (std::log(2.0 * std::numbers::pi * v) +
                  ke.rotated(i) * ke.rotated(i) / v);
  }
  return ll;
}

HeritabilityFit fit_heritability(const KinshipEigen& ke, FitMode mode) {
  const Vector& lambdas = ke.lambdas;
  const Vector& yt = ke.rotated;
  const Index n = lambdas.size();
  if (n < 2) throw DegenerateLikelihood("need at least two observations");

  HeritabilityFit fit;
  fit.mode = mode;
  fit.lambdas_used = lambdas;

  const double spread = lambdas.maxCoeff() - lambdas.minCoeff();
  if (spread <= 1e-12) {
    // All eigenvalues equal: L_n is constant in eta.
    fit.unidentifiable = true;
    fit.eta_hat = 0.0;
    fit.sigma2_hat = profile_sigma2(0.0, lambdas, yt);
    fit.loglik = profile_unchecked(0.0, lambdas, yt);
    fit.se = 1e150;
    fit.se_reliable = false;
    return fit;
  }

  // Grid prescan (the profile likelihood is not guaranteed unimodal),
  // then golden-section refinement around the best grid point.
  constexpr int grid_points = 1000;
  double best_eta = 0.0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= grid_points; ++k) {
    const double eta = kEtaUpper * static_cast<double>(k) / grid_points;
    const double val = profile_unchecked(eta, lambdas, yt);
    if (val > best_val) {
      best_val = val;
      best_eta = eta;
    }
  }
  const double step = kEtaUpper / grid_points;
  const double lo = std::max(0.0, best_eta - step);
  const double hi = std::min(kEtaUpper, best_eta + step);
  double eta_hat = golden_max(lo, hi, lambdas, yt);
  if (profile_unchecked(eta_hat, lambdas, yt) < best_val) eta_hat = best_eta;

  // Polish interior maximizers by bisection on the analytic derivative.
  // The derivative is computed as a ratio, so the root is insensitive to
  // the scale of yt and sharper than function-value comparisons allow.
  if (profile_deriv(lo, lambdas, yt) > 0.0 &&
      profile_deriv(hi, lambdas, yt) < 0.0) {
    double a = lo, b = hi;
    for (int it = 0; it < 100 && b - a > 1e-14; ++it) {
      const double mid = 0.5 * (a + b);
      if (profile_deriv(mid, lambdas, yt) > 0.0) {
        a = mid;
      } else {
        b = mid;
      }
    }
    const double polished = 0.5 * (a + b);
    if (profile_unchecked(polished, lambdas, yt) >=
        profile_unchecked(eta_hat, lambdas, yt) - 1e-9 * std::abs(best_val)) {
      eta_hat = polished;
    }
  }

  fit.eta_hat = eta_hat;
  fit.sigma2_hat = profile_sigma2(eta_hat, lambdas, yt);
  fit.loglik = profile_unchecked(eta_hat, lambdas, yt);
  fit.boundary = eta_hat <= step * 1e-3 || eta_hat >= kEtaUpper - step * 1e-3;

  // Observed information of the full log-likelihood (n/2) L_n at the
  // maximizer, by Richardson-refined central second differences.
  const double h = 1e-4;
  const auto second_diff = [&](double hh) {
    const double xm = std::clamp(eta_hat - hh, 0.0, kEtaUpper);
    const double xp = std::clamp(eta_hat + hh, 0.0, kEtaUpper);
    const double fm = profile_unchecked(xm, lambdas, yt);
    const double f0 = profile_unchecked(eta_hat, lambdas, yt);
    const double fp = profile_unchecked(xp, lambdas, yt);
    return (fp - 2.0 * f0 + fm) / (hh * hh);
  };
  const double d2 = (4.0 * second_diff(h / 2.0) - second_diff(h)) / 3.0;
  const double info = -0.5 * static_cast<double>(n) * d2;
  if (info > 0.0 && std::isfinite(info)) {
    fit.se = 1.0 / std::sqrt(info);
    fit.se_reliable = !fit.boundary;
  } else {
    fit.se = 1e150;
    fit.se_reliable = false;
  }
  return fit;
}

std::pair<double, double> fit_full_gaussian(const KinshipEigen& ke) {
  // Alternate: sigma2 has a closed form at fixed eta, so the joint
  // maximization reduces to a scalar search with the plug-in sigma2.
  const Vector& lambdas = ke.lambdas;
  const Vector& yt = ke.rotated;
  const double spread = lambdas.maxCoeff() - lambdas.minCoeff();
  if (spread <= 1e-12) {
    return {0.0, profile_sigma2(0.0, lambdas, yt)};
  }
  constexpr int grid_points = 1000;
  double best_eta = 0.0;
  double best_ll = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= grid_points; ++k) {
    const double eta = kEtaUpper * static_cast<double>(k) / grid_points;
    const double s2 = profile_sigma2(eta, lambdas, yt);
    const double ll = full_gaussian_loglik(eta, s2, ke);
    if (ll > best_ll) {
      best_ll = ll;
      best_eta = eta;
    }
  }
  const double step = kEtaUpper / grid_points;
  // Narrow golden search on the exact joint likelihood.
  constexpr double phi = 0.6180339887498949;
  double a = std::max(0.0, best_eta - step);
  double b = std::min(kEtaUpper, best_eta + step);
  while (b - a > 1e-12) {
    const double x1 = b - phi * (b - a);
    const double x2 = a + phi * (b - a);
    const double f1 = full_gaussian_loglik(x1, profile_sigma2(x1, lambdas, yt), ke);
    const double f2 = full_gaussian_loglik(x2, profile_sigma2(x2, lambdas, yt), ke);
    if (f1 < f2) {
      a = x1;
    } else {
      b = x2;
    }
  }
  const double eta = 0.5 * (a + b);
  return {eta, profile_sigma2(eta, lambdas, yt)};
}

}  // namespace herit
