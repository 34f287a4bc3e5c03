#ifndef HERIT_MLE_HPP
#define HERIT_MLE_HPP

#include <utility>

#include "herit/types.hpp"

namespace herit {

// Eigenstructure of R = Z_sel Z_sel' / N_sel together with the rotated
// observations U'Y.
struct KinshipEigen {
  Vector lambdas;  // ascending, clamped at 0
  Vector rotated;  // U'Y in the same eigenvector order
  Index n_sel = 0;

  Index n() const { return lambdas.size(); }
};

enum class FitMode { Select, Full, Oracle };

struct HeritabilityFit {
  double eta_hat = 0.0;
  double sigma2_hat = 0.0;
  double loglik = 0.0;
  double se = 0.0;
  FitMode mode = FitMode::Full;
  Vector lambdas_used;
  bool boundary = false;        // eta_hat pinned at 0 or 1-1e-9
  bool unidentifiable = false;  // flat likelihood (all eigenvalues equal)
  bool se_reliable = true;
};

KinshipEigen kinship_eigen(const Matrix& z_sel, const Vector& y);

// L_n(eta) = -log((1/n) sum Yt_i^2 / (eta(l_i-1)+1))
//            - (1/n) sum log(eta(l_i-1)+1).
// Throws DegenerateLikelihood when a denominator falls below 1e-12.
double profile_loglik(double eta, const KinshipEigen& ke);

HeritabilityFit fit_heritability(const KinshipEigen& ke,
                                 FitMode mode = FitMode::Full);

// Exact two-parameter Gaussian fit over (eta, sigma2); internal oracle
// for the profile formula.
std::pair<double, double> fit_full_gaussian(const KinshipEigen& ke);

// Full Gaussian log-density of the rotated vector at (eta, sigma2).
double full_gaussian_loglik(double eta, double sigma2, const KinshipEigen& ke);

}  // namespace herit

#endif
