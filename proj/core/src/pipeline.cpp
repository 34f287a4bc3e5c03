#include "herit/pipeline.hpp"

#include "herit/projection.hpp"

namespace herit {

void PipelineConfig::validate() const {
  stability.validate();
  if (bootstrap_replicates < 20) throw InvalidConfig("bootstrap_replicates must be >= 20");
  if (mode == Mode::Oracle && oracle_support.empty()) {
    throw InvalidConfig("Oracle mode requires a non-empty support set");
  }
}

std::pair<Vector, Matrix> prepare(const Vector& y, const Matrix& z, const Matrix* x) {
  if (y.size() != z.rows()) throw DimensionMismatch("phenotype length != rows of Z");
  if (x && x->cols() > 0) {
    const Projector p = build_projector(*x);
    return project(p, y, z);
  }
  // No fixed effects: remove the intercept once (the model assumes a
  // zero-mean phenotype). Projecting onto the orthogonal complement of
  // the ones vector — rather than merely centering — also drops the
  // dimension, so the kinship matrix carries no structural zero
  // eigenvalue paired with an identically-zero rotated coordinate
  // (which would blow up the log-determinant term at eta -> 1).
  const Matrix ones = Matrix::Ones(y.size(), 1);
  const Projector p = build_projector(ones);
  return project(p, y, z);
}

namespace {

Matrix select_columns(const Matrix& z, const std::vector<Index>& columns) {
  Matrix out(z.rows(), static_cast<Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) {
    out.col(static_cast<Index>(k)) = z.col(columns[k]);
  }
  return out;
}

FitMode fit_mode_of(Mode mode) {
  switch (mode) {
    case Mode::Select: return FitMode::Select;
    case Mode::Oracle: return FitMode::Oracle;
    default: return FitMode::Full;
  }
}

}  // namespace

PipelineResult run(const Vector& y, const Matrix& z, const Matrix* x,
                   const PipelineConfig& config) {
  config.validate();
  auto [yp, zp] = prepare(y, z, x);

  std::optional<SelectionResult> selection;
  Matrix z_fit;
  switch (config.mode) {
    case Mode::Select: {
      StabilityConfig sc = config.stability;
      sc.seed = config.seed;
      const Index n_max = config.screen_n_max.value_or(zp.rows());
      selection = stability_select(yp, zp, sc, n_max);
      z_fit = select_columns(zp, selection->selected);
      break;
    }
    case Mode::Full:
      z_fit = zp;
      break;
    case Mode::Oracle:
      for (Index j : config.oracle_support) {
        if (j < 0 || j >= zp.cols()) throw DimensionMismatch("oracle support index out of range");
      }
      z_fit = select_columns(zp, config.oracle_support);
      break;
  }

  KinshipEigen ke = kinship_eigen(z_fit, yp);
  HeritabilityFit fit = fit_heritability(ke, fit_mode_of(config.mode));
  BootstrapResult boot =
      bootstrap_ci(ke, fit, config.bootstrap_replicates, config.seed);
  return PipelineResult{std::move(fit), std::move(boot), std::move(selection)};
}

}  // namespace herit
