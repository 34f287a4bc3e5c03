// Heritability estimation for sparse high-dimensional linear mixed
// models: simulate / estimate / calibrate / decide subcommands.

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "herit/calibrate.hpp"
#include "herit/diagnostics.hpp"
#include "herit/io.hpp"
#include "herit/parallel.hpp"
#include "herit/pipeline.hpp"
#include "herit/report.hpp"
#include "herit/simulate.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw herit::IoError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw herit::IoError("cannot open file for writing: " + path);
  out << content;
}

std::vector<double> parse_grid(const std::string& text) {
  // Either "a,b,c" or "lo:step:hi" (inclusive).
  std::vector<double> values;
  if (text.find(':') != std::string::npos) {
    double lo = 0, step = 0, hi = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(text);
    if (!(ss >> lo >> c1 >> step >> c2 >> hi) || c1 != ':' || c2 != ':' || step <= 0) {
      throw herit::InvalidConfig("bad grid spec '" + text + "' (want lo:step:hi)");
    }
    for (double v = lo; v <= hi + 1e-12; v += step) values.push_back(v);
    return values;
  }
  std::istringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) values.push_back(std::stod(cell));
  if (values.empty()) throw herit::InvalidConfig("empty grid spec");
  return values;
}

struct EstimateArgs {
  std::string genotypes, phenotype, covariates, truth, out;
  std::string mode = "select";
  double threshold = 0.76;
  int subsamples = 50;
  int bootstrap_k = 80;
  std::uint64_t seed = 0;
};

herit::RunReport build_run_report(const EstimateArgs& args, herit::Mode mode,
                                  const herit::PipelineConfig& config,
                                  const herit::PipelineResult& result,
                                  herit::Index n, herit::Index n_snps,
                                  const std::vector<std::string>& snp_ids,
                                  const std::vector<herit::Index>& source_index) {
  herit::RunReport report;
  report.mode = herit::mode_name(mode);
  report.threshold = args.threshold;
  report.n_subsamples = args.subsamples;
  report.bootstrap_replicates = args.bootstrap_k;
  report.seed = args.seed;
  report.n = n;
  report.n_snps = n_snps;
  report.eta_hat = result.fit.eta_hat;
  report.sigma2_hat = result.fit.sigma2_hat;
  report.se = result.fit.se;
  report.se_reliable = result.fit.se_reliable;
  report.boundary = result.fit.boundary;
  report.unidentifiable = result.fit.unidentifiable;
  report.ci_low = result.boot.ci_low;
  report.ci_high = result.boot.ci_high;
  if (result.selection) {
    report.n_final = result.selection->n_final();
    for (herit::Index j : result.selection->selected) {
      const herit::Index src = source_index[static_cast<std::size_t>(j)];
      report.selected_ids.push_back(snp_ids[static_cast<std::size_t>(src)]);
      report.selected_frequencies.push_back(
          result.selection->frequencies[static_cast<std::size_t>(j)]);
    }
  } else if (mode == herit::Mode::Full) {
    report.n_final = n_snps;
  } else {
    report.n_final = static_cast<herit::Index>(config.oracle_support.size());
  }
  return report;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
  const herit::SimConfig config = herit::parse_sim_config(read_file(config_path));
  std::filesystem::create_directories(out_dir);

  const auto t0 = Clock::now();
  const herit::SimOutput sim = herit::simulate(config);
  const double t_sim = seconds_since(t0);

  const auto ids = herit::default_snp_ids(sim.genotypes.snp_count());
  herit::write_genotypes_csv(out_dir + "/genotypes.csv", sim.genotypes, ids);
  herit::write_phenotype_csv(out_dir + "/phenotype.csv", sim.y);
  if (sim.x) {
    std::vector<std::string> names;
    for (herit::Index j = 0; j < sim.x->cols(); ++j) {
      names.push_back(j == 0 ? "intercept" : "cov" + std::to_string(j));
    }
    herit::write_covariates_csv(out_dir + "/covariates.csv", *sim.x, names);
  }

  herit::TruthManifest truth;
  truth.n = config.n;
  truth.n_snps = sim.z.snp_count();
  truth.q = config.params.q;
  truth.sigma_u2 = config.params.sigma_u2;
  truth.sigma_e2 = sim.sigma_e2;
  truth.eta_star = sim.eta_star;
  truth.seed = config.seed;
  // Support indices refer to retained standardized columns, mapped back
  // to the original genotype column numbering.
  for (herit::Index j : sim.support) {
    truth.support.push_back(sim.z.source_column_index[static_cast<std::size_t>(j)]);
    truth.effects.push_back(sim.effects(j));
  }
  write_file(out_dir + "/truth.json", herit::emit_truth(truth));

  std::cout << "simulated n=" << config.n << " N=" << sim.z.snp_count()
            << " eta*=" << sim.eta_star << " |support|=" << truth.support.size()
            << "\nwrote " << out_dir << "/{genotypes.csv,phenotype.csv"
            << (sim.x ? ",covariates.csv" : "") << ",truth.json}"
            << "\ntiming: simulate " << t_sim << " s\n";
  return 0;
}

int cmd_estimate(const EstimateArgs& args) {
  const herit::Mode mode = herit::mode_from_name(args.mode);

  const auto t0 = Clock::now();
  std::vector<std::string> snp_ids;
  const herit::GenotypeMatrix w = herit::read_genotypes_csv(args.genotypes, &snp_ids);
  const herit::Vector y = herit::read_phenotype_csv(args.phenotype);
  if (y.size() != w.n()) {
    throw herit::DimensionMismatch("row counts differ: " + args.genotypes + " has " +
                                   std::to_string(w.n()) + ", " + args.phenotype +
                                   " has " + std::to_string(y.size()));
  }
  std::optional<herit::Matrix> x;
  if (!args.covariates.empty()) {
    x = herit::read_covariates_csv(args.covariates);
    if (x->rows() != w.n()) {
      throw herit::DimensionMismatch("row counts differ: " + args.genotypes + " vs " +
                                     args.covariates);
    }
  }
  const double t_io = seconds_since(t0);

  const auto t1 = Clock::now();
  const herit::StandardizedMatrix z = herit::standardize(w);
  const double t_std = seconds_since(t1);

  herit::PipelineConfig config;
  config.mode = mode;
  config.stability.n_subsamples = args.subsamples;
  config.stability.threshold = args.threshold;
  config.bootstrap_replicates = args.bootstrap_k;
  config.seed = args.seed;

  std::optional<herit::TruthManifest> truth;
  if (!args.truth.empty()) truth = herit::parse_truth(read_file(args.truth));
  if (mode == herit::Mode::Oracle) {
    if (!truth) throw herit::InvalidConfig("oracle mode requires --truth");
    // Map original column indices to retained standardized columns.
    std::vector<herit::Index> to_z(static_cast<std::size_t>(w.snp_count()), -1);
    for (std::size_t k = 0; k < z.source_column_index.size(); ++k) {
      to_z[static_cast<std::size_t>(z.source_column_index[k])] = static_cast<herit::Index>(k);
    }
    for (herit::Index src : truth->support) {
      if (src >= 0 && src < w.snp_count() && to_z[static_cast<std::size_t>(src)] >= 0) {
        config.oracle_support.push_back(to_z[static_cast<std::size_t>(src)]);
      }
    }
  }

  const auto t2 = Clock::now();
  const herit::PipelineResult result =
      herit::run(y, z.values, x ? &*x : nullptr, config);
  const double t_fit = seconds_since(t2);

  herit::RunReport report = build_run_report(args, mode, config, result, w.n(),
                                             z.snp_count(), snp_ids,
                                             z.source_column_index);
  if (truth && result.selection) {
    herit::Vector u_true = herit::Vector::Zero(z.snp_count());
    std::vector<herit::Index> to_z(static_cast<std::size_t>(w.snp_count()), -1);
    for (std::size_t k = 0; k < z.source_column_index.size(); ++k) {
      to_z[static_cast<std::size_t>(z.source_column_index[k])] = static_cast<herit::Index>(k);
    }
    for (std::size_t i = 0; i < truth->support.size(); ++i) {
      const herit::Index src = truth->support[i];
      if (src >= 0 && src < w.snp_count() && to_z[static_cast<std::size_t>(src)] >= 0) {
        u_true(to_z[static_cast<std::size_t>(src)]) = truth->effects[i];
      }
    }
    report.recovery = herit::recovery_metrics(result.selection->selected, u_true);
  }

  if (!args.out.empty()) write_file(args.out, herit::emit_report(report));

  std::cout << "mode=" << report.mode << " eta_hat=" << report.eta_hat
            << " sigma2_hat=" << report.sigma2_hat << " se=" << report.se
            << "\n95% CI [" << report.ci_low << ", " << report.ci_high << "]"
            << " n_final=" << report.n_final << " seed=" << report.seed
            << "\ntiming: io " << t_io << " s, standardize " << t_std
            << " s, fit+bootstrap " << t_fit << " s\n";
  return 0;
}

int cmd_calibrate(const std::string& genotypes, const std::string& eta_grid,
                  const std::string& q_grid, const std::string& thresholds,
                  int reps, std::uint64_t seed, const std::string& out) {
  const herit::GenotypeMatrix w = herit::read_genotypes_csv(genotypes);
  const herit::StandardizedMatrix z = herit::standardize(w);

  herit::CalibrateOptions options;
  options.reps = reps;
  options.seed = seed;
  const auto t0 = Clock::now();
  const herit::CalibrationResult result = herit::calibrate_threshold(
      z.values, parse_grid(eta_grid), parse_grid(q_grid), parse_grid(thresholds),
      options);
  const double t_cal = seconds_since(t0);

  if (!out.empty()) write_file(out, herit::calibration_table_csv(result));
  std::cout << "best threshold: " << result.best_threshold << "\n"
            << "table cells: " << result.table.size() << "\n"
            << "timing: calibrate " << t_cal << " s\n";
  return 0;
}

int cmd_decide(const std::string& genotypes, const std::string& phenotype,
               const std::string& covariates, const std::string& thresholds,
               double cutoff, int subsamples, int bootstrap_k,
               std::uint64_t seed, const std::string& out) {
  std::vector<std::string> snp_ids;
  const herit::GenotypeMatrix w = herit::read_genotypes_csv(genotypes, &snp_ids);
  const herit::Vector y = herit::read_phenotype_csv(phenotype);
  if (y.size() != w.n()) {
    throw herit::DimensionMismatch("row counts differ: " + genotypes + " vs " + phenotype);
  }
  std::optional<herit::Matrix> x;
  if (!covariates.empty()) x = herit::read_covariates_csv(covariates);
  const herit::StandardizedMatrix z = herit::standardize(w);

  herit::DecideOptions options;
  options.thresholds = parse_grid(thresholds);
  options.cutoff = cutoff;
  options.n_subsamples = subsamples;
  options.bootstrap_replicates = bootstrap_k;
  options.seed = seed;

  const auto t0 = Clock::now();
  const herit::DecisionOutput result =
      herit::decide(y, z.values, x ? &*x : nullptr, options);
  const double t_decide = seconds_since(t0);

  herit::DecisionReport report;
  report.verdict = herit::mode_name(result.decision.verdict);
  report.overlap = result.decision.overlap;
  report.cutoff = result.decision.cutoff;
  report.forced_full = result.decision.forced_full;
  report.seed = seed;
  report.cells = result.sweep.cells;
  report.chosen.mode = report.verdict;
  report.chosen.threshold = options.report_threshold;
  report.chosen.n_subsamples = subsamples;
  report.chosen.bootstrap_replicates = bootstrap_k;
  report.chosen.seed = seed;
  report.chosen.n = w.n();
  report.chosen.n_snps = z.snp_count();
  report.chosen.eta_hat = result.fit.eta_hat;
  report.chosen.sigma2_hat = result.fit.sigma2_hat;
  report.chosen.se = result.fit.se;
  report.chosen.se_reliable = result.fit.se_reliable;
  report.chosen.boundary = result.fit.boundary;
  report.chosen.unidentifiable = result.fit.unidentifiable;
  report.chosen.ci_low = result.boot.ci_low;
  report.chosen.ci_high = result.boot.ci_high;

  if (!out.empty()) write_file(out, herit::emit_decision_report(report));
  std::cout << "verdict=" << report.verdict << " overlap=" << report.overlap
            << " cutoff=" << report.cutoff
            << (report.forced_full ? " (all selections empty)" : "")
            << "\neta_hat=" << report.chosen.eta_hat << " 95% CI ["
            << report.chosen.ci_low << ", " << report.chosen.ci_high << "]"
            << "\ntiming: decide " << t_decide << " s\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heritability estimation in sparse high-dimensional linear mixed models"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads (default: HERIT_THREADS env or all cores)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "generate synthetic genotypes and phenotype");
  std::string sim_config, sim_out_dir;
  sim->add_option("config", sim_config, "JSON simulation config")->required();
  sim->add_option("out_dir", sim_out_dir, "output directory")->required();

  // estimate
  auto* est = app.add_subcommand("estimate", "estimate heritability from CSV inputs");
  EstimateArgs est_args;
  est->add_option("genotypes", est_args.genotypes)->required();
  est->add_option("phenotype", est_args.phenotype)->required();
  est->add_option("covariates", est_args.covariates);
  est->add_option("--mode", est_args.mode, "select|full|oracle");
  est->add_option("--threshold", est_args.threshold, "selection frequency threshold");
  est->add_option("--subsamples", est_args.subsamples, "stability subsamples");
  est->add_option("--bootstrap-K", est_args.bootstrap_k, "bootstrap replicates");
  est->add_option("--seed", est_args.seed);
  est->add_option("--truth", est_args.truth, "truth manifest (oracle support / recovery)");
  est->add_option("--out", est_args.out, "machine-readable report path");

  // calibrate
  auto* cal = app.add_subcommand("calibrate", "threshold calibration by simulation");
  std::string cal_genotypes, cal_eta = "0.4,0.6", cal_q = "0.002",
              cal_thresholds = "0.7:0.01:0.85", cal_out;
  int cal_reps = 10;
  std::uint64_t cal_seed = 0;
  cal->add_option("genotypes", cal_genotypes)->required();
  cal->add_option("--eta-grid", cal_eta, "comma list or lo:step:hi");
  cal->add_option("--q-grid", cal_q, "comma list or lo:step:hi");
  cal->add_option("--thresholds", cal_thresholds, "comma list or lo:step:hi");
  cal->add_option("--reps", cal_reps);
  cal->add_option("--seed", cal_seed);
  cal->add_option("--out", cal_out, "error table CSV path");

  // decide
  auto* dec = app.add_subcommand("decide", "choose between selection and no-selection estimators");
  std::string dec_genotypes, dec_phenotype, dec_covariates,
      dec_thresholds = "0.7:0.01:0.85", dec_out;
  double dec_cutoff = 10.0;
  int dec_subsamples = 50, dec_bootstrap = 80;
  std::uint64_t dec_seed = 0;
  dec->add_option("genotypes", dec_genotypes)->required();
  dec->add_option("phenotype", dec_phenotype)->required();
  dec->add_option("covariates", dec_covariates);
  dec->add_option("--thresholds", dec_thresholds, "comma list or lo:step:hi");
  dec->add_option("--cutoff", dec_cutoff, "overlap cutoff");
  dec->add_option("--subsamples", dec_subsamples);
  dec->add_option("--bootstrap-K", dec_bootstrap);
  dec->add_option("--seed", dec_seed);
  dec->add_option("--out", dec_out, "decision report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  herit::set_thread_count(threads);

  try {
    if (*sim) return cmd_simulate(sim_config, sim_out_dir);
    if (*est) return cmd_estimate(est_args);
    if (*cal) {
      return cmd_calibrate(cal_genotypes, cal_eta, cal_q, cal_thresholds, cal_reps,
                           cal_seed, cal_out);
    }
    if (*dec) {
      return cmd_decide(dec_genotypes, dec_phenotype, dec_covariates, dec_thresholds,
                        dec_cutoff, dec_subsamples, dec_bootstrap, dec_seed, dec_out);
    }
  } catch (const herit::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const herit::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const herit::InvalidConfig& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const herit::DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const herit::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
