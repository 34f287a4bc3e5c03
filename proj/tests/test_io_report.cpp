#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "herit/io.hpp"
#include "herit/report.hpp"
#include "herit/simulate.hpp"
#include "test_util.hpp"

using namespace herit;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("herit_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("genotype CSV round-trip preserves values and ids") {
  TempDir dir;
  GenotypeMatrix w = simulate_genotypes(15, 7, 0.1, 0.5, 141);
  auto ids = default_snp_ids(7);
  const std::string path = dir.file("geno.csv");
  write_genotypes_csv(path, w, ids);
  std::vector<std::string> back_ids;
  GenotypeMatrix back = read_genotypes_csv(path, &back_ids);
  CHECK(back_ids == ids);
  REQUIRE(back.values().rows() == w.values().rows());
  REQUIRE(back.values().cols() == w.values().cols());
  CHECK((back.values().array() == w.values().array()).all());
}

TEST_CASE("phenotype CSV round-trips at full double precision") {
  TempDir dir;
  Vector y = testutil::random_vector(20, 142);
  y(3) = 1.0 / 3.0;
  y(5) = -1e-17;
  const std::string path = dir.file("pheno.csv");
  write_phenotype_csv(path, y);
  Vector back = read_phenotype_csv(path);
  REQUIRE(back.size() == y.size());
  CHECK((back.array() == y.array()).all());
}

TEST_CASE("covariate CSV round-trips") {
  TempDir dir;
  Matrix x = testutil::random_matrix(12, 3, 143);
  const std::string path = dir.file("cov.csv");
  write_covariates_csv(path, x, {"intercept", "age", "site"});
  Matrix back = read_covariates_csv(path);
  REQUIRE(back.rows() == 12);
  REQUIRE(back.cols() == 3);
  CHECK((back.array() == x.array()).all());
}

TEST_CASE("bad genotype cell reports 1-based line and column") {
  TempDir dir;
  const std::string path = dir.file("bad.csv");
  write_text(path, "s1,s2,s3\n0,1,2\n1,3,0\n");
  try {
    read_genotypes_csv(path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.column == 2);
  }
}

TEST_CASE("non-numeric phenotype cell reports its location") {
  TempDir dir;
  const std::string path = dir.file("badp.csv");
  write_text(path, "phenotype\n1.5\nxyz\n");
  try {
    read_phenotype_csv(path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.column == 1);
  }
}

TEST_CASE("ragged rows are rejected with the offending line") {
  TempDir dir;
  const std::string path = dir.file("ragged.csv");
  write_text(path, "s1,s2\n0,1\n2\n");
  CHECK_THROWS_AS(read_genotypes_csv(path), ParseError);
}

TEST_CASE("missing file throws IoError") {
  CHECK_THROWS_AS(read_phenotype_csv("/nonexistent/nope.csv"), IoError);
}

TEST_CASE("default snp ids are snp1..snpk") {
  auto ids = default_snp_ids(3);
  REQUIRE(ids.size() == 3);
  CHECK(ids[0] == "snp1");
  CHECK(ids[2] == "snp3");
}

}  // TEST_SUITE

TEST_SUITE("report") {

TEST_CASE("run report JSON round-trips losslessly") {
  RunReport r;
  r.mode = "select";
  r.threshold = 0.76;
  r.n_subsamples = 50;
  r.bootstrap_replicates = 80;
  r.seed = 42;
  r.n = 500;
  r.n_snps = 5000;
  r.eta_hat = 0.6123456789012345;
  r.sigma2_hat = 1.0 / 3.0;
  r.se = 0.05;
  r.se_reliable = true;
  r.boundary = false;
  r.unidentifiable = false;
  r.ci_low = 0.41;
  r.ci_high = 0.83;
  r.n_final = 2;
  r.selected_ids = {"snp_7", "snp_9"};
  r.selected_frequencies = {0.98, 0.81};
  RecoveryReport rec;
  rec.selected_size = 2;
  rec.true_support_size = 10;
  rec.capture_fraction = 0.2;
  rec.decile_capture[0] = 1.0;
  rec.decile_size.fill(1);
  r.recovery = rec;

  const std::string text = emit_report(r);
  RunReport back = parse_report(text);
  CHECK(back == r);
  // Emission is deterministic.
  CHECK(emit_report(back) == text);
}

TEST_CASE("decision report JSON round-trips") {
  DecisionReport d;
  d.verdict = "select";
  d.overlap = 12.5;
  d.cutoff = 10.0;
  d.forced_full = false;
  d.seed = 7;
  ThresholdCell c;
  c.threshold = 0.70;
  c.ok = true;
  c.eta_hat = 0.55;
  c.ci_low = 0.4;
  c.ci_high = 0.7;
  c.n_selected = 11;
  d.cells = {c};
  d.chosen.mode = "select";
  d.chosen.eta_hat = 0.55;

  const std::string text = emit_decision_report(d);
  DecisionReport back = parse_decision_report(text);
  CHECK(back == d);
}

TEST_CASE("truth manifest round-trips including exact doubles") {
  TruthManifest t;
  t.n = 500;
  t.n_snps = 5000;
  t.q = 0.002;
  t.sigma_u2 = 1.0;
  t.sigma_e2 = 20.0 / 3.0;
  t.eta_star = 0.6;
  t.seed = 4000;
  t.support = {3, 99, 4999};
  t.effects = {1.0, -1.0, 1.0};
  TruthManifest back = parse_truth(emit_truth(t));
  CHECK(back == t);
  CHECK(back.sigma_e2 == t.sigma_e2);
}

TEST_CASE("sim config round-trips") {
  SimConfig c;
  c.n = 400;
  c.n_snps = 5000;
  c.maf_min = 0.1;
  c.maf_max = 0.5;
  c.params.q = 0.0025;
  c.params.sigma_u2 = 1.0;
  c.params.sigma_e2 = 20.0 / 3.0;
  c.target_eta = 0.6;
  c.seed = 4001;
  SimConfig back = parse_sim_config(emit_sim_config(c));
  CHECK(back.n == c.n);
  CHECK(back.n_snps == c.n_snps);
  CHECK(back.maf_min == c.maf_min);
  CHECK(back.maf_max == c.maf_max);
  CHECK(back.params.q == c.params.q);
  CHECK(back.params.sigma_u2 == c.params.sigma_u2);
  CHECK(back.params.sigma_e2 == c.params.sigma_e2);
  REQUIRE(back.target_eta.has_value());
  CHECK(*back.target_eta == 0.6);
  CHECK(back.seed == c.seed);
}

TEST_CASE("malformed report JSON throws ParseError") {
  CHECK_THROWS_AS(parse_report("{not json"), ParseError);
  CHECK_THROWS_AS(parse_report("{\"mode\": \"select\"}"), ParseError);
}

TEST_CASE("mode names map both ways") {
  CHECK(mode_name(Mode::Select) == "select");
  CHECK(mode_name(Mode::Full) == "full");
  CHECK(mode_name(Mode::Oracle) == "oracle");
  CHECK(mode_from_name("select") == Mode::Select);
  CHECK(mode_from_name("full") == Mode::Full);
  CHECK(mode_from_name("oracle") == Mode::Oracle);
  CHECK_THROWS_AS(mode_from_name("other"), InvalidConfig);
}

TEST_CASE("calibration table CSV has a header and one row per cell") {
  CalibrationResult result;
  CalibrationCell cell;
  cell.eta_star = 0.5;
  cell.q = 0.01;
  cell.threshold = 0.7;
  cell.mean_abs_error = 0.12;
  result.table = {cell, cell};
  result.best_threshold = 0.7;
  const std::string csv = calibration_table_csv(result);
  int lines = 0;
  for (char ch : csv) {
    if (ch == '\n') ++lines;
  }
  CHECK(lines == 3);
  CHECK(csv.rfind("eta_star,q,threshold,mean_abs_error,failed", 0) == 0);
}

}  // TEST_SUITE
