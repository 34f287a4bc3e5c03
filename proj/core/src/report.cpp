#include "herit/report.hpp"

#include <json.hpp>
#include <sstream>

namespace herit {

using Json = nlohmann::ordered_json;

namespace {

Json recovery_to_json(const RecoveryReport& r) {
  Json j;
  j["selected_size"] = r.selected_size;
  j["true_support_size"] = r.true_support_size;
  j["capture_fraction"] = r.capture_fraction;
  j["decile_capture"] = r.decile_capture;
  j["decile_size"] = r.decile_size;
  return j;
}

RecoveryReport recovery_from_json(const Json& j) {
  RecoveryReport r;
  r.selected_size = j.at("selected_size").get<Index>();
  r.true_support_size = j.at("true_support_size").get<Index>();
  r.capture_fraction = j.at("capture_fraction").get<double>();
  r.decile_capture = j.at("decile_capture").get<std::array<double, 10>>();
  r.decile_size = j.at("decile_size").get<std::array<Index, 10>>();
  return r;
}

Json run_report_to_json(const RunReport& r) {
  Json j;
  j["mode"] = r.mode;
  j["threshold"] = r.threshold;
  j["n_subsamples"] = r.n_subsamples;
  j["bootstrap_replicates"] = r.bootstrap_replicates;
  j["seed"] = r.seed;
  j["n"] = r.n;
  j["n_snps"] = r.n_snps;
  j["eta_hat"] = r.eta_hat;
  j["sigma2_hat"] = r.sigma2_hat;
  j["se"] = r.se;
  j["se_reliable"] = r.se_reliable;
  j["boundary"] = r.boundary;
  j["unidentifiable"] = r.unidentifiable;
  j["ci_low"] = r.ci_low;
  j["ci_high"] = r.ci_high;
  j["n_final"] = r.n_final;
  j["selected_ids"] = r.selected_ids;
  j["selected_frequencies"] = r.selected_frequencies;
  if (r.recovery) j["recovery"] = recovery_to_json(*r.recovery);
  return j;
}

RunReport run_report_from_json(const Json& j) {
  RunReport r;
  r.mode = j.at("mode").get<std::string>();
  r.threshold = j.at("threshold").get<double>();
  r.n_subsamples = j.at("n_subsamples").get<int>();
  r.bootstrap_replicates = j.at("bootstrap_replicates").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.n = j.at("n").get<Index>();
  r.n_snps = j.at("n_snps").get<Index>();
  r.eta_hat = j.at("eta_hat").get<double>();
  r.sigma2_hat = j.at("sigma2_hat").get<double>();
  r.se = j.at("se").get<double>();
  r.se_reliable = j.at("se_reliable").get<bool>();
  r.boundary = j.at("boundary").get<bool>();
  r.unidentifiable = j.at("unidentifiable").get<bool>();
  r.ci_low = j.at("ci_low").get<double>();
  r.ci_high = j.at("ci_high").get<double>();
  r.n_final = j.at("n_final").get<Index>();
  r.selected_ids = j.at("selected_ids").get<std::vector<std::string>>();
  r.selected_frequencies = j.at("selected_frequencies").get<std::vector<double>>();
  if (j.contains("recovery")) r.recovery = recovery_from_json(j.at("recovery"));
  return r;
}

Json parse_or_throw(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("invalid JSON report", 1);
  return j;
}

// Missing keys or wrong value types surface as ParseError, like any other
// malformed input.
template <typename F>
auto with_parse_errors(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON report: ") + e.what(), 1);
  }
}

}  // namespace

std::string emit_report(const RunReport& report) {
  return run_report_to_json(report).dump(2) + "\n";
}

RunReport parse_report(const std::string& text) {
  return with_parse_errors([&] { return run_report_from_json(parse_or_throw(text)); });
}

std::string emit_decision_report(const DecisionReport& report) {
  Json j;
  j["verdict"] = report.verdict;
  j["overlap"] = report.overlap;
  j["cutoff"] = report.cutoff;
  j["forced_full"] = report.forced_full;
  j["seed"] = report.seed;
  Json cells = Json::array();
  for (const auto& c : report.cells) {
    Json jc;
    jc["threshold"] = c.threshold;
    jc["ok"] = c.ok;
    jc["eta_hat"] = c.eta_hat;
    jc["ci_low"] = c.ci_low;
    jc["ci_high"] = c.ci_high;
    jc["n_selected"] = c.n_selected;
    cells.push_back(jc);
  }
  j["thresholds"] = cells;
  j["chosen"] = run_report_to_json(report.chosen);
  return j.dump(2) + "\n";
}

DecisionReport parse_decision_report(const std::string& text) {
  return with_parse_errors([&] {
  const Json j = parse_or_throw(text);
  DecisionReport r;
  r.verdict = j.at("verdict").get<std::string>();
  r.overlap = j.at("overlap").get<double>();
  r.cutoff = j.at("cutoff").get<double>();
  r.forced_full = j.at("forced_full").get<bool>();
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& jc : j.at("thresholds")) {
    ThresholdCell c;
    c.threshold = jc.at("threshold").get<double>();
    c.ok = jc.at("ok").get<bool>();
    c.eta_hat = jc.at("eta_hat").get<double>();
    c.ci_low = jc.at("ci_low").get<double>();
    c.ci_high = jc.at("ci_high").get<double>();
    c.n_selected = jc.at("n_selected").get<Index>();
    r.cells.push_back(c);
  }
  r.chosen = run_report_from_json(j.at("chosen"));
  return r;
  });
}

std::string emit_truth(const TruthManifest& manifest) {
  Json j;
  j["n"] = manifest.n;
  j["n_snps"] = manifest.n_snps;
  j["q"] = manifest.q;
  j["sigma_u2"] = manifest.sigma_u2;
  j["sigma_e2"] = manifest.sigma_e2;
  j["eta_star"] = manifest.eta_star;
  j["seed"] = manifest.seed;
  j["support"] = manifest.support;
  j["effects"] = manifest.effects;
  return j.dump(2) + "\n";
}

TruthManifest parse_truth(const std::string& text) {
  return with_parse_errors([&] {
  const Json j = parse_or_throw(text);
  TruthManifest m;
  m.n = j.at("n").get<Index>();
  m.n_snps = j.at("n_snps").get<Index>();
  m.q = j.at("q").get<double>();
  m.sigma_u2 = j.at("sigma_u2").get<double>();
  m.sigma_e2 = j.at("sigma_e2").get<double>();
  m.eta_star = j.at("eta_star").get<double>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.support = j.at("support").get<std::vector<Index>>();
  m.effects = j.at("effects").get<std::vector<double>>();
  return m;
  });
}

std::string emit_sim_config(const SimConfig& config) {
  Json j;
  j["n"] = config.n;
  j["n_snps"] = config.n_snps;
  j["q"] = config.params.q;
  j["sigma_u2"] = config.params.sigma_u2;
  j["sigma_e2"] = config.params.sigma_e2;
  if (config.target_eta) j["target_eta"] = *config.target_eta;
  j["maf_min"] = config.maf_min;
  j["maf_max"] = config.maf_max;
  j["fixed_effect_count"] = config.fixed_effect_count;
  j["seed"] = config.seed;
  return j.dump(2) + "\n";
}

SimConfig parse_sim_config(const std::string& text) {
  return with_parse_errors([&] {
  const Json j = parse_or_throw(text);
  SimConfig c;
  c.n = j.at("n").get<Index>();
  c.n_snps = j.at("n_snps").get<Index>();
  c.params.q = j.value("q", 1.0);
  c.params.sigma_u2 = j.value("sigma_u2", 1.0);
  c.params.sigma_e2 = j.value("sigma_e2", 1.0);
  if (j.contains("target_eta")) c.target_eta = j.at("target_eta").get<double>();
  c.maf_min = j.value("maf_min", 0.1);
  c.maf_max = j.value("maf_max", 0.5);
  c.fixed_effect_count = j.value("fixed_effect_count", 0);
  c.seed = j.value("seed", std::uint64_t{0});
  c.validate();
  return c;
  });
}

std::string calibration_table_csv(const CalibrationResult& result) {
  std::ostringstream out;
  out.precision(17);
  out << "eta_star,q,threshold,mean_abs_error,failed\n";
  for (const auto& cell : result.table) {
    out << cell.eta_star << ',' << cell.q << ',' << cell.threshold << ','
        << cell.mean_abs_error << ',' << (cell.failed ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::Select: return "select";
    case Mode::Oracle: return "oracle";
    default: return "full";
  }
}

Mode mode_from_name(const std::string& name) {
  if (name == "select") return Mode::Select;
  if (name == "full") return Mode::Full;
  if (name == "oracle") return Mode::Oracle;
  throw InvalidConfig("unknown mode: " + name + " (expected select|full|oracle)");
}

}  // namespace herit
