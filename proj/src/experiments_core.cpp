#include "orlicz/dsl.hpp"
#include "orlicz/experiments.hpp"

#include <algorithm>
#include <cmath>

namespace orlicz {

namespace {

const std::vector<std::string> kBoundSuites = {"mt1", "mt2", "corollary_L1", "corollary_Linf",
                                               "prop31", "prop32", "prop_convo"};

bool is_bound_suite(const std::string& name) {
  return std::find(kBoundSuites.begin(), kBoundSuites.end(), name) != kBoundSuites.end();
}

Json grid_json(double L, std::size_t n) { return Json{{"L", L}, {"n", n}}; }

Json bound_suite_defaults(const std::string& which) {
  Json c;
  c["which"] = which;
  if (which == "mt1") {
    c["grid"] = grid_json(16.0, 1024);
    c["trials"] = 200;
    c["seed"] = 7;
    c["triples"] = Json::array({Json::array({"power:p=2", "power:p=2", "power:p=1"}),
                                Json::array({"power:p=4", "power:p=4", "power:p=2"}),
                                Json::array({"power:p=3", "power:p=6", "power:p=2"})});
    c["families"] = Json::array({"indicators", "gaussians", "modulated_translates", "rademacher_combs"});
    c["max_atoms"] = 4;
    c["max_mass"] = 4.0;
  } else if (which == "mt2") {
    c["grid"] = grid_json(16.0, 1024);
    c["trials"] = 200;
    c["seed"] = 7;
    c["triples"] = Json::array({Json::array({"power:p=1", "power:p=1", "power:p=1"}),
                                Json::array({"power:p=2", "power:p=1", "power:p=2"}),
                                Json::array({"power:p=1.5", "power:p=1.5", "power:p=3"})});
    c["families"] = Json::array({"gaussians", "modulated_translates", "indicators"});
  } else if (which == "corollary_L1") {
    c["grid"] = grid_json(16.0, 1024);
    c["trials"] = 100;
    c["seed"] = 7;
    c["phis"] = Json::array({"power:p=2", "exp"});
    c["families"] = Json::array({"indicators", "gaussians", "rademacher_combs"});
    c["max_atoms"] = 4;
    c["max_mass"] = 4.0;
  } else if (which == "corollary_Linf") {
    c["grid"] = grid_json(16.0, 1024);
    c["trials"] = 100;
    c["seed"] = 7;
    c["phis"] = Json::array({"power:p=2", "exp"});
    c["families"] = Json::array({"gaussians", "modulated_translates", "indicators"});
    c["refine_trials"] = 5;
  } else if (which == "prop31") {
    c["grid"] = grid_json(8.0, 256);
    c["trials"] = 50;
    c["seed"] = 7;
    c["tol"] = 1e-8;
  } else if (which == "prop32") {
    c["grid"] = grid_json(8.0, 2048);
    c["trials"] = 50;
    c["seed"] = 7;
    c["t"] = 2.0;
    c["tol"] = 1e-8;
  } else if (which == "prop_convo") {
    c["grid"] = grid_json(8.0, 512);
    c["trials"] = 50;
    c["seed"] = 7;
    c["triple"] = Json::array({"power:p=2", "power:p=2", "power:p=1"});
    c["kernel_nodes"] = 3;
    c["search_slack"] = 0.05;
    c["search_symbols"] = 3;
    c["search_trials"] = 16;
    c["tol"] = 1e-8;
  }
  return c;
}

std::string cell_text(const Json& v) {
  if (v.is_number()) return format_real(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "";
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += (ch == '"') ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

}  // namespace

bool VerificationReport::passed() const {
  return !verdicts.empty() && std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n = {"indicator_norm", "gauge_powers", "conjugation", "cross_methods",
                                  "rademacher",     "gaussian_limits", "homogeneous"};
    n.insert(n.end(), kBoundSuites.begin(), kBoundSuites.end());
    return n;
  }();
  return names;
}

Json default_config(const std::string& name) {
  Json c;
  if (name == "indicator_norm") {
    c["grid"] = grid_json(32.0, 4096);
    c["phis"] = Json::array({"power:p=1", "power:p=2", "power:p=3", "exp"});
    c["lengths"] = Json::array({0.25, 1.0, 4.0, 16.0});
    c["rel_tol"] = 1e-7;
  } else if (name == "gauge_powers") {
    c["ps"] = Json::array({1.0, 2.0, 4.0});
    c["lambdas"] = Json::array({0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0});
    c["abs_tol"] = 1e-6;
  } else if (name == "conjugation") {
    c["self_dual"] = "powerp:p=2";
    c["self_dual_y"] = Json{{"lo", 1e-3}, {"hi", 100.0}, {"n", 400}};
    c["self_dual_tol"] = 1e-6;
    c["biconjugate"] = "power:p=3";
    c["biconjugate_x"] = Json{{"lo", 1e-2}, {"hi", 10.0}, {"n", 400}};
    c["biconjugate_tol"] = 1e-4;
    c["young_phis"] = Json::array({"powerp:p=2", "power:p=3", "exp"});
    c["young_pairs"] = 10000;
    c["seed"] = 7;
  } else if (name == "cross_methods") {
    c["grid"] = grid_json(32.0, 4096);
    c["symbols"] = 20;
    c["seed"] = 7;
    c["tol"] = 1e-6;
    c["f1_points"] = 5;
    c["f1_tol"] = 1e-5;
  } else if (name == "rademacher") {
    c["phis"] = Json::array({"power:p=4", "power:p=4", "power:p=1"});
    c["a"] = 1.0;
    c["N_max"] = 256;
    c["slope_tol"] = 0.01;
    c["grid"] = grid_json(32.0, 4096);
    c["comb_N"] = Json::array({1, 2, 4, 8, 16});
    c["sign_vectors"] = 64;
    c["seed"] = 7;
    c["lemma_rel_tol"] = 1e-9;
  } else if (name == "gaussian_limits") {
    c["M"] = "gaussian:s=1.7724538509055160";  // e^{-v^2}
    c["M_grid"] = grid_json(8.0, 4096);
    c["phis"] = Json::array({"power:p=4", "power:p=4", "power:p=1"});
    c["lambdas"] = Json{{"lo", 1e-3}, {"hi", 50.0}, {"n", 61}};
    c["limit_rel_tol"] = 0.01;
    c["proxy_lambdas"] = Json{{"lo", 1e-4}, {"hi", 1e4}, {"n", 81}};
    c["slope_tol"] = 0.05;
  } else if (name == "homogeneous") {
    c["phis"] = Json::array({"power:p=2", "power:p=2", "power:p=1"});
    c["t"] = Json{{"lo", 1e-3}, {"hi", 1e3}, {"n", 61}};
    c["tol"] = 1e-6;
    c["boyd"] = Json{{"t_lo", 1e-6}, {"t_hi", 1e6}, {"fit_decades", 2.0}};
    c["boyd_tol"] = 0.05;
  } else if (is_bound_suite(name)) {
    c = bound_suite_defaults(name);
  } else {
    std::string names;
    for (const auto& n : experiment_names()) names += (names.empty() ? "" : "|") + n;
    throw std::invalid_argument("unknown experiment '" + name + "' (" + names + "|all)");
  }
  return c;
}

Json merge_config(const Json& defaults, const Json& overrides) {
  if (!overrides.is_object()) throw std::invalid_argument("config overrides must be a JSON object");
  Json out = defaults;
  for (const auto& [key, value] : overrides.items()) {
    if (!defaults.contains(key)) throw std::invalid_argument("unknown config key '" + key + "'");
    if (key == "which" && value != defaults[key]) throw std::invalid_argument("config key 'which' is fixed by the experiment name");
    if (defaults[key].is_object() && value.is_object())
      out[key] = merge_config(defaults[key], value);
    else
      out[key] = value;
  }
  return out;
}

VerificationReport run_experiment(const std::string& name, const Json& config) {
  if (name == "indicator_norm") return run_indicator_norm(config);
  if (name == "gauge_powers") return run_gauge_powers(config);
  if (name == "conjugation") return run_conjugation(config);
  if (name == "cross_methods") return run_cross_methods(config);
  if (name == "rademacher") return run_rademacher_divergence(config);
  if (name == "gaussian_limits") return run_gaussian_limits(config);
  if (name == "homogeneous") return run_homogeneous_constraint(config);
  if (is_bound_suite(name)) return run_bound_suite(config);
  (void)default_config(name);  // throws with the list of names
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

std::string report_json(const VerificationReport& r) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["experiment"] = r.name;
  j["config"] = r.config;
  j["summary"] = r.summary;
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(Json{{"claim", v.claim}, {"pass", v.pass}, {"detail", v.detail}});
  j["verdicts"] = verdicts;
  j["passed"] = r.passed();
  Json trials = Json::array();
  for (const auto& row : r.rows) {
    Json t = Json::object();
    for (std::size_t i = 0; i < r.columns.size() && i < row.size(); ++i) t[r.columns[i]] = row[i];
    trials.push_back(std::move(t));
  }
  j["trials"] = trials;
  return j.dump(2) + "\n";
}

std::string report_csv(const VerificationReport& r) {
  std::string out;
  for (std::size_t i = 0; i < r.columns.size(); ++i) out += (i ? "," : "") + r.columns[i];
  out += '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
    out += '\n';
  }
  return out;
}

void write_report(const VerificationReport& report, const std::filesystem::path& dir) {
  write_text(dir / (report.name + ".json"), report_json(report));
  write_text(dir / (report.name + ".csv"), report_csv(report));
}

}  // namespace orlicz
