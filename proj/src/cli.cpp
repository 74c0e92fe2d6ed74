#include "orlicz/cli.hpp"

#include "orlicz/dilation_gauge.hpp"
#include "orlicz/dsl.hpp"
#include "orlicz/experiments.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

namespace orlicz {

namespace {

std::string short_real(double v) {
  if (!std::isfinite(v)) return format_real(v);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("config '" + path + "' is not valid JSON: " + e.what());
  }
}

// Artifact for the query subcommands: the resolved config next to the result.
void write_artifact(const std::string& path, const std::string& command, const Json& config, const Json& result) {
  if (path.empty()) return;
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = command;
  j["config"] = config;
  j["result"] = result;
  write_text(path, j.dump(2) + "\n");
}

Json real(double v) {
  if (std::isfinite(v)) return v;
  return format_real(v);
}

struct VerifyOptions {
  std::string name;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "reports";
  std::optional<double> p1, p2, p3, a;
  std::optional<std::size_t> N;
};

Json resolve_config(const std::string& name, const VerifyOptions& o, const Json& file, bool all) {
  Json c = default_config(name);
  if (!file.is_null()) c = merge_config(c, file);
  if (o.seed && (c.contains("seed") || !all)) {
    if (!c.contains("seed")) throw std::invalid_argument("--seed: experiment '" + name + "' is not randomized");
    c["seed"] = *o.seed;
  }
  const bool rademacher_flags = o.p1 || o.p2 || o.p3 || o.a || o.N;
  if (rademacher_flags) {
    if (name != "rademacher") throw std::invalid_argument("--p1/--p2/--p3/--a/--N apply to 'verify rademacher' only");
    const auto spec = [](double p) { return "power:p=" + format_real(p); };
    if (o.p1) c["phis"][0] = spec(*o.p1);
    if (o.p2) c["phis"][1] = spec(*o.p2);
    if (o.p3) c["phis"][2] = spec(*o.p3);
    if (o.a) c["a"] = *o.a;
    if (o.N) c["N_max"] = *o.N;
  }
  return c;
}

int run_verify(const VerifyOptions& o, std::ostream& out) {
  std::vector<std::string> names;
  if (o.name == "all")
    names = experiment_names();
  else {
    (void)default_config(o.name);  // validates the name
    names = {o.name};
  }
  const Json file = o.config_path.empty() ? Json() : read_json_file(o.config_path);
  if (!file.is_null() && !file.is_object()) throw std::invalid_argument("--config must hold a JSON object");
  if (o.name == "all" && !file.is_null())
    for (const auto& [key, value] : file.items())
      if (std::find(names.begin(), names.end(), key) == names.end())
        throw std::invalid_argument("--config: unknown experiment '" + key + "'");

  // Resolve every config before running anything, so usage errors come first.
  std::vector<Json> configs;
  for (const auto& name : names) {
    Json overrides;
    if (!file.is_null()) overrides = o.name == "all" ? (file.contains(name) ? file[name] : Json()) : file;
    configs.push_back(resolve_config(name, o, overrides, o.name == "all"));
  }
  bool all_pass = true;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto report = run_experiment(names[i], configs[i]);
    write_report(report, o.out_dir);
    std::size_t ok = 0;
    std::string failed;
    for (const auto& v : report.verdicts) {
      if (v.pass)
        ++ok;
      else
        failed += "; failed: " + v.claim + " (" + v.detail + ")";
    }
    all_pass = all_pass && report.passed();
    out << names[i] << ": " << (report.passed() ? "PASS" : "FAIL") << " (" << ok << "/" << report.verdicts.size()
        << " verdicts)" << failed << "\n";
  }
  return all_pass ? kExitOk : kExitFailed;
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orlicz-space and bilinear multiplier laboratory", "orlicz_lab"};
  app.require_subcommand(1);
  std::function<int()> action;

  // young
  auto* young = app.add_subcommand("young", "Young function queries");
  young->require_subcommand(1);
  std::string phi_spec, out_path;
  double x = 0.0, y = 0.0, lo = 1e-3, hi = 1e3;

  auto* ye = young->add_subcommand("eval", "print Phi(x)");
  ye->add_option("--phi", phi_spec, "Young spec")->required();
  ye->add_option("--x", x, "argument")->required();
  ye->add_option("--out", out_path, "JSON artifact path");
  ye->callback([&] {
    action = [&] {
      const double v = parse_young(phi_spec)(x);
      out << short_real(v) << "\n";
      write_artifact(out_path, "young eval", Json{{"phi", phi_spec}, {"x", x}}, Json{{"value", real(v)}});
      return kExitOk;
    };
  });

  auto* yi = young->add_subcommand("inverse", "print Phi^-1(y)");
  yi->add_option("--phi", phi_spec, "Young spec")->required();
  yi->add_option("--y", y, "argument")->required();
  yi->add_option("--out", out_path, "JSON artifact path");
  yi->callback([&] {
    action = [&] {
      const double v = parse_young(phi_spec).inverse(y);
      out << short_real(v) << "\n";
      write_artifact(out_path, "young inverse", Json{{"phi", phi_spec}, {"y", y}}, Json{{"value", real(v)}});
      return kExitOk;
    };
  });

  auto* yc = young->add_subcommand("complement", "print Psi(y) for the complementary function");
  yc->add_option("--phi", phi_spec, "Young spec")->required();
  yc->add_option("--y", y, "argument")->required();
  yc->add_option("--out", out_path, "JSON artifact path");
  yc->callback([&] {
    action = [&] {
      const double v = complement(parse_young(phi_spec))(y);
      out << short_real(v) << "\n";
      write_artifact(out_path, "young complement", Json{{"phi", phi_spec}, {"y", y}}, Json{{"value", real(v)}});
      return kExitOk;
    };
  });

  auto* yd = young->add_subcommand("delta2", "estimate sup Phi(2x)/Phi(x) on [lo, hi]");
  yd->add_option("--phi", phi_spec, "Young spec")->required();
  yd->add_option("--lo", lo, "lower end of the x range")->capture_default_str();
  yd->add_option("--hi", hi, "upper end of the x range")->capture_default_str();
  yd->add_option("--out", out_path, "JSON artifact path");
  yd->callback([&] {
    action = [&] {
      const auto r = check_delta2(parse_young(phi_spec), lo, hi);
      out << (r.holds ? "holds" : "fails") << " k=" << short_real(r.k) << "\n";
      write_artifact(out_path, "young delta2", Json{{"phi", phi_spec}, {"lo", lo}, {"hi", hi}},
                     Json{{"holds", r.holds}, {"k", real(r.k)}});
      return kExitOk;
    };
  });

  std::string kind = "hoelder", phi1, phi2, phi3;
  auto* yt = young->add_subcommand("triple", "check Phi1^-1 Phi2^-1 <= Phi3^-1 (hoelder) or <= x Phi3^-1 (young_conv)");
  yt->add_option("--kind", kind, "hoelder | young_conv")->check(CLI::IsMember({"hoelder", "young_conv"}))->capture_default_str();
  yt->add_option("--phi1", phi1, "Young spec")->required();
  yt->add_option("--phi2", phi2, "Young spec")->required();
  yt->add_option("--phi3", phi3, "Young spec")->required();
  yt->add_option("--lo", lo, "lower end of the check grid")->capture_default_str();
  yt->add_option("--hi", hi, "upper end of the check grid")->capture_default_str();
  yt->add_option("--out", out_path, "JSON artifact path");
  yt->callback([&] {
    action = [&] {
      const auto k = kind == "hoelder" ? TripleKind::hoelder : TripleKind::young_conv;
      const auto r = check_triple(k, parse_young(phi1), parse_young(phi2), parse_young(phi3), log_grid(lo, hi, 241));
      out << (r.holds() ? "holds" : "fails") << " max_relative_violation=" << short_real(r.max_relative_violation)
          << " at x=" << short_real(r.worst_x) << "\n";
      write_artifact(out_path, "young triple",
                     Json{{"kind", kind}, {"phi1", phi1}, {"phi2", phi2}, {"phi3", phi3}, {"lo", lo}, {"hi", hi}},
                     Json{{"holds", r.holds()}, {"max_relative_violation", real(r.max_relative_violation)},
                          {"worst_x", r.worst_x}});
      return kExitOk;
    };
  });

  // norm
  std::string f_spec, g_spec;
  double L = 32.0, gamma = 1.0;
  std::size_t n = 4096;
  auto* norm = app.add_subcommand("norm", "Luxemburg norm N_Phi(f)");
  norm->add_option("--f", f_spec, "function spec")->required();
  norm->add_option("--phi", phi_spec, "Young spec")->required();
  norm->add_option("--L", L, "grid half width")->capture_default_str();
  norm->add_option("--n", n, "grid nodes (power of two)")->capture_default_str();
  norm->add_option("--gamma", gamma, "modular level")->capture_default_str();
  norm->add_option("--out", out_path, "JSON artifact path");
  norm->callback([&] {
    action = [&] {
      Grid grid{L, n};
      grid.validate();
      const auto f = parse_function(f_spec, grid);
      const double v = luxemburg_norm(f, parse_young(phi_spec), gamma);
      out << short_real(v) << "\n";
      write_artifact(out_path, "norm",
                     Json{{"f", f_spec}, {"phi", phi_spec}, {"L", f.grid.half_width}, {"n", f.grid.n}, {"gamma", gamma}},
                     Json{{"norm", real(v)}});
      return kExitOk;
    };
  });

  // gauge
  double lambda = 1.0;
  auto* gauge = app.add_subcommand("gauge", "dilation gauge C_Phi(lambda), lower and upper");
  gauge->add_option("--phi", phi_spec, "Young spec")->required();
  gauge->add_option("--lambda", lambda, "dilation factor")->required();
  gauge->add_option("--out", out_path, "JSON artifact path");
  gauge->callback([&] {
    action = [&] {
      const auto phi = parse_young(phi_spec);
      const double l = gauge_lower(phi, lambda);
      double u = kInf;
      std::string note;
      try {
        u = gauge_upper(phi, lambda);
      } catch (const Error& e) {
        note = e.what();
      }
      out << "lower=" << short_real(l) << " upper=" << short_real(u) << (note.empty() ? "" : " (" + note + ")") << "\n";
      Json result{{"lower", real(l)}, {"upper", real(u)}};
      if (!note.empty()) result["upper_note"] = note;
      write_artifact(out_path, "gauge", Json{{"phi", phi_spec}, {"lambda", lambda}}, result);
      return kExitOk;
    };
  });

  // boyd
  double t_lo = 1e-6, t_hi = 1e6, decades = 2.0;
  auto* boyd = app.add_subcommand("boyd", "Boyd indices from fitted gauge slopes");
  boyd->add_option("--phi", phi_spec, "Young spec")->required();
  boyd->add_option("--t-lo", t_lo, "smallest t")->capture_default_str();
  boyd->add_option("--t-hi", t_hi, "largest t")->capture_default_str();
  boyd->add_option("--fit-decades", decades, "decades used by each fit")->capture_default_str();
  boyd->add_option("--out", out_path, "JSON artifact path");
  boyd->callback([&] {
    action = [&] {
      const auto b = boyd_indices(parse_young(phi_spec), t_lo, t_hi, decades);
      out << "lower_index=" << short_real(b.lower_index) << " upper_index=" << short_real(b.upper_index)
          << " residual=" << short_real(b.residual) << (b.exact_gauge ? "" : " (from lower gauges)") << "\n";
      write_artifact(out_path, "boyd", Json{{"phi", phi_spec}, {"t_lo", t_lo}, {"t_hi", t_hi}, {"fit_decades", decades}},
                     Json{{"lower_index", real(b.lower_index)}, {"upper_index", real(b.upper_index)},
                          {"residual", real(b.residual)}, {"exact_gauge", b.exact_gauge}});
      return kExitOk;
    };
  });

  // bm
  std::string symbol_spec, method = "auto", format;
  auto* bm = app.add_subcommand("bm", "evaluate B_m(f, g) on a grid");
  bm->add_option("--symbol", symbol_spec, "symbol spec")->required();
  bm->add_option("--f", f_spec, "function spec")->required();
  bm->add_option("--g", g_spec, "function spec")->required();
  bm->add_option("--L", L, "grid half width")->capture_default_str();
  bm->add_option("--n", n, "grid nodes (power of two)")->capture_default_str();
  bm->add_option("--method", method, "auto | direct | kernel | halfsum | convolution | space")->capture_default_str();
  bm->add_option("--format", format, "json | csv (default: from the --out extension)")
      ->check(CLI::IsMember({"json", "csv"}));
  bm->add_option("--out", out_path, "output path");
  bm->callback([&] {
    action = [&] {
      Grid grid{L, n};
      grid.validate();
      const auto m = parse_symbol(symbol_spec);
      const auto f = parse_function(f_spec, grid), g = parse_function(g_spec, grid);
      const auto b = evaluate_bm(m, f, g, parse_method(method));
      out << "B_m(f,g): sup=" << short_real(sup_norm(b)) << " l1=" << short_real(l1_norm(b)) << " n=" << b.grid.n
          << " method=" << method << "\n";
      if (!out_path.empty()) {
        const std::string fmt = !format.empty() ? format : (out_path.size() > 4 && out_path.ends_with(".csv") ? "csv" : "json");
        if (fmt == "csv") {
          write_text(out_path, to_csv(function_table(b)));
        } else {
          Json xs = Json::array(), re = Json::array(), im = Json::array();
          for (std::size_t j = 0; j < b.values.size(); ++j) {
            xs.push_back(b.grid.node(j));
            re.push_back(real(b.values[j].real()));
            im.push_back(real(b.values[j].imag()));
          }
          write_artifact(out_path, "bm",
                         Json{{"symbol", symbol_spec}, {"f", f_spec}, {"g", g_spec}, {"L", b.grid.half_width},
                              {"n", b.grid.n}, {"method", method}},
                         Json{{"x", xs}, {"re", re}, {"im", im}});
        }
      }
      return kExitOk;
    };
  });

  // verify
  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "run an experiment (or all) and write JSON and CSV reports");
  std::string names = "all";
  for (const auto& e : experiment_names()) names += " | " + e;
  verify->add_option("name", vo.name, names)->required();
  verify->add_option("--config", vo.config_path, "JSON overrides (keyed by experiment name for 'all')");
  verify->add_option("--seed", vo.seed, "seed for randomized experiments (shipped configs pin 7)");
  verify->add_option("--out", vo.out_dir, "report directory")->capture_default_str();
  verify->add_option("--p1", vo.p1, "rademacher: exponent of Phi1");
  verify->add_option("--p2", vo.p2, "rademacher: exponent of Phi2");
  verify->add_option("--p3", vo.p3, "rademacher: exponent of Phi3");
  verify->add_option("--a", vo.a, "rademacher: tooth length");
  verify->add_option("--N", vo.N, "rademacher: largest N");
  verify->callback([&] { action = [&] { return run_verify(vo, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    return action();
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "usage error: config: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  }
}

}  // namespace orlicz
