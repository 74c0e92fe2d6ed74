#pragma once

#include "orlicz/bilinear.hpp"
#include "orlicz/young.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace orlicz {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

struct Verdict {
  std::string claim;
  bool pass = false;
  std::string detail;
};

/// Output of one experiment. The config echo fully determines the run, so
/// equal configs give byte-identical reports.
struct VerificationReport {
  VerificationReport() = default;
  VerificationReport(std::string name_, Json config_, std::vector<std::string> columns_)
      : name(std::move(name_)), config(std::move(config_)), columns(std::move(columns_)) {}

  std::string name;
  Json config;
  std::vector<std::string> columns;  // per-trial CSV header
  std::vector<std::vector<Json>> rows;
  Json summary = Json::object();
  std::vector<Verdict> verdicts;

  [[nodiscard]] bool passed() const;
};

/// Names accepted by run_experiment, in `verify all` order.
[[nodiscard]] const std::vector<std::string>& experiment_names();

/// Shipped configuration of an experiment; throws std::invalid_argument for
/// an unknown name.
[[nodiscard]] Json default_config(const std::string& name);

/// Overlays `overrides` onto `defaults` key by key (objects recurse);
/// unknown keys throw std::invalid_argument.
[[nodiscard]] Json merge_config(const Json& defaults, const Json& overrides);

/// Runs the named experiment with a full config (see default_config).
[[nodiscard]] VerificationReport run_experiment(const std::string& name, const Json& config);

// One entry point per experiment; each takes its full config.
[[nodiscard]] VerificationReport run_indicator_norm(const Json& config);
[[nodiscard]] VerificationReport run_gauge_powers(const Json& config);
[[nodiscard]] VerificationReport run_conjugation(const Json& config);
[[nodiscard]] VerificationReport run_cross_methods(const Json& config);
[[nodiscard]] VerificationReport run_rademacher_divergence(const Json& config);
[[nodiscard]] VerificationReport run_gaussian_limits(const Json& config);
[[nodiscard]] VerificationReport run_homogeneous_constraint(const Json& config);
/// config["which"] is one of mt1, mt2, corollary_L1, corollary_Linf, prop31,
/// prop32, prop_convo.
[[nodiscard]] VerificationReport run_bound_suite(const Json& config);

// Closed-form pieces, exposed for testing.

/// R(N) = Phi1^-1(1/(Na)) Phi2^-1(1/(Na)) / Phi3^-1(1/(Na)).
[[nodiscard]] double rademacher_ratio(const YoungFunction& phi1, const YoungFunction& phi2,
                                      const YoungFunction& phi3, double a, double N);
/// Lemma bound ||g||_1 / (a Phi^-1(1 / (a (N + 1)))) for a comb of N + 1 teeth.
[[nodiscard]] double comb_norm_lower_bound(const YoungFunction& phi, double g_l1, double a, std::size_t N);
/// F_M(lambda) = |int e^{-lambda^2 v^2} M(v) dv| by the trapezoid rule on
/// M's grid; throws Error when lambda > 0.846 / dv leaves the Gaussian unresolved.
[[nodiscard]] double gaussian_functional(const SampledFunction& M, double lambda);
/// Largest lambda gaussian_functional accepts on M's grid.
[[nodiscard]] double max_usable_lambda(const SampledFunction& M);

/// Serialisation: JSON with schema version, CSV with one row per trial.
[[nodiscard]] std::string report_json(const VerificationReport& report);
[[nodiscard]] std::string report_csv(const VerificationReport& report);
/// Writes <dir>/<name>.json and <dir>/<name>.csv.
void write_report(const VerificationReport& report, const std::filesystem::path& dir);

}  // namespace orlicz
