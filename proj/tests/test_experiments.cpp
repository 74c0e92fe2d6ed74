#include "orlicz/dsl.hpp"
#include "orlicz/experiments.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace orlicz;

namespace {

const Json& find_row(const Json& report, const std::string& key, const Json& value) {
  for (const auto& t : report.at("trials"))
    if (t.contains(key) && t.at(key) == value) return t;
  throw std::runtime_error("row not found");
}

Json run(const std::string& name, const Json& overrides = Json::object()) {
  return Json::parse(report_json(run_experiment(name, merge_config(default_config(name), overrides))));
}

// k with (e^{1/k} - 1) a = 1, by bisection on a bracket.
double exp_indicator_norm(double a) {
  double lo = 1e-3, hi = 1e3;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((std::exp(1.0 / mid) - 1.0) * a > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(RademacherRatio, ClosedForms) {
  const auto p = [](double e) { return YoungFunction::power(e); };
  for (double N : {1.0, 2.0, 7.0, 64.0, 256.0}) {
    EXPECT_NEAR(rademacher_ratio(p(4), p(4), p(1), 1.0, N), std::sqrt(N), 1e-12 * std::sqrt(N));
    EXPECT_NEAR(rademacher_ratio(p(2), p(2), p(1), 1.0, N), 1.0, 1e-12);
    // (1/(Na))^{1/4 + 1/4 - 1/1.5}
    EXPECT_NEAR(rademacher_ratio(p(4), p(4), p(1.5), 2.0, N), std::pow(1.0 / (2.0 * N), 0.5 - 1.0 / 1.5), 1e-12);
  }
}

TEST(RademacherRatio, CombBoundForPowers) {
  // g = chi_[0,a): ||g||_1 = a, bound (a (N+1))^{1/p}.
  for (std::size_t N : {1u, 4u, 16u})
    EXPECT_NEAR(comb_norm_lower_bound(YoungFunction::power(2), 1.5, 1.5, N), std::sqrt(1.5 * (N + 1.0)), 1e-12);
}

TEST(Experiments, RademacherDefaultIsDivergentWithSlopeHalf) {
  const auto r = run("rademacher", {{"comb_N", {1, 4}}, {"sign_vectors", 4}});
  EXPECT_TRUE(r["passed"].get<bool>());
  EXPECT_NEAR(r["summary"]["fitted_slope"].get<double>(), 0.5, 0.01);
  EXPECT_EQ(r["summary"]["classification"], "divergent");
  EXPECT_EQ(r["summary"]["comb_failures"], 0);
  // R(N) = N^{1/2}
  EXPECT_NEAR(find_row(r, "N", 100)["value"].get<double>(), 10.0, 1e-10);
}

TEST(Experiments, RademacherHoelderTripleIsBounded) {
  const auto r = run("rademacher", {{"phis", {"power:p=2", "power:p=2", "power:p=1"}}, {"comb_N", {2}}, {"sign_vectors", 2}});
  EXPECT_TRUE(r["passed"].get<bool>());
  EXPECT_NEAR(r["summary"]["fitted_slope"].get<double>(), 0.0, 1e-10);
  EXPECT_EQ(r["summary"]["classification"], "bounded");
}

TEST(Experiments, RademacherCorollaryTripleDiverges) {
  const auto r = run("rademacher", {{"phis", {"power:p=4", "power:p=4", "power:p=1.5"}}, {"comb_N", {2}}, {"sign_vectors", 2}});
  EXPECT_EQ(r["summary"]["classification"], "divergent");
  EXPECT_NEAR(r["summary"]["fitted_slope"].get<double>(), 1.0 / 1.5 - 0.5, 1e-9);
}

TEST(Experiments, RademacherGridTooSmall) {
  auto c = merge_config(default_config("rademacher"), {{"grid", {{"L", 8.0}, {"n", 1024}}}, {"comb_N", {16}}});
  try {
    (void)run_experiment("rademacher", c);
    FAIL() << "expected Error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("needs L >= 16.5"), std::string::npos) << e.what();
  }
  c["N_max"] = 4;
  EXPECT_THROW((void)run_experiment("rademacher", c), std::invalid_argument);
}

TEST(GaussianFunctional, ClosedForm) {
  const auto M = gaussian(Grid{8.0, 4096}, std::sqrt(kPi));  // e^{-v^2}
  ASSERT_NEAR(std::abs(M.values[2048]), 1.0, 1e-15);
  for (double lambda : {0.0, 1e-3, 0.5, 1.0, 3.0, 50.0})
    EXPECT_NEAR(gaussian_functional(M, lambda), std::sqrt(kPi / (1.0 + lambda * lambda)), 1e-12) << lambda;
  EXPECT_NEAR(50.0 * gaussian_functional(M, 50.0), 1.77210, 5e-6);
  EXPECT_NEAR(max_usable_lambda(M), 0.846 * 256.0, 1e-9);
  EXPECT_THROW((void)gaussian_functional(M, 300.0), Error);
}

TEST(Experiments, GaussianLimits) {
  const auto r = run("gaussian_limits");
  EXPECT_TRUE(r["passed"].get<bool>());
  const double sqrt_pi = std::sqrt(kPi);
  EXPECT_LT(std::abs(r["summary"]["lambda_F_at_max"].get<double>() - sqrt_pi) / sqrt_pi, 0.01);
  EXPECT_LT(std::abs(r["summary"]["F_at_min"].get<double>() - sqrt_pi) / sqrt_pi, 0.01);
  // (4, 4, 1): alpha proxy lambda^{1/2} vanishes, beta proxy lambda^{3/2} does not.
  EXPECT_TRUE(r["summary"]["alpha_vanishes"].get<bool>());
  EXPECT_FALSE(r["summary"]["beta_vanishes"].get<bool>());
  EXPECT_NEAR(r["summary"]["alpha_proxy_min"].get<double>(), std::pow(1e-4, 0.5), 1e-12);
  EXPECT_TRUE(r["summary"]["class_empty_flag"].get<bool>());

  auto c = merge_config(default_config("gaussian_limits"), {{"lambdas", {{"lo", 1e-3}, {"hi", 500.0}, {"n", 10}}}});
  EXPECT_THROW((void)run_experiment("gaussian_limits", c), Error);
}

TEST(Experiments, HomogeneousClassification) {
  auto r = run("homogeneous");
  EXPECT_TRUE(r["passed"].get<bool>());
  EXPECT_EQ(r["summary"]["classification"], "compatible");
  // (2, 2, 4): product t^{1/4 - 1} falls below 1 for t > 1.
  r = run("homogeneous", {{"phis", {"power:p=2", "power:p=2", "power:p=4"}}});
  EXPECT_EQ(r["summary"]["classification"], "index-incompatible");
  EXPECT_NEAR(find_row(r, "t", 1000.0)["product_upper"].get<double>(), std::pow(1000.0, -0.75), 1e-12);
  EXPECT_TRUE(r["passed"].get<bool>());
}

TEST(Experiments, IndicatorNormMatchesIndependentRoot) {
  const auto r = run("indicator_norm");
  EXPECT_TRUE(r["passed"].get<bool>());
  for (const auto& t : r["trials"]) {
    const double a = t["a"].get<double>();
    const std::string phi = t["phi"];
    double expect = 0.0;
    if (phi.find("exp") != std::string::npos)
      expect = exp_indicator_norm(a);
    else if (phi.find("p=1") != std::string::npos)
      expect = a;
    else if (phi.find("p=2") != std::string::npos)
      expect = std::sqrt(a);
    else
      expect = std::cbrt(a);
    EXPECT_NEAR(t["norm"].get<double>(), expect, 1e-7 * expect) << phi << " a=" << a;
  }
  EXPECT_NEAR(exp_indicator_norm(1.0), 1.0 / std::log(2.0), 1e-12);
}

TEST(Experiments, GaugeAndConjugation) {
  EXPECT_TRUE(run("gauge_powers")["passed"].get<bool>());
  const auto r = run("conjugation", {{"young_pairs", 500}});
  EXPECT_TRUE(r["passed"].get<bool>());
  EXPECT_EQ(r["summary"]["young_violations"], 0);
}

TEST(Experiments, FailedVerdictIsReported) {
  const auto r = run("gauge_powers", {{"abs_tol", -1.0}});
  EXPECT_FALSE(r["passed"].get<bool>());
}

TEST(BoundSuite, SmallRunsPass) {
  for (const auto& [name, trials] : std::vector<std::pair<std::string, int>>{
           {"mt1", 12}, {"mt2", 6}, {"corollary_L1", 8}, {"corollary_Linf", 6}, {"prop31", 4}, {"prop_convo", 3}}) {
    Json o = {{"trials", trials}};
    if (name == "prop_convo") o["search_symbols"] = 1;
    const auto r = run(name, o);
    EXPECT_TRUE(r["passed"].get<bool>()) << name << ": " << r["verdicts"].dump();
    EXPECT_EQ(r["trials"].size(), name == "prop31" ? 2u * trials : static_cast<std::size_t>(trials)) << name;
  }
}

TEST(BoundSuite, TwoAtomMeasureGaussians) {
  // mu = delta_0 + delta_1, (2, 2, 1): N1(B) <= 2 ||mu||_1 N2(f) N2(g) on 100 Gaussian draws.
  const Grid g{16.0, 1024};
  const auto m = parse_symbol("measure:delta@0,1;delta@1,1");
  const YoungTriple t{YoungFunction::power(2), YoungFunction::power(2), YoungFunction::power(1)};
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto pair = draw_pair(TestFamily::gaussians, g, trial_seed(11, i));
    // Direct sum over the two atoms, independent of the engine's evaluation path.
    const auto b = axpby(1.0, multiply(translate(pair.f, 0.0), translate(pair.g, 0.0)), 1.0,
                         multiply(translate(pair.f, 1.0), translate(pair.g, -1.0)));
    const auto engine = evaluate_bm(m, pair.f, pair.g);
    EXPECT_LT(max_abs_diff(engine, b), 1e-12);
    worst = std::max(worst, l1_norm(b) / (4.0 * luxemburg_norm(pair.f, t.phi1) * luxemburg_norm(pair.g, t.phi2)));
  }
  EXPECT_LE(worst, 1.0);
}

TEST(Config, MergeRejectsUnknownKeys) {
  const auto d = default_config("mt1");
  EXPECT_THROW((void)merge_config(d, {{"trails", 3}}), std::invalid_argument);
  EXPECT_THROW((void)merge_config(d, {{"which", "mt2"}}), std::invalid_argument);
  EXPECT_THROW((void)merge_config(d, {{"grid", {{"N", 3}}}}), std::invalid_argument);
  EXPECT_EQ(merge_config(d, {{"grid", {{"n", 512}}}})["grid"]["L"], 16.0);
  EXPECT_THROW((void)default_config("nope"), std::invalid_argument);
  EXPECT_THROW((void)run_bound_suite(merge_config(d, {{"trials", 0}})), std::invalid_argument);
  EXPECT_EQ(experiment_names().size(), 14u);
}

TEST(Report, JsonAndCsvLayout) {
  VerificationReport r{"demo", Json{{"k", 1}}, {"a", "b"}};
  r.rows.push_back({1.5, "x,y"});
  r.rows.push_back({Json(nullptr), "say \"hi\""});
  r.summary["inf"] = "inf";
  r.verdicts.push_back({"claim", true, "ok"});
  const auto j = Json::parse(report_json(r));
  EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
  EXPECT_EQ(j["experiment"], "demo");
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["trials"][0]["b"], "x,y");
  EXPECT_EQ(report_csv(r), "a,b\n1.5,\"x,y\"\n,\"say \"\"hi\"\"\"\n");
  EXPECT_EQ(report_json(r), report_json(r));
  VerificationReport empty{"e", Json::object(), {}};
  EXPECT_FALSE(empty.passed());
}
