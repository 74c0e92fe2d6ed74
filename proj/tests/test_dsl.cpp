#include "orlicz/dsl.hpp"
#include "orlicz/experiments.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <random>

using namespace orlicz;

namespace {

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("orlicz_dsl_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST(Dsl, YoungSpecs) {
  EXPECT_DOUBLE_EQ(parse_young("power:p=2")(3.0), 9.0);
  EXPECT_DOUBLE_EQ(parse_young(" powerp:p=2 ")(3.0), 4.5);
  EXPECT_NEAR(parse_young("exp")(1.0), std::exp(1.0) - 1.0, 1e-15);
  EXPECT_EQ(parse_young("window:c=2")(3.0), kInf);
  EXPECT_EQ(parse_young("window:c=2")(1.0), 0.0);
  EXPECT_DOUBLE_EQ(parse_young("linear:c=0.5")(4.0), 2.0);
  EXPECT_NEAR(parse_young("complement(powerp:p=2)")(3.0), 4.5, 1e-6);
  EXPECT_EQ(parse_young("power:p=3").kind(), YoungKind::power);
}

TEST(Dsl, YoungSpecErrors) {
  for (const char* bad : {"power", "power:q=2", "power:p=2,p=3", "power:p=two", "cosh", "complement(power:p=2",
                          "exp:p=1"})
    EXPECT_THROW((void)parse_young(bad), std::invalid_argument) << bad;
  try {
    (void)parse_young("power:q=2");
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("accepted: p"), std::string::npos);
  }
}

TEST(Dsl, FunctionSpecs) {
  const Grid g{8.0, 256};
  const auto f = parse_function("indicator:a=2,start=-1", g);
  EXPECT_NEAR(l1_norm(f), 2.0, 1e-12);
  EXPECT_EQ(f.values[g.n / 2 - 1], cplx(1.0));
  EXPECT_LT(max_abs_diff(parse_function("gaussian:s=1.5,c=0.5,xi0=1", g), gaussian(g, 1.5, 0.5, 1.0)), 1e-15);
  EXPECT_LT(max_abs_diff(parse_function("gaussian", g), gaussian(g, 1.0)), 1e-15);
  EXPECT_LT(max_abs_diff(parse_function("sinc:w=2", g), sinc(g, 2.0)), 1e-15);
  EXPECT_LT(max_abs_diff(parse_function("bl_gauss:xi0=0.5", g), bl_gauss(g, 0.5)), 1e-15);
  EXPECT_THROW((void)parse_function("indicator", g), std::invalid_argument);
  EXPECT_THROW((void)parse_function("box:a=1", g), std::invalid_argument);
}

TEST(Dsl, SymbolSpecs) {
  EXPECT_EQ(parse_symbol("constant:c=2")(0.3, 0.1), cplx(2.0));
  EXPECT_EQ(parse_symbol("constant")(0.3, 0.1), cplx(1.0));
  const auto gs = parse_symbol("difference:gauss:w=2,c=0.5");
  EXPECT_NEAR(gs(1.0, 0.0).real(), std::exp(-0.0625), 1e-15);
  EXPECT_TRUE(gs.is_difference());
  EXPECT_EQ(parse_symbol("difference:sign:W=3")(2.0, 0.0), cplx(1.0));
  EXPECT_EQ(parse_symbol("difference:sign:W=3")(0.0, 4.0), cplx(0.0));
  EXPECT_NEAR(parse_symbol("difference:bump")(0.0, 0.0).real(), 1.0, 1e-15);
  const auto mu = parse_symbol("measure:delta@0,1;delta@1,0.5:alpha=2,beta=1");
  EXPECT_EQ(mu.form(), SymbolForm::measure_hat);
  EXPECT_EQ(mu.alpha(), 2.0);
  EXPECT_EQ(mu.beta(), 1.0);
  EXPECT_DOUBLE_EQ(mu.measure().total_variation(), 1.5);
  const double xi = 0.1, eta = 0.05;  // mu^(2 xi + eta)
  EXPECT_LT(std::abs(mu(xi, eta) - (1.0 + 0.5 * std::polar(1.0, -2.0 * kPi * 0.25))), 1e-15);
  EXPECT_EQ(parse_symbol("measure:delta@0,1").beta(), -1.0);
  for (const char* bad : {"difference:sign", "difference:tri", "measure:", "measure:dirac@0,1", "measure:delta@0", "hilbert"})
    EXPECT_THROW((void)parse_symbol(bad), std::invalid_argument) << bad;
}

TEST(Dsl, RealsRoundTripBitExact) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-300.0, 300.0);
  for (int i = 0; i < 2000; ++i) {
    const double v = std::copysign(std::pow(10.0, u(rng)), u(rng));
    EXPECT_TRUE(bit_equal(parse_real(format_real(v)), v)) << format_real(v);
  }
  EXPECT_EQ(format_real(kInf), "inf");
  EXPECT_EQ(parse_real("-inf"), -kInf);
  EXPECT_TRUE(std::isnan(parse_real("nan")));
  EXPECT_THROW((void)parse_real("1.5x"), std::invalid_argument);
  EXPECT_THROW((void)parse_real(""), std::invalid_argument);
}

TEST(Dsl, FunctionCsvRoundTrip) {
  const auto dir = temp_dir("fn");
  const Grid g{4.0, 128};
  const auto f = scale(gaussian(g, 0.7, 0.3, 1.25), cplx(0.3, -1.1));
  write_text(dir / "f.csv", to_csv(function_table(f)));
  const auto back = parse_function("@" + (dir / "f.csv").string(), Grid{1.0, 8});
  ASSERT_EQ(back.grid, g);
  for (std::size_t j = 0; j < g.n; ++j) {
    EXPECT_TRUE(bit_equal(back.values[j].real(), f.values[j].real()));
    EXPECT_TRUE(bit_equal(back.values[j].imag(), f.values[j].imag()));
  }
  write_text(dir / "bad.csv", "x,re,im\n0,1,0\n0.5,1,0\n2,1,0\n");
  EXPECT_THROW((void)read_function_csv(dir / "bad.csv"), std::invalid_argument);
  write_text(dir / "short.csv", "x,re\n0,1\n");
  EXPECT_THROW((void)read_function_csv(dir / "short.csv"), std::invalid_argument);
}

TEST(Dsl, YoungAndSymbolFromCsv) {
  const auto dir = temp_dir("tables");
  write_text(dir / "phi.csv", "x,y\n0,0\n1,1\n2,4\n");
  const auto phi = parse_young("@" + (dir / "phi.csv").string());
  EXPECT_DOUBLE_EQ(phi(1.5), 2.5);
  write_text(dir / "m.csv", "v,re,im\n-1,0,0\n0,1,0.5\n1,0,0\n");
  const auto m = parse_symbol("difference:@" + (dir / "m.csv").string());
  EXPECT_TRUE(m.is_difference());
  EXPECT_LT(std::abs(m(0.75, 0.25) - cplx(0.5, 0.25)), 1e-15);
}

TEST(Dsl, ReportJsonReloadsEqual) {
  auto c = merge_config(default_config("gauge_powers"), {{"ps", {2.0}}, {"lambdas", {0.1, 3.0}}});
  const auto r = run_experiment("gauge_powers", c);
  const auto text = report_json(r);
  const auto j = Json::parse(text);
  EXPECT_EQ(j["config"], c);
  ASSERT_EQ(j["trials"].size(), r.rows.size());
  for (std::size_t i = 0; i < r.rows.size(); ++i)
    for (std::size_t k = 0; k < r.columns.size(); ++k)
      EXPECT_TRUE(bit_equal(j["trials"][i][r.columns[k]].get<double>(), r.rows[i][k].get<double>()));
  EXPECT_EQ(j.dump(2) + "\n", text);

  // CSV cells reload bit-exactly through parse_real.
  const auto dir = temp_dir("report");
  write_report(r, dir);
  const auto table = read_csv(dir / "gauge_powers.csv");
  ASSERT_EQ(table.header, r.columns);
  for (std::size_t i = 0; i < r.rows.size(); ++i)
    for (std::size_t k = 0; k < r.columns.size(); ++k)
      EXPECT_TRUE(bit_equal(table.rows[i][k], r.rows[i][k].get<double>()));
}
