#include "orlicz/dilation_gauge.hpp"
#include "orlicz/function_lab.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace orlicz;

TEST(GaugeLower, Examples) {
  EXPECT_NEAR(gauge_lower(YoungFunction::power(2), 4.0), 0.5, 1e-12);
  for (const auto& phi : {YoungFunction::power(3), YoungFunction::exp_minus_one(), YoungFunction::indicator_window(2)})
    EXPECT_NEAR(gauge_lower(phi, 1.0), 1.0, 1e-15) << phi.describe();
}

TEST(GaugeLower, ExpAgainstDenseScan) {
  const auto phi = YoungFunction::exp_minus_one();
  const auto grid = log_grid(1e-6, 1e6, 2048);
  // Independent scan of ln(1 + mu) / ln(1 + 2 mu) at 10^6 points.
  double oracle = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const double mu = std::pow(10.0, -6.0 + 12.0 * i / (n - 1));
    oracle = std::max(oracle, std::log1p(mu) / std::log1p(2.0 * mu));
  }
  EXPECT_NEAR(gauge_lower(phi, 2.0, grid), oracle, 1e-12);
}

TEST(GaugeLower, NoFiniteRatio) {
  const std::vector<double> grid{kInf};
  EXPECT_THROW((void)gauge_lower(YoungFunction::power(2), 2.0, grid), Error);
}

TEST(GaugeUpper, Examples) {
  const auto phi = YoungFunction::power(2);
  EXPECT_NEAR(gauge_upper(phi, 4.0, {phi, phi}), 0.5, 1e-15);
  EXPECT_NEAR(gauge_upper(YoungFunction::exp_minus_one(), 0.5), 2.0, 1e-15);
  EXPECT_NEAR(gauge_upper(YoungFunction::power(1), 8.0), 0.125, 1e-15);
}

TEST(GaugeUpper, RejectsFalseCertificate) {
  const auto phi = YoungFunction::power(2);
  try {
    (void)gauge_upper(phi, 4.0, {YoungFunction::power(1), std::nullopt});
    FAIL() << "expected CertificateError";
  } catch (const CertificateError& e) {
    // s^1 > s^2 for s < 1 breaks the minorant inequality.
    EXPECT_LT(e.s(), 1.0);
  }
  EXPECT_THROW((void)gauge_upper(phi, 4.0, {std::nullopt, YoungFunction::power(3)}), CertificateError);
}

TEST(Gauge, PowerExactness) {
  for (double p : {1.0, 2.0, 4.0}) {
    const auto phi = YoungFunction::power(p);
    for (double lambda : {0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
      const double expect = std::pow(lambda, -1.0 / p);
      EXPECT_NEAR(gauge_lower(phi, lambda), expect, 1e-6);
      EXPECT_NEAR(gauge_upper(phi, lambda), expect, 1e-6);
    }
  }
}

TEST(Gauge, SandwichMonotoneSubmultiplicative) {
  const std::vector<YoungFunction> phis = {YoungFunction::power(1.5), YoungFunction::power_over_p(3),
                                           YoungFunction::exp_minus_one(), YoungFunction::indicator_window(2),
                                           YoungFunction::piecewise_linear({0, 1, 2, 4}, {0, 0.5, 2, 8})};
  const auto lambdas = log_grid(1e-3, 1e3, 31);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const auto& phi : phis) {
    double prev_lo = kInf, prev_hi = kInf;
    for (double lambda : lambdas) {
      const auto e = estimate_gauge(phi, lambda);
      EXPECT_LE(e.lower, e.upper + 1e-9) << phi.describe() << " " << lambda;
      EXPECT_LE(e.crude_lo, e.lower + 1e-12);
      EXPECT_LE(e.upper, e.crude_hi + 1e-12);
      EXPECT_LE(e.lower, prev_lo + 1e-12);
      EXPECT_LE(e.upper, prev_hi + 1e-12);
      prev_lo = e.lower;
      prev_hi = e.upper;
    }
    for (int i = 0; i < 50; ++i) {
      const double a = std::pow(10.0, u(rng)), b = std::pow(10.0, u(rng));
      EXPECT_LE(gauge_upper(phi, a * b), gauge_upper(phi, a) * gauge_upper(phi, b) * (1 + 1e-12));
    }
  }
}

TEST(Gauge, EmpiricalDilationRatios) {
  const Grid g{32.0, 4096};
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& phi : {YoungFunction::power(2), YoungFunction::exp_minus_one(), YoungFunction::power(1)}) {
    for (int i = 0; i < 50; ++i) {
      const double lambda = std::pow(2.0, std::floor(4.0 * u(rng)) - 1.0);  // 1/2 .. 4
      // Indicator lengths are multiples of 1/16 so D_lambda maps cells onto cells.
      SampledFunction f = (i % 2 == 0) ? indicator(g, (4.0 + std::floor(64.0 * u(rng))) / 16.0, -2.0)
                                       : gaussian(g, 0.5 + u(rng), 2.0 * u(rng) - 1.0, 3.0 * u(rng));
      const double ratio = luxemburg_norm(dilate(f, lambda), phi) / luxemburg_norm(f, phi);
      EXPECT_LE(ratio, gauge_upper(phi, lambda) * (1 + 1e-6)) << phi.describe() << " i=" << i;
    }
  }
}

TEST(Boyd, Powers) {
  const auto b2 = boyd_indices(YoungFunction::power(2));
  EXPECT_NEAR(b2.lower_index, 0.5, 1e-6);
  EXPECT_NEAR(b2.upper_index, 0.5, 1e-6);
  EXPECT_TRUE(b2.exact_gauge);
  const auto b1 = boyd_indices(YoungFunction::power(1));
  EXPECT_NEAR(b1.lower_index, 1.0, 1e-6);
  EXPECT_NEAR(b1.upper_index, 1.0, 1e-6);
  EXPECT_THROW((void)boyd_indices(YoungFunction::power(2), 1e-2, 1e6), std::invalid_argument);
}

TEST(Boyd, ExpAgainstFiniteDifference) {
  const auto phi = YoungFunction::exp_minus_one();
  const auto b = boyd_indices(phi);
  EXPECT_FALSE(b.exact_gauge);
  EXPECT_LE(b.lower_index, b.upper_index + 1e-9);
  // Oracle: secant slope of ln h over the outermost decade on each side,
  // with h(t) = sup_mu ln(1 + mu) / ln(1 + mu / t) evaluated directly.
  const auto h = [](double t) {
    double best = 0.0;
    for (int i = 0; i <= 20000; ++i) {
      const double mu = std::pow(10.0, -8.0 + 16.0 * i / 20000.0);
      best = std::max(best, std::log1p(mu) / std::log1p(mu / t));
    }
    return best;
  };
  const double lo_fd = (std::log(h(1e-5)) - std::log(h(1e-6))) / std::log(10.0);
  const double hi_fd = (std::log(h(1e6)) - std::log(h(1e5))) / std::log(10.0);
  EXPECT_NEAR(b.lower_index, lo_fd, 0.05);
  EXPECT_NEAR(b.upper_index, hi_fd, 0.05);
}

TEST(WeightW, Examples) {
  const auto p2 = YoungFunction::power(2), p1 = YoungFunction::power(1), p4 = YoungFunction::power(4);
  EXPECT_NEAR(weight_W(p2, p2, p1, 4.0), 1.0, 1e-12);
  for (double t : {0.1, 0.5, 3.0, 20.0}) EXPECT_NEAR(weight_W(p4, p4, p1, t), std::sqrt(t), 1e-12 * std::sqrt(t));
  const auto e = YoungFunction::exp_minus_one();
  EXPECT_DOUBLE_EQ(weight_W(e, p2, YoungFunction::indicator_window(2), 1.0), 1.0);
}
