#include "orlicz/bilinear.hpp"
#include "orlicz/dilation_gauge.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>

using namespace orlicz;

namespace {

// Trapezoid spectrum of f zero-padded `pad` times, by a direct O(n^2) sum.
struct Oracle {
  std::vector<double> xi;
  std::vector<cplx> F;
  double dxi = 0.0;
};

Oracle direct_spectrum(const SampledFunction& f, int pad) {
  const double L = f.grid.half_width * pad;
  const std::size_t n = f.grid.n * static_cast<std::size_t>(pad);
  const double dx = f.grid.spacing();
  Oracle o;
  o.dxi = 1.0 / (2.0 * L);
  double peak = 0.0;
  std::vector<cplx> all(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double xi = (static_cast<double>(k) - static_cast<double>(n) / 2.0) * o.dxi;
    cplx acc{};
    for (std::size_t j = 0; j < f.grid.n; ++j)
      if (f.values[j] != cplx{}) acc += f.values[j] * std::polar(1.0, -2.0 * kPi * f.grid.node(j) * xi);
    all[k] = acc * dx;
    peak = std::max(peak, std::abs(all[k]));
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(all[k]) <= 1e-15 * peak) continue;
    o.xi.push_back((static_cast<double>(k) - static_cast<double>(n) / 2.0) * o.dxi);
    o.F.push_back(all[k]);
  }
  return o;
}

// B_m(f, g)(x_j) as the plain double sum over the oracle lattices.
std::vector<cplx> oracle_bm(const std::function<cplx(double, double)>& m, const SampledFunction& f,
                            const SampledFunction& g, int pad) {
  const auto A = direct_spectrum(f, pad);
  const auto B = direct_spectrum(g, pad);
  std::vector<cplx> out(f.grid.n);
  for (std::size_t j = 0; j < f.grid.n; ++j) {
    const double x = f.grid.node(j);
    std::vector<cplx> eb(B.xi.size());
    for (std::size_t l = 0; l < B.xi.size(); ++l) eb[l] = B.F[l] * std::polar(1.0, 2.0 * kPi * B.xi[l] * x);
    cplx acc{};
    for (std::size_t k = 0; k < A.xi.size(); ++k) {
      cplx inner{};
      for (std::size_t l = 0; l < B.xi.size(); ++l) inner += eb[l] * m(A.xi[k], B.xi[l]);
      acc += A.F[k] * std::polar(1.0, 2.0 * kPi * A.xi[k] * x) * inner;
    }
    out[j] = acc * A.dxi * B.dxi;
  }
  return out;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

SampledFunction random_gaussian(const Grid& g, std::mt19937_64& rng, double s_lo = 0.8, double s_hi = 1.4) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double s = s_lo + (s_hi - s_lo) * u(rng);
  return scale(gaussian(g, s, 1.5 * (2 * u(rng) - 1), 0.8 * (2 * u(rng) - 1)), std::polar(0.5 + u(rng), 6.0 * u(rng)));
}

}  // namespace

TEST(EvaluateBm, ConstantOneIsProduct) {
  const Grid g{8.0, 512};
  const auto f = gaussian(g, 1.0, 0.5, 0.3), h = gaussian(g, 1.3, -0.4, -0.6);
  const auto prod = multiply(f, h);
  for (Method m : {Method::automatic, Method::direct})
    EXPECT_LT(max_abs_diff(evaluate_bm(Symbol::constant(1.0), f, h, m), prod), 1e-9) << to_string(m);
  const auto general_one = Symbol::general([](double, double) { return cplx{1.0}; }, "one");
  EXPECT_LT(max_abs_diff(evaluate_bm(general_one, f, h), prod), 1e-9);
}

TEST(EvaluateBm, DeltaMeasureTranslates) {
  const Grid g{8.0, 512};
  const auto f = gaussian(g, 1.0, 0.5, 0.3), h = gaussian(g, 1.3, -0.4, -0.6);
  for (double t : {0.0, 0.25, -0.75, 0.3}) {
    const auto m = Symbol::measure_hat(Measure{{{t, 1.0}}, std::nullopt}, 1.0, -1.0);
    const auto expect = multiply(translate(f, t), translate(h, -t));
    EXPECT_LT(max_abs_diff(evaluate_bm(m, f, h, Method::space_side), expect), 1e-12) << t;
    // The frequency paths see the same operator through mu^(v) = e^{-2 pi i v t}.
    EXPECT_LT(max_abs_diff(evaluate_bm(m, f, h, Method::direct), expect), 1e-9) << t;
    EXPECT_LT(max_abs_diff(evaluate_bm(m, f, h, Method::halfsum), expect), 1e-9) << t;
  }
}

TEST(EvaluateBm, GaussianProfileAllPathsAgainstOracle) {
  const Grid g{8.0, 256};
  const auto f = gaussian(g, 1.0, 0.4, 0.5), h = gaussian(g, 1.2, -0.3, -0.25);
  const auto m = Symbol::gauss(1.0, 0.2);
  const auto oracle = oracle_bm([&](double a, double b) { return m.profile(a - b); }, f, h, 4);
  double scale_ref = 0.0;
  for (const auto& v : oracle) scale_ref = std::max(scale_ref, std::abs(v));
  ASSERT_GT(scale_ref, 1e-3);
  for (Method method : {Method::direct, Method::kernel, Method::halfsum, Method::convolution}) {
    const auto b = evaluate_bm(m, f, h, method);
    EXPECT_LT(max_diff(b.values, oracle), 1e-6) << to_string(method);
  }
}

TEST(EvaluateBm, CrossMethodAgreementRandomSymbols) {
  const Grid g{8.0, 512};
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = (trial % 2 == 0) ? Symbol::gauss(0.3 + 1.5 * u(rng), 2 * u(rng) - 1)
                                    : Symbol::bump(0.5 + 2.0 * u(rng), 2 * u(rng) - 1);
    const auto f = random_gaussian(g, rng), h = random_gaussian(g, rng);
    const auto ref = evaluate_bm(m, f, h, Method::direct);
    for (Method method : {Method::kernel, Method::halfsum, Method::convolution})
      EXPECT_LT(max_abs_diff(evaluate_bm(m, f, h, method), ref), 1e-6) << to_string(method) << " trial " << trial;
  }
}

TEST(EvaluateBm, GeneralSymbolAgainstOracle) {
  const Grid g{8.0, 256};
  const auto f = gaussian(g, 1.0, 0.2, 0.4), h = gaussian(g, 1.1, -0.5, 0.1);
  const auto fn = [](double a, double b) { return cplx{std::exp(-(a * a + 2 * b * b) / 4.0), 0.3 * a * std::exp(-b * b)}; };
  const auto b = evaluate_bm(Symbol::general(fn, "test"), f, h, Method::direct);
  EXPECT_LT(max_diff(b.values, oracle_bm(fn, f, h, 4)), 1e-6);
}

TEST(EvaluateBm, SeparableMatchesGeneral) {
  const Grid g{8.0, 256};
  const auto f = gaussian(g, 1.0, 0.2, 0.4), h = gaussian(g, 1.1, -0.5, 0.1);
  const auto a = [](double x) { return cplx{std::exp(-x * x)}; };
  const auto c = [](double x) { return cplx{1.0 / (1.0 + x * x)}; };
  const auto sep = evaluate_bm(Symbol::separable(a, c, "sep"), f, h);
  const auto gen = evaluate_bm(Symbol::general([&](double x, double y) { return a(x) * c(y); }, "gen"), f, h);
  EXPECT_LT(max_abs_diff(sep, gen), 1e-12);
}

TEST(EvaluateBm, Bilinearity) {
  const Grid g{8.0, 512};
  std::mt19937_64 rng(7);
  const auto m = Symbol::gauss(0.8, 0.1);
  const cplx a{0.7, -1.3};
  const auto f1 = random_gaussian(g, rng), f2 = random_gaussian(g, rng), h = random_gaussian(g, rng);
  for (Method method : {Method::direct, Method::kernel, Method::halfsum, Method::convolution}) {
    const auto lhs = evaluate_bm(m, axpby(a, f1, 1.0, f2), h, method);
    const auto rhs = axpby(a, evaluate_bm(m, f1, h, method), 1.0, evaluate_bm(m, f2, h, method));
    EXPECT_LT(max_abs_diff(lhs, rhs), 1e-9) << to_string(method);
    const auto lhs2 = evaluate_bm(m, h, axpby(a, f1, 1.0, f2), method);
    const auto rhs2 = axpby(a, evaluate_bm(m, h, f1, method), 1.0, evaluate_bm(m, h, f2, method));
    EXPECT_LT(max_abs_diff(lhs2, rhs2), 1e-9) << to_string(method);
  }
}

TEST(EvaluateBm, Errors) {
  const Grid g{8.0, 256};
  const auto f = indicator(g, 1.0, 0.0), h = indicator(g, 0.5, -1.0);
  EXPECT_THROW((void)evaluate_bm(Symbol::gauss(), f, h, Method::kernel), Error);
  // Outside the kernel band the automatic choice falls back to the direct sum.
  EXPECT_LT(max_abs_diff(evaluate_bm(Symbol::gauss(), f, h), evaluate_bm(Symbol::gauss(), f, h, Method::direct)), 1e-15);
  const auto meas = Symbol::measure_hat(Measure{{{0.0, 1.0}}, std::nullopt}, 1.0, 1.0);
  EXPECT_THROW((void)evaluate_bm(meas, f, h, Method::kernel), std::invalid_argument);
  EXPECT_THROW((void)evaluate_bm(Symbol::gauss(), f, h, Method::space_side), std::invalid_argument);
  EXPECT_THROW((void)evaluate_bm(Symbol::constant(1.0), f, indicator(Grid{8.0, 512}, 1.0)), std::invalid_argument);
  EXPECT_FALSE(method_applies(Symbol::constant(1.0), Method::halfsum));
  EXPECT_THROW((void)parse_method("fast"), std::invalid_argument);
  EXPECT_EQ(parse_method("space"), Method::space_side);
}

TEST(LinearMultiplier, Examples) {
  const Grid g{8.0, 512};
  const auto f = gaussian(g, 1.0, 0.3, 0.7);
  EXPECT_LT(max_abs_diff(apply_linear_multiplier([](double) { return cplx{1.0}; }, f), f), 1e-12);
  const double y = 0.37;
  const auto shifted = apply_linear_multiplier([y](double xi) { return std::polar(1.0, -2.0 * kPi * y * xi); }, f);
  // tau_y of e^{2 pi i xi0 x} G(x - c) carries the phase e^{-2 pi i xi0 y}.
  const auto expect = scale(gaussian(g, 1.0, 0.3 + y, 0.7), std::polar(1.0, -2.0 * kPi * 0.7 * y));
  EXPECT_LT(max_abs_diff(shifted, expect), 1e-9);
  EXPECT_THROW((void)apply_linear_multiplier(sample(g, [](double) { return cplx{1.0}; }), f), std::invalid_argument);
}

TEST(LinearMultiplier, HalfSpectrumOfSinc) {
  const Grid g{8.0, 256};
  const auto f = sinc(g, 2.0);
  const auto out = apply_linear_multiplier([](double xi) { return cplx{xi >= 0.0 ? 1.0 : 0.0}; }, f);
  // Oracle: direct DFT on the grid's own lattice, keep xi >= 0, direct inverse sum.
  const double dx = g.spacing(), dxi = 1.0 / (2.0 * g.half_width);
  std::vector<cplx> expect(g.n);
  for (std::size_t k = 0; k < g.n; ++k) {
    const double xi = (static_cast<double>(k) - g.n / 2.0) * dxi;
    if (xi < 0.0) continue;
    cplx F{};
    for (std::size_t j = 0; j < g.n; ++j) F += f.values[j] * std::polar(1.0, -2.0 * kPi * g.node(j) * xi) * dx;
    for (std::size_t j = 0; j < g.n; ++j) expect[j] += F * std::polar(1.0, 2.0 * kPi * g.node(j) * xi) * dxi;
  }
  EXPECT_LT(max_diff(out.values, expect), 1e-10);
}

TEST(SymbolTransform, TranslationAndModulationIdentities) {
  const Grid g{8.0, 256};
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> step(-8, 8);
  const auto fn = [](double a, double b) { return cplx{std::exp(-(a * a + b * b) / 4.0), 0.2 * b * std::exp(-a * a)}; };
  const std::vector<Symbol> symbols = {Symbol::gauss(0.9, 0.3), Symbol::general(fn, "g2")};
  for (int trial = 0; trial < 50; ++trial) {
    const auto& m = symbols[static_cast<std::size_t>(trial) % 2];
    const auto f = random_gaussian(g, rng), h = random_gaussian(g, rng);
    // Frequency shifts on the padded lattice, space shifts on whole cells.
    const double x0 = step(rng) / (4.0 * g.half_width), y0 = step(rng) / (4.0 * g.half_width);
    SymbolOp op;
    op.kind = SymbolOp::Kind::translate;
    op.xi0 = x0;
    op.eta0 = y0;
    const auto tm = symbol_transform(m, op);
    EXPECT_EQ(tm.factor, 1.0);
    const auto lhs = evaluate_bm(tm.symbol, f, h, Method::direct);
    const auto rhs = modulate(evaluate_bm(m, modulate(f, -x0), modulate(h, -y0), Method::direct), x0 + y0);
    EXPECT_LT(max_abs_diff(lhs, rhs), 1e-8) << "translate trial " << trial;

    const double a0 = step(rng) * g.spacing(), b0 = step(rng) * g.spacing();
    op.kind = SymbolOp::Kind::modulate;
    op.xi0 = a0;
    op.eta0 = b0;
    const auto mm = symbol_transform(m, op);
    const auto lhs2 = evaluate_bm(mm.symbol, f, h, Method::direct);
    const auto rhs2 = evaluate_bm(m, translate(f, -a0), translate(h, -b0), Method::direct);
    EXPECT_LT(max_abs_diff(lhs2, rhs2), 1e-8) << "modulate trial " << trial;
  }
}

TEST(SymbolTransform, DilationIdentity) {
  const Grid g{8.0, 2048};
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double t = 2.0;
  const auto m = Symbol::gauss(1.5, 0.2);
  SymbolOp op;
  op.kind = SymbolOp::Kind::dilate;
  op.t = t;
  const YoungTriple triple{YoungFunction::power(4), YoungFunction::power(4), YoungFunction::power(1)};
  const auto dm = symbol_transform(m, op, triple);
  EXPECT_NEAR(dm.factor, weight_W(triple.phi1, triple.phi2, triple.phi3, t), 1e-15);
  EXPECT_TRUE(std::isnan(symbol_transform(m, op).factor));
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = gaussian(g, 0.6 + 0.3 * u(rng), u(rng) - 0.5, 2 * u(rng) - 1);
    const auto h = gaussian(g, 0.6 + 0.3 * u(rng), u(rng) - 0.5, 2 * u(rng) - 1);
    const auto lhs = evaluate_bm(dm.symbol, f, h);
    const auto inner = evaluate_bm(m, dilate(f, t, DilationMode::bandlimited), dilate(h, t, DilationMode::bandlimited));
    const auto rhs = dilate(inner, 1.0 / t, DilationMode::bandlimited);
    EXPECT_LT(max_abs_diff(lhs, rhs), 1e-8) << "trial " << trial;
  }
}

TEST(SymbolTransform, PsiAverageOfConstant) {
  SymbolOp op;
  op.kind = SymbolOp::Kind::psi_average;
  op.psi = PsiProfile::indicator(1.0, 2.0, 64);
  const auto r = symbol_transform(Symbol::constant(1.0), op);
  ASSERT_TRUE(r.symbol.constant_value());
  EXPECT_NEAR(r.symbol.constant_value()->real(), 1.0, 1e-14);
  EXPECT_NEAR(r.symbol(0.3, -7.0).real(), 1.0, 1e-14);
}

TEST(SymbolTransform, PsiWeightAndDifferenceAverage) {
  const YoungTriple triple{YoungFunction::power(4), YoungFunction::power(4), YoungFunction::power(1)};
  SymbolOp op;
  op.kind = SymbolOp::Kind::psi_average;
  op.psi = PsiProfile::indicator(1.0, 2.0, 200);
  const auto m = Symbol::gauss(1.0);
  const auto r = symbol_transform(m, op, triple);
  // W(t) = sqrt(t) for (4, 4, 1): int_1^2 sqrt(t) dt.
  EXPECT_NEAR(r.factor, (2.0 / 3.0) * (std::pow(2.0, 1.5) - 1.0), 1e-5);
  EXPECT_TRUE(r.symbol.is_difference());
  double expect = 0.0;  // int_1^2 e^{-(t v)^2} dt at v = 0.7 by a fine midpoint rule
  for (int i = 0; i < 20000; ++i) {
    const double t = 1.0 + (i + 0.5) / 20000.0;
    expect += std::exp(-t * t * 0.49) / 20000.0;
  }
  EXPECT_NEAR(r.symbol.profile(0.7).real(), expect, 1e-5);
  op.psi.psi[3] = kInf;
  EXPECT_THROW((void)symbol_transform(m, op, triple), Error);
}

TEST(SymbolTransform, ConvolveAndMultiplyHat) {
  PointKernel phi{{{0.5, -0.25, 0.75}, {-1.0, 0.0, -0.5}}};
  EXPECT_DOUBLE_EQ(phi.l1(), 1.25);
  const auto m = Symbol::gauss(1.0);
  SymbolOp op;
  op.kind = SymbolOp::Kind::convolve_with;
  op.kernel = phi;
  const auto c = symbol_transform(m, op);
  EXPECT_DOUBLE_EQ(c.factor, 1.25);
  const double xi = 0.3, eta = -0.4;
  const cplx expect = 0.75 * m(xi - 0.5, eta + 0.25) - 0.5 * m(xi + 1.0, eta);
  EXPECT_LT(std::abs(c.symbol(xi, eta) - expect), 1e-15);
  op.kind = SymbolOp::Kind::multiply_hat;
  const auto mh = symbol_transform(m, op);
  const cplx hat = 0.75 * std::polar(1.0, -2 * kPi * (0.5 * xi - 0.25 * eta)) - 0.5 * std::polar(1.0, -2 * kPi * (-xi));
  EXPECT_LT(std::abs(mh.symbol(xi, eta) - hat * m(xi, eta)), 1e-15);
}

TEST(SymbolTransform, ComposeLinear) {
  const Grid g{8.0, 256};
  const auto f = gaussian(g, 1.0, 0.2, 0.4), h = gaussian(g, 1.1, -0.5, 0.1);
  const auto m1 = [](double x) { return cplx{std::exp(-x * x / 2)}; };
  const auto m2 = [](double x) { return std::polar(1.0, -2 * kPi * 0.25 * x); };
  SymbolOp op;
  op.kind = SymbolOp::Kind::compose_linear;
  op.m1 = {m1, 1.0};
  op.m2 = {m2, 1.0};
  const auto m = Symbol::gauss(0.7);
  const auto r = symbol_transform(m, op);
  const auto lhs = evaluate_bm(r.symbol, f, h, Method::direct);
  const auto rhs = evaluate_bm(m, apply_linear_multiplier(m1, f), apply_linear_multiplier(m2, h), Method::direct);
  EXPECT_LT(max_abs_diff(lhs, rhs), 1e-8);
}

TEST(F1Spot, MatchesReflectedValue) {
  const Grid g{8.0, 256};
  const auto f = gaussian(g, 1.0, 0.3, 0.2), h = gaussian(g, 1.2, -0.2, -0.5);
  const auto m = Symbol::gauss(0.8, 0.3);
  const auto b = evaluate_bm(m, f, h, Method::direct);
  for (std::size_t j : {100u, 128u, 140u, 170u}) {
    const double x = g.node(j);
    const std::size_t mirror = g.n - j;  // node of -x
    EXPECT_LT(std::abs(f1_spot_value(m, f, h, x) - b.values[mirror]), 1e-10) << j;
  }
}

TEST(Search, ConstantOneIndicatorsHolderRegime) {
  const YoungTriple triple{YoungFunction::power(2), YoungFunction::power(2), YoungFunction::power(1)};
  const auto r = opnorm_lower_search(Symbol::constant(1.0), triple, TestFamily::indicators, 50, 5);
  EXPECT_GE(r.ratio, 0.4);
  EXPECT_LE(r.ratio, 2.0);
  EXPECT_EQ(r.trials, 50u);
  EXPECT_GE(r.witness_trial, 0);
  // Closed form for the witness: |A cap B| / sqrt(|A| |B|).
  const auto pair = draw_pair(TestFamily::indicators, Grid{8.0, 512}, trial_seed(5, static_cast<std::uint64_t>(r.witness_trial)));
  const double a = l1_norm(pair.f), b = l1_norm(pair.g), ab = l1_norm(multiply(pair.f, pair.g));
  EXPECT_NEAR(r.ratio, ab / std::sqrt(a * b), 1e-8);
}

TEST(Search, DeltaZeroMatchesConstantOne) {
  const YoungTriple triple{YoungFunction::power(2), YoungFunction::power(2), YoungFunction::power(1)};
  const auto delta0 = Symbol::measure_hat(Measure{{{0.0, 1.0}}, std::nullopt}, 1.0, -1.0);
  for (auto family : {TestFamily::indicators, TestFamily::rademacher_combs, TestFamily::gaussians}) {
    const auto a = opnorm_lower_search(Symbol::constant(1.0), triple, family, 12, 99);
    const auto b = opnorm_lower_search(delta0, triple, family, 12, 99);
    EXPECT_EQ(a.ratio, b.ratio) << to_string(family);
    EXPECT_EQ(a.witness, b.witness);
  }
}

TEST(Search, ZeroSymbolAndDeterminism) {
  const YoungTriple triple{YoungFunction::power(2), YoungFunction::power(2), YoungFunction::power(1)};
  EXPECT_EQ(opnorm_lower_search(Symbol::constant(0.0), triple, TestFamily::gaussians, 8, 1).ratio, 0.0);
  const auto m = Symbol::gauss(1.0);
  ::setenv("ORLICZ_LAB_THREADS", "1", 1);
  const auto one = opnorm_lower_search(m, triple, TestFamily::modulated_translates, 6, 42);
  ::setenv("ORLICZ_LAB_THREADS", "3", 1);
  const auto three = opnorm_lower_search(m, triple, TestFamily::modulated_translates, 6, 42);
  ::unsetenv("ORLICZ_LAB_THREADS");
  EXPECT_EQ(one.ratio, three.ratio);
  EXPECT_EQ(one.witness, three.witness);
  EXPECT_THROW((void)opnorm_lower_search(m, triple, TestFamily::gaussians, 0, 1), std::invalid_argument);
  EXPECT_THROW((void)parse_family("sawtooth"), std::invalid_argument);
}

TEST(Families, DrawsStayOnGrid) {
  const Grid g{8.0, 512};
  for (auto family : {TestFamily::indicators, TestFamily::gaussians, TestFamily::modulated_translates,
                      TestFamily::rademacher_combs}) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto p = draw_pair(family, g, trial_seed(3, s));
      EXPECT_EQ(p.f.grid, g);
      EXPECT_GT(sup_norm(p.f), 0.0);
      EXPECT_GT(sup_norm(p.g), 0.0);
      EXPECT_FALSE(p.label.empty());
    }
  }
  EXPECT_NE(trial_seed(1, 0), trial_seed(1, 1));
  EXPECT_EQ(trial_seed(1, 7), trial_seed(1, 7));
}
