#include "experiments_util.hpp"
#include "orlicz/dilation_gauge.hpp"
#include "orlicz/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace orlicz {

using detail::num;
using detail::sci;

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

SampledFunction random_gaussian(const Grid& g, Rng& rng) {
  const double s = uniform(rng, 0.8, 1.4), c = uniform(rng, -1.5, 1.5), xi0 = uniform(rng, -0.8, 0.8);
  return scale(gaussian(g, s, c, xi0), std::polar(uniform(rng, 0.5, 1.5), uniform(rng, 0.0, 6.0)));
}

Symbol random_profile(Rng& rng) {
  if (std::bernoulli_distribution(0.5)(rng)) return Symbol::gauss(uniform(rng, 0.3, 2.0), uniform(rng, -1.0, 1.0));
  return Symbol::bump(uniform(rng, 0.5, 3.0), uniform(rng, -1.0, 1.0));
}

// Atoms on whole cells of the grid, so that every translate is exact.
Measure random_atoms(const Grid& g, Rng& rng, std::size_t max_atoms, double max_mass) {
  const auto reach = static_cast<long long>(std::floor(2.0 / g.spacing()));
  const auto count = std::uniform_int_distribution<std::size_t>(1, max_atoms)(rng);
  std::uniform_int_distribution<long long> cell(-reach, reach);
  Measure mu;
  for (std::size_t i = 0; i < count; ++i)
    mu.atoms.emplace_back(static_cast<double>(cell(rng)) * g.spacing(),
                          std::polar(uniform(rng, 0.1, 1.0), uniform(rng, 0.0, 2.0 * kPi)));
  const double target = uniform(rng, 0.25, 1.0) * max_mass;
  const double tv = mu.total_variation();
  for (auto& [t, w] : mu.atoms) w *= target / tv;
  return mu;
}

// Band-limited refinement: the same spectrum on a grid with twice the nodes.
SampledFunction upsample2(const SampledFunction& f) {
  const auto spec = fourier(f);
  const Grid fine{f.grid.half_width, 2 * f.grid.n};
  std::vector<cplx> v(fine.n);
  for (std::size_t j = 0; j < f.grid.n; ++j) v[j + f.grid.n / 2] = spec.values[j];
  return inverse_fourier(make_sampled(fine.dual(), std::move(v)));
}

std::vector<TestFamily> families_from(const Json& j) {
  std::vector<TestFamily> out;
  for (const auto& s : j) out.push_back(parse_family(s.get<std::string>()));
  if (out.empty()) throw std::invalid_argument("at least one test family is needed");
  return out;
}

std::vector<YoungTriple> triples_from(const Json& j) {
  std::vector<YoungTriple> out;
  for (const auto& t : j) out.push_back(detail::triple_from(t));
  if (out.empty()) throw std::invalid_argument("at least one Young triple is needed");
  return out;
}

std::string triple_text(const YoungTriple& t) {
  return t.phi1.describe() + " | " + t.phi2.describe() + " | " + t.phi3.describe();
}

struct TrialOut {
  std::vector<Json> row;
  double ratio = 0.0;
  double change = -1.0;  // refinement change, when measured
  bool skipped = false;
};

std::vector<TrialOut> run_trials(std::size_t n, const std::function<TrialOut(std::size_t)>& body) {
  std::vector<TrialOut> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = body(i); });
  return out;
}

// Worst ratio over the trials, ties to the lowest index.
void aggregate_ratios(VerificationReport& r, const std::vector<TrialOut>& outs, const std::string& claim) {
  double worst = 0.0;
  std::int64_t at = -1;
  std::size_t violations = 0, skipped = 0;
  for (std::size_t i = 0; i < outs.size(); ++i) {
    r.rows.push_back(outs[i].row);
    if (outs[i].skipped) {
      ++skipped;
      continue;
    }
    if (outs[i].ratio > 1.0) ++violations;
    if (outs[i].ratio > worst) {
      worst = outs[i].ratio;
      at = static_cast<std::int64_t>(i);
    }
  }
  r.summary["trials"] = outs.size();
  r.summary["skipped"] = skipped;
  r.summary["violations"] = violations;
  r.summary["worst_ratio"] = num(worst);
  r.summary["worst_trial"] = at;
  r.verdicts.push_back({claim, violations == 0 && skipped < outs.size(),
                        std::to_string(violations) + " violations, worst ratio " + sci(worst)});
}

void check_triples(VerificationReport& r, const std::vector<YoungTriple>& triples, TripleKind kind) {
  const auto xs = log_grid(1e-6, 1e6, 121);
  bool all = true;
  Json list = Json::array();
  for (const auto& t : triples) {
    const auto c = check_triple(kind, t.phi1, t.phi2, t.phi3, xs);
    all = all && c.holds();
    list.push_back(Json{{"triple", triple_text(t)}, {"max_relative_violation", num(c.max_relative_violation)}});
  }
  r.summary["triple_checks"] = list;
  r.verdicts.push_back({std::string("triples satisfy the ") + to_string(kind) + " condition", all, ""});
}

VerificationReport suite_mt1(const Json& c) {
  VerificationReport r{"mt1", c, {"trial", "triple", "family", "draw", "symbol", "mu_l1", "lhs", "n1", "n2", "ratio"}};
  const Grid grid = detail::grid_from(c.at("grid"));
  const auto triples = triples_from(c.at("triples"));
  const auto fams = families_from(c.at("families"));
  const auto seed = detail::seed_from(c);
  const auto max_atoms = c.at("max_atoms").get<std::size_t>();
  const double max_mass = c.at("max_mass").get<double>();
  check_triples(r, triples, TripleKind::hoelder);
  const auto outs = run_trials(c.at("trials").get<std::size_t>(), [&](std::size_t i) {
    Rng rng(trial_seed(seed, i));
    const auto& t = triples[i % triples.size()];
    const auto fam = fams[(i / triples.size()) % fams.size()];
    auto mu = random_atoms(grid, rng, max_atoms, max_mass);
    const double l1 = mu.total_variation();
    const auto m = Symbol::measure_hat(std::move(mu), 1.0, -1.0);
    const auto pair = draw_pair(fam, grid, rng());
    TrialOut o;
    const auto nr = norm_ratio(m, t, pair.f, pair.g);
    o.skipped = !nr;
    o.ratio = nr ? nr->lhs / (2.0 * l1 * nr->n1 * nr->n2) : 0.0;
    o.row = {i, triple_text(t), to_string(fam), pair.label, m.label(), num(l1), nr ? num(nr->lhs) : nullptr,
             nr ? num(nr->n1) : nullptr, nr ? num(nr->n2) : nullptr, nr ? num(o.ratio) : nullptr};
    return o;
  });
  aggregate_ratios(r, outs, "N3(B(f,g)) <= 2 ||mu||_1 N1(f) N2(g)");
  return r;
}

VerificationReport suite_mt2(const Json& c) {
  VerificationReport r{"mt2", c, {"trial", "triple", "family", "draw", "symbol", "M_l1", "C3_2", "lhs", "n1", "n2", "ratio"}};
  const Grid grid = detail::grid_from(c.at("grid"));
  const auto triples = triples_from(c.at("triples"));
  const auto fams = families_from(c.at("families"));
  const auto seed = detail::seed_from(c);
  check_triples(r, triples, TripleKind::young_conv);
  const auto outs = run_trials(c.at("trials").get<std::size_t>(), [&](std::size_t i) {
    Rng rng(trial_seed(seed, i));
    const auto& t = triples[i % triples.size()];
    const auto fam = fams[(i / triples.size()) % fams.size()];
    const auto m = random_profile(rng);
    const double l1 = m.profile_l1(), c3 = gauge_upper(t.phi3, 2.0);
    const auto pair = draw_pair(fam, grid, rng());
    TrialOut o;
    const auto nr = norm_ratio(m, t, pair.f, pair.g);
    o.skipped = !nr;
    o.ratio = nr ? nr->lhs / (2.0 * c3 * l1 * nr->n1 * nr->n2) : 0.0;
    o.row = {i, triple_text(t), to_string(fam), pair.label, m.label(), num(l1), num(c3), nr ? num(nr->lhs) : nullptr,
             nr ? num(nr->n1) : nullptr, nr ? num(nr->n2) : nullptr, nr ? num(o.ratio) : nullptr};
    return o;
  });
  aggregate_ratios(r, outs, "N3(B_M(f,g)) <= 2 C_Phi3(2) ||M||_1 N1(f) N2(g)");
  return r;
}

VerificationReport suite_corollary_L1(const Json& c) {
  VerificationReport r{"corollary_L1", c, {"trial", "phi", "family", "draw", "symbol", "mu_l1", "l1_of_B", "n_phi", "n_psi", "ratio"}};
  const Grid grid = detail::grid_from(c.at("grid"));
  const auto phis = detail::youngs_from(c.at("phis"));
  std::vector<YoungFunction> psis;
  for (const auto& phi : phis) psis.push_back(complement(phi));
  const auto fams = families_from(c.at("families"));
  const auto seed = detail::seed_from(c);
  const auto max_atoms = c.at("max_atoms").get<std::size_t>();
  const double max_mass = c.at("max_mass").get<double>();
  static const std::array<std::pair<double, double>, 4> kDirections = {{{1.0, -1.0}, {1.0, 1.0}, {2.0, -1.0}, {1.0, 0.0}}};
  const auto outs = run_trials(c.at("trials").get<std::size_t>(), [&](std::size_t i) {
    Rng rng(trial_seed(seed, i));
    const std::size_t k = i % phis.size();
    const auto fam = fams[(i / phis.size()) % fams.size()];
    const auto [alpha, beta] = kDirections[(i / (phis.size() * fams.size())) % kDirections.size()];
    auto mu = random_atoms(grid, rng, max_atoms, max_mass);
    const double l1 = mu.total_variation();
    const auto m = Symbol::measure_hat(std::move(mu), alpha, beta);
    const auto pair = draw_pair(fam, grid, rng());
    const double n1 = luxemburg_norm(pair.f, phis[k]), n2 = luxemburg_norm(pair.g, psis[k]);
    TrialOut o;
    o.skipped = n1 == 0.0 || n2 == 0.0;
    const double lhs = l1_norm(evaluate_bm(m, pair.f, pair.g));
    o.ratio = o.skipped ? 0.0 : lhs / (4.0 * l1 * n1 * n2);
    o.row = {i, phis[k].describe(), to_string(fam), pair.label, m.label(), num(l1), num(lhs), num(n1), num(n2), num(o.ratio)};
    return o;
  });
  aggregate_ratios(r, outs, "||B(f,g)||_1 <= 4 ||mu||_1 N_Phi(f) N_Psi(g)");
  return r;
}

VerificationReport suite_corollary_Linf(const Json& c) {
  VerificationReport r{"corollary_Linf", c,
                       {"trial", "phi", "family", "draw", "symbol", "M_l1", "sup_of_B", "n_phi", "n_psi", "ratio", "refined_ratio", "refine_change"}};
  const Grid grid = detail::grid_from(c.at("grid"));
  const auto phis = detail::youngs_from(c.at("phis"));
  std::vector<YoungFunction> psis;
  for (const auto& phi : phis) psis.push_back(complement(phi));
  const auto fams = families_from(c.at("families"));
  const auto seed = detail::seed_from(c);
  const auto refine = c.at("refine_trials").get<std::size_t>();
  const auto ratio_of = [&](const Symbol& m, double l1, const SampledFunction& f, const SampledFunction& g, std::size_t k,
                            double& sup, double& n1, double& n2) {
    n1 = luxemburg_norm(f, phis[k]);
    n2 = luxemburg_norm(g, psis[k]);
    sup = sup_norm(evaluate_bm(m, f, g));
    return sup / (2.0 * l1 * n1 * n2);
  };
  const auto outs = run_trials(c.at("trials").get<std::size_t>(), [&](std::size_t i) {
    Rng rng(trial_seed(seed, i));
    const std::size_t k = i % phis.size();
    const auto fam = fams[(i / phis.size()) % fams.size()];
    const auto m = random_profile(rng);
    const double l1 = m.profile_l1();
    const auto pair = draw_pair(fam, grid, rng());
    TrialOut o;
    double sup = 0.0, n1 = 0.0, n2 = 0.0;
    o.ratio = ratio_of(m, l1, pair.f, pair.g, k, sup, n1, n2);
    o.skipped = n1 == 0.0 || n2 == 0.0;
    Json refined = nullptr, change = nullptr;
    // Indicators are not band-limited, so spectral refinement would only add Gibbs ringing.
    if (i < refine && fam != TestFamily::indicators) {
      double s2 = 0.0, a2 = 0.0, b2 = 0.0;
      const double fine = ratio_of(m, l1, upsample2(pair.f), upsample2(pair.g), k, s2, a2, b2);
      o.change = std::abs(fine - o.ratio) / o.ratio;
      refined = num(fine);
      change = num(o.change);
    }
    o.row = {i, phis[k].describe(), to_string(fam), pair.label, m.label(), num(l1), num(sup), num(n1), num(n2), num(o.ratio), refined, change};
    return o;
  });
  aggregate_ratios(r, outs, "||B_M(f,g)||_inf <= 2 ||M||_1 N_Phi(f) N_Psi(g)");
  double worst_change = 0.0;
  std::size_t refined = 0;
  for (const auto& o : outs)
    if (o.change >= 0.0) {
      ++refined;
      worst_change = std::max(worst_change, o.change);
    }
  r.summary["refined_trials"] = refined;
  r.summary["max_refine_change"] = num(worst_change);
  r.verdicts.push_back({"doubling n changes the ratio by less than 10%", refined > 0 && worst_change < 0.1,
                        std::to_string(refined) + " refined trials, max change " + sci(worst_change)});
  return r;
}

VerificationReport suite_prop31(const Json& c) {
  VerificationReport r{"prop31", c, {"trial", "symbol", "op", "shift_1", "shift_2", "deviation"}};
  const Grid g = detail::grid_from(c.at("grid"));
  const auto seed = detail::seed_from(c);
  const double tol = c.at("tol").get<double>();
  const auto fn = [](double a, double b) { return cplx{std::exp(-(a * a + b * b) / 4.0), 0.2 * b * std::exp(-a * a)}; };
  const std::vector<Symbol> symbols = {Symbol::gauss(0.9, 0.3), Symbol::general(fn, "general:gauss2d")};
  const auto trials = c.at("trials").get<std::size_t>();
  std::vector<std::array<TrialOut, 2>> outs(trials);
  parallel_for(trials, [&](std::size_t i) {
    Rng rng(trial_seed(seed, i));
    std::uniform_int_distribution<int> step(-8, 8);
    const auto& m = symbols[i % symbols.size()];
    const auto f = random_gaussian(g, rng), h = random_gaussian(g, rng);
    // Frequency shifts on the padded dual lattice, space shifts on whole cells.
    const double x0 = step(rng) / (4.0 * g.half_width), y0 = step(rng) / (4.0 * g.half_width);
    SymbolOp op;
    op.kind = SymbolOp::Kind::translate;
    op.xi0 = x0;
    op.eta0 = y0;
    const auto lhs = evaluate_bm(symbol_transform(m, op).symbol, f, h, Method::direct);
    const auto rhs = modulate(evaluate_bm(m, modulate(f, -x0), modulate(h, -y0), Method::direct), x0 + y0);
    const double d1 = max_abs_diff(lhs, rhs);
    outs[i][0].ratio = d1;
    outs[i][0].row = {i, m.label(), "translate", x0, y0, num(d1)};

    const double a0 = step(rng) * g.spacing(), b0 = step(rng) * g.spacing();
    op.kind = SymbolOp::Kind::modulate;
    op.xi0 = a0;
    op.eta0 = b0;
    const auto lhs2 = evaluate_bm(symbol_transform(m, op).symbol, f, h, Method::direct);
    const auto rhs2 = evaluate_bm(m, translate(f, -a0), translate(h, -b0), Method::direct);
    const double d2 = max_abs_diff(lhs2, rhs2);
    outs[i][1].ratio = d2;
    outs[i][1].row = {i, m.label(), "modulate", a0, b0, num(d2)};
  });
  double dt = 0.0, dm = 0.0;
  for (const auto& o : outs) {
    r.rows.push_back(o[0].row);
    r.rows.push_back(o[1].row);
    dt = std::max(dt, o[0].ratio);
    dm = std::max(dm, o[1].ratio);
  }
  r.summary["trials"] = trials;
  r.summary["max_translate_deviation"] = num(dt);
  r.summary["max_modulate_deviation"] = num(dm);
  r.verdicts.push_back({"B_{tau m}(f,g) = M_{xi0+eta0} B_m(M_{-xi0} f, M_{-eta0} g)", dt <= tol, "max deviation " + sci(dt)});
  r.verdicts.push_back({"B_{M m}(f,g) = B_m(tau_{-a} f, tau_{-b} g)", dm <= tol, "max deviation " + sci(dm)});
  return r;
}

VerificationReport suite_prop32(const Json& c) {
  VerificationReport r{"prop32", c, {"trial", "s_f", "s_g", "deviation"}};
  const Grid g = detail::grid_from(c.at("grid"));
  const auto seed = detail::seed_from(c);
  const double tol = c.at("tol").get<double>(), t = c.at("t").get<double>();
  const auto m = Symbol::gauss(1.5, 0.2);
  SymbolOp op;
  op.kind = SymbolOp::Kind::dilate;
  op.t = t;
  const auto dm = symbol_transform(m, op);
  const auto outs = run_trials(c.at("trials").get<std::size_t>(), [&](std::size_t i) {
    Rng rng(trial_seed(seed, i));
    const double sf = uniform(rng, 0.6, 0.9), sg = uniform(rng, 0.6, 0.9);
    const auto f = gaussian(g, sf, uniform(rng, -0.5, 0.5), uniform(rng, -1.0, 1.0));
    const auto h = gaussian(g, sg, uniform(rng, -0.5, 0.5), uniform(rng, -1.0, 1.0));
    const auto lhs = evaluate_bm(dm.symbol, f, h);
    const auto inner = evaluate_bm(m, dilate(f, t, DilationMode::bandlimited), dilate(h, t, DilationMode::bandlimited));
    const auto rhs = dilate(inner, 1.0 / t, DilationMode::bandlimited);
    TrialOut o;
    o.ratio = max_abs_diff(lhs, rhs);
    o.row = {i, sf, sg, num(o.ratio)};
    return o;
  });
  double worst = 0.0;
  for (const auto& o : outs) {
    r.rows.push_back(o.row);
    worst = std::max(worst, o.ratio);
  }
  r.summary["trials"] = outs.size();
  r.summary["symbol"] = m.label();
  r.summary["max_deviation"] = num(worst);
  r.verdicts.push_back({"B_{D_t m}(f,g) = D_{1/t} B_m(D_t f, D_t g)", worst <= tol, "max deviation " + sci(worst)});
  return r;
}

VerificationReport suite_prop_convo(const Json& c) {
  VerificationReport r{"prop_convo", c, {"trial", "symbol", "kernel_l1", "deviation", "lhs_norm", "minkowski_rhs", "ratio"}};
  const Grid g = detail::grid_from(c.at("grid"));
  const auto seed = detail::seed_from(c);
  const double tol = c.at("tol").get<double>();
  const auto triple = detail::triple_from(c.at("triple"));
  const auto nodes = c.at("kernel_nodes").get<std::size_t>();
  struct Out {
    TrialOut t;
    double deviation = 0.0;
    Symbol conv = Symbol::constant(0.0);
    Symbol base = Symbol::constant(0.0);
    double l1 = 0.0;
  };
  const auto trials = c.at("trials").get<std::size_t>();
  std::vector<Out> outs(trials);
  parallel_for(trials, [&](std::size_t i) {
    Rng rng(trial_seed(seed, i));
    const auto m = Symbol::gauss(uniform(rng, 0.5, 2.0), uniform(rng, -1.0, 1.0));
    PointKernel phi;
    for (std::size_t k = 0; k < nodes; ++k)
      phi.nodes.push_back({uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)});
    const auto f = random_gaussian(g, rng), h = random_gaussian(g, rng);
    SymbolOp op;
    op.kind = SymbolOp::Kind::convolve_with;
    op.kernel = phi;
    const auto conv = symbol_transform(m, op);
    const auto lhs = evaluate_bm(conv.symbol, f, h, Method::direct);
    auto sum = scale(lhs, 0.0);
    double minkowski = 0.0;
    for (const auto& [u, v, w] : phi.nodes) {
      SymbolOp tr;
      tr.kind = SymbolOp::Kind::translate;
      tr.xi0 = u;
      tr.eta0 = v;
      const auto part = evaluate_bm(symbol_transform(m, tr).symbol, f, h, Method::direct);
      sum = axpby(1.0, sum, w, part);
      minkowski += std::abs(w) * luxemburg_norm(part, triple.phi3);
    }
    Out& o = outs[i];
    o.deviation = max_abs_diff(lhs, sum);
    const double lhs_norm = luxemburg_norm(lhs, triple.phi3);
    o.t.ratio = minkowski > 0.0 ? lhs_norm / minkowski : 0.0;
    o.t.row = {i, m.label(), phi.l1(), num(o.deviation), num(lhs_norm), num(minkowski), num(o.t.ratio)};
    o.conv = conv.symbol;
    o.base = m;
    o.l1 = phi.l1();
  });
  double worst_dev = 0.0, worst_ratio = 0.0;
  for (const auto& o : outs) {
    r.rows.push_back(o.t.row);
    worst_dev = std::max(worst_dev, o.deviation);
    worst_ratio = std::max(worst_ratio, o.t.ratio);
  }
  r.summary["trials"] = trials;
  r.summary["max_identity_deviation"] = num(worst_dev);
  r.summary["worst_minkowski_ratio"] = num(worst_ratio);
  r.verdicts.push_back({"B_{phi * m} = sum_i w_i B_{tau_(u_i,v_i) m}", worst_dev <= tol, "max deviation " + sci(worst_dev)});
  r.verdicts.push_back({"N3(B_{phi * m}(f,g)) <= sum_i |w_i| N3(B_{tau_i m}(f,g))", worst_ratio <= 1.0 + tol,
                        "worst ratio " + sci(worst_ratio)});

  // Searched lower bounds of the operator norms, for comparison only: a
  // search can undershoot ||m|| and so cannot refute the norm inequality.
  Json searches = Json::array();
  const auto budget = c.at("search_trials").get<std::size_t>();
  for (std::size_t i = 0; i < std::min<std::size_t>(c.at("search_symbols").get<std::size_t>(), outs.size()); ++i) {
    const auto lo_conv = opnorm_lower_search(outs[i].conv, triple, TestFamily::gaussians, budget, trial_seed(seed, i), g);
    const auto lo_base = opnorm_lower_search(outs[i].base, triple, TestFamily::gaussians, budget, trial_seed(seed, i), g);
    const double bound = outs[i].l1 * lo_base.ratio * (1.0 + c.at("search_slack").get<double>());
    searches.push_back(Json{{"trial", i},
                            {"search_conv", num(lo_conv.ratio)},
                            {"kernel_l1_times_search_m", num(outs[i].l1 * lo_base.ratio)},
                            {"within_slack", lo_conv.ratio <= bound}});
  }
  r.summary["search_comparison"] = searches;
  return r;
}

}  // namespace

VerificationReport run_cross_methods(const Json& config) {
  VerificationReport r{"cross_methods", config,
                       {"trial", "symbol", "f", "g", "kernel_dev", "halfsum_dev", "convolution_dev", "f1_dev"}};
  const Grid grid = detail::grid_from(config.at("grid"));
  const auto seed = detail::seed_from(config);
  const double tol = config.at("tol").get<double>(), f1_tol = config.at("f1_tol").get<double>();
  const auto f1_points = config.at("f1_points").get<std::size_t>();
  const auto outs = run_trials(config.at("symbols").get<std::size_t>(), [&](std::size_t i) {
    Rng rng(trial_seed(seed, i));
    const Symbol m = i % 3 == 0   ? Symbol::gauss(uniform(rng, 0.3, 2.0), uniform(rng, -1.0, 1.0))
                     : i % 3 == 1 ? Symbol::bump(uniform(rng, 0.5, 3.0), uniform(rng, -1.0, 1.0))
                                  : Symbol::windowed_sign(uniform(rng, 1.0, 4.0));
    SampledFunction f = random_gaussian(grid, rng), h = random_gaussian(grid, rng);
    std::string fl = "gaussian", hl = "gaussian";
    if (i % 2 == 1) {
      const double a = uniform(rng, -1.0, 1.0), b = uniform(rng, -1.0, 1.0);
      f = bl_gauss(grid, a);
      h = bl_gauss(grid, b);
      fl = "bl_gauss:xi0=" + format_real(a);
      hl = "bl_gauss:xi0=" + format_real(b);
    }
    const auto ref = evaluate_bm(m, f, h, Method::direct);
    TrialOut o;
    std::array<double, 3> dev{};
    const std::array<Method, 3> methods = {Method::kernel, Method::halfsum, Method::convolution};
    for (std::size_t k = 0; k < 3; ++k) dev[k] = max_abs_diff(evaluate_bm(m, f, h, methods[k]), ref);
    // (f1) at nodes spread over the middle half of the grid, against the value at -x.
    double f1 = 0.0;
    for (std::size_t p = 0; p < f1_points; ++p) {
      const std::size_t j = grid.n / 4 + (p + 1) * (grid.n / 2) / (f1_points + 1);
      f1 = std::max(f1, std::abs(f1_spot_value(m, f, h, grid.node(j)) - ref.values[grid.n - j]));
    }
    o.ratio = std::max({dev[0], dev[1], dev[2]});
    o.change = f1;
    o.row = {i, m.label(), fl, hl, num(dev[0]), num(dev[1]), num(dev[2]), num(f1)};
    return o;
  });
  double worst = 0.0, worst_f1 = 0.0;
  for (const auto& o : outs) {
    r.rows.push_back(o.row);
    worst = std::max(worst, o.ratio);
    worst_f1 = std::max(worst_f1, o.change);
  }
  r.summary["symbols"] = outs.size();
  r.summary["max_method_deviation"] = num(worst);
  r.summary["max_f1_deviation"] = num(worst_f1);
  r.verdicts.push_back({"direct, kernel, halfsum and convolution agree", worst <= tol, "max deviation " + sci(worst)});
  r.verdicts.push_back({"(f1) spot values agree with B_M(f,g)(-x)", worst_f1 <= f1_tol, "max deviation " + sci(worst_f1)});
  return r;
}

VerificationReport run_bound_suite(const Json& config) {
  const auto which = config.at("which").get<std::string>();
  if (config.at("trials").get<std::size_t>() < 1) throw std::invalid_argument("trials must be >= 1");
  if (which == "mt1") return suite_mt1(config);
  if (which == "mt2") return suite_mt2(config);
  if (which == "corollary_L1") return suite_corollary_L1(config);
  if (which == "corollary_Linf") return suite_corollary_Linf(config);
  if (which == "prop31") return suite_prop31(config);
  if (which == "prop32") return suite_prop32(config);
  if (which == "prop_convo") return suite_prop_convo(config);
  throw std::invalid_argument("unknown bound suite '" + which + "' (mt1|mt2|corollary_L1|corollary_Linf|prop31|prop32|prop_convo)");
}

}  // namespace orlicz
