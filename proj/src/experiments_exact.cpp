#include "experiments_util.hpp"
#include "orlicz/dilation_gauge.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace orlicz {

using detail::num;
using detail::sci;

double rademacher_ratio(const YoungFunction& phi1, const YoungFunction& phi2, const YoungFunction& phi3, double a,
                        double N) {
  const double x = 1.0 / (N * a);
  return phi1.inverse(x) * phi2.inverse(x) / phi3.inverse(x);
}

double comb_norm_lower_bound(const YoungFunction& phi, double g_l1, double a, std::size_t N) {
  return g_l1 / (a * phi.inverse(1.0 / (a * static_cast<double>(N + 1))));
}

double max_usable_lambda(const SampledFunction& M) { return 0.846 / M.grid.spacing(); }

double gaussian_functional(const SampledFunction& M, double lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("gaussian functional needs lambda >= 0");
  if (lambda > max_usable_lambda(M))
    throw Error("lambda = " + sci(lambda) + " is unresolved by the grid of M; max usable lambda is " +
                sci(max_usable_lambda(M)));
  const double dv = M.grid.spacing();
  cplx acc{};
  for (std::size_t j = 0; j < M.values.size(); ++j) {
    const double v = M.grid.node(j);
    acc += std::exp(-lambda * lambda * v * v) * M.values[j];
  }
  return std::abs(acc * dv);
}

VerificationReport run_indicator_norm(const Json& config) {
  VerificationReport r{"indicator_norm", config, {"phi", "a", "norm", "formula", "rel_err"}};
  const Grid grid = detail::grid_from(config.at("grid"));
  const double tol = config.at("rel_tol").get<double>();
  double worst = 0.0;
  for (const auto& spec : config.at("phis")) {
    const auto phi = parse_young(spec.get<std::string>());
    for (const auto& aj : config.at("lengths")) {
      const double a = aj.get<double>();
      const double norm = luxemburg_norm(indicator(grid, a, 0.0), phi);
      const double formula = 1.0 / phi.inverse(1.0 / a);
      const double err = std::abs(norm - formula) / formula;
      worst = std::max(worst, err);
      r.rows.push_back({phi.describe(), a, num(norm), num(formula), num(err)});
    }
  }
  r.summary["max_rel_err"] = num(worst);
  r.verdicts.push_back({"N_Phi(chi_A) = 1 / Phi^-1(1/|A|)", worst <= tol, "max rel err " + sci(worst) + " vs " + sci(tol)});
  return r;
}

VerificationReport run_gauge_powers(const Json& config) {
  VerificationReport r{"gauge_powers", config, {"p", "lambda", "lower", "upper", "exact"}};
  const double tol = config.at("abs_tol").get<double>();
  double worst = 0.0;
  for (const auto& pj : config.at("ps")) {
    const double p = pj.get<double>();
    const auto phi = YoungFunction::power(p);
    for (const auto& lj : config.at("lambdas")) {
      const double lambda = lj.get<double>();
      const double exact = std::pow(lambda, -1.0 / p);
      const double lo = gauge_lower(phi, lambda), hi = gauge_upper(phi, lambda);
      worst = std::max({worst, std::abs(lo - exact), std::abs(hi - exact)});
      r.rows.push_back({p, lambda, num(lo), num(hi), num(exact)});
    }
  }
  r.summary["max_abs_err"] = num(worst);
  r.verdicts.push_back({"C_Phi(lambda) = lambda^(-1/p) for powers", worst <= tol, "max abs err " + sci(worst)});
  return r;
}

VerificationReport run_conjugation(const Json& config) {
  VerificationReport r{"conjugation", config, {"check", "phi", "x", "value", "reference", "err"}};

  const auto self = parse_young(config.at("self_dual").get<std::string>());
  const auto self_c = complement(self);
  double worst_self = 0.0;
  for (double y : detail::log_grid_from(config.at("self_dual_y"))) {
    const double ref = self(y), val = self_c(y);
    const double err = std::abs(val - ref) / std::max(1.0, ref);
    worst_self = std::max(worst_self, err);
    r.rows.push_back({"self_dual", self.describe(), y, num(val), num(ref), num(err)});
  }
  const double tol_self = config.at("self_dual_tol").get<double>();
  r.verdicts.push_back({"complement of x^2/2 is itself", worst_self <= tol_self, "max err " + sci(worst_self)});

  const auto bi = parse_young(config.at("biconjugate").get<std::string>());
  const auto bb = complement(complement(bi));
  double worst_bi = 0.0;
  for (double x : detail::log_grid_from(config.at("biconjugate_x"))) {
    const double ref = bi(x), val = bb(x);
    const double err = std::abs(val - ref) / std::max(1.0, ref);
    worst_bi = std::max(worst_bi, err);
    r.rows.push_back({"biconjugate", bi.describe(), x, num(val), num(ref), num(err)});
  }
  const double tol_bi = config.at("biconjugate_tol").get<double>();
  r.verdicts.push_back({"Psi** = Phi on the interior grid", worst_bi <= tol_bi, "max err " + sci(worst_bi)});

  std::mt19937_64 rng(detail::seed_from(config));
  std::uniform_real_distribution<double> u(std::log(1e-3), std::log(1e2));
  const auto pairs = config.at("young_pairs").get<std::size_t>();
  std::size_t violations = 0, trials = 0;
  double worst_defect = -kInf;
  for (const auto& spec : config.at("young_phis")) {
    const auto phi = parse_young(spec.get<std::string>());
    const auto psi = complement(phi);
    std::vector<double> xs(pairs), ys(pairs);
    for (std::size_t i = 0; i < pairs; ++i) {
      xs[i] = std::exp(u(rng));
      ys[i] = std::exp(u(rng));
    }
    const auto c = check_young_pointwise(phi, psi, xs, ys);
    violations += c.violations;
    trials += c.trials;
    worst_defect = std::max(worst_defect, c.worst_defect);
    r.rows.push_back({"young_pointwise", phi.describe(), nullptr, num(static_cast<double>(c.violations)),
                      num(static_cast<double>(c.trials)), num(c.worst_defect)});
  }
  r.summary["self_dual_max_err"] = num(worst_self);
  r.summary["biconjugate_max_err"] = num(worst_bi);
  r.summary["young_pairs"] = trials;
  r.summary["young_violations"] = violations;
  r.summary["young_worst_defect"] = num(worst_defect);
  r.verdicts.push_back({"|xy| <= Phi(x) + Psi(y)", violations == 0,
                        std::to_string(violations) + " violations in " + std::to_string(trials) + " pairs"});
  return r;
}

VerificationReport run_rademacher_divergence(const Json& config) {
  VerificationReport r{"rademacher", config, {"record", "N", "shape", "phi", "sign_vector", "value", "bound", "ok"}};
  const auto phis = detail::youngs_from(config.at("phis"));
  if (phis.size() != 3) throw std::invalid_argument("rademacher needs three Young functions");
  const double a = config.at("a").get<double>();
  const auto n_max = config.at("N_max").get<std::size_t>();
  if (!(a > 0.0) || n_max < 8) throw std::invalid_argument("rademacher needs a > 0 and N_max >= 8");

  std::vector<double> lx, ly;
  for (std::size_t N = 1; N <= n_max; ++N) {
    const double R = rademacher_ratio(phis[0], phis[1], phis[2], a, static_cast<double>(N));
    r.rows.push_back({"R", N, nullptr, nullptr, nullptr, num(R), nullptr, nullptr});
    lx.push_back(std::log(static_cast<double>(N)));
    ly.push_back(std::log(R));
  }
  const double slope = detail::fit_slope(lx, ly);
  const double slope_tol = config.at("slope_tol").get<double>();
  const bool bounded = slope <= slope_tol;
  r.summary["fitted_slope"] = num(slope);
  r.summary["classification"] = bounded ? "bounded" : "divergent";
  if (!bounded) r.summary["divergence_exponent"] = num(slope);
  if (std::all_of(phis.begin(), phis.end(), detail::is_power)) {
    const double expected = 1.0 / phis[2].parameter() - 1.0 / phis[0].parameter() - 1.0 / phis[1].parameter();
    r.summary["closed_form_slope"] = num(expected);
    r.verdicts.push_back({"fitted slope of R(N) matches 1/p3 - 1/p1 - 1/p2", std::abs(slope - expected) <= slope_tol,
                          "slope " + sci(slope) + " vs " + sci(expected)});
  }

  // Disjoint-support lemma on combs sum_k eps_k tau_{[a+1]k} g.
  const Grid grid = detail::grid_from(config.at("grid"));
  const double dx = grid.spacing();
  const double step = std::floor(a + 1.0);
  const double step_cells = step / dx, a_cells = a / dx;
  if (std::abs(step_cells - std::round(step_cells)) > 1e-9 || std::abs(a_cells - std::round(a_cells)) > 1e-9)
    throw std::invalid_argument("comb teeth must start on grid nodes: a and [a+1] must be multiples of the spacing");
  std::size_t max_comb = 0;
  for (const auto& nj : config.at("comb_N")) max_comb = std::max(max_comb, nj.get<std::size_t>());
  const double needed = step * static_cast<double>(max_comb) + a;
  if (needed > 2.0 * grid.half_width)
    throw Error("grid too small for the comb: needs L >= " + sci(needed / 2.0) + ", have L = " + sci(grid.half_width));

  const double x0 = -grid.half_width;
  const auto tooth_at = [&](const std::function<double(double)>& shape) {
    std::vector<double> v(static_cast<std::size_t>(std::llround(a_cells)));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = shape(static_cast<double>(i) * dx);
    return v;
  };
  const std::vector<std::pair<std::string, std::vector<double>>> shapes = {
      {"indicator", tooth_at([](double) { return 1.0; })},
      {"tent", tooth_at([a](double s) { return 1.0 - std::abs(2.0 * s / a - 1.0); })}};

  std::mt19937_64 rng(detail::seed_from(config));
  std::bernoulli_distribution coin(0.5);
  const auto vectors = config.at("sign_vectors").get<std::size_t>();
  const double lemma_tol = config.at("lemma_rel_tol").get<double>();
  std::size_t checks = 0, failures = 0;
  double worst_margin = kInf;
  for (const auto& nj : config.at("comb_N")) {
    const auto N = nj.get<std::size_t>();
    for (std::size_t sv = 0; sv < vectors; ++sv) {
      std::vector<double> eps(N + 1);
      for (auto& e : eps) e = coin(rng) ? 1.0 : -1.0;
      for (const auto& [shape_name, tooth] : shapes) {
        std::vector<cplx> h(grid.n);
        double g_l1 = 0.0;
        for (double t : tooth) g_l1 += std::abs(t) * dx;
        for (std::size_t k = 0; k <= N; ++k) {
          const auto base = static_cast<std::size_t>(std::llround((x0 + static_cast<double>(k) * step - x0) / dx));
          for (std::size_t i = 0; i < tooth.size(); ++i) h[base + i] = eps[k] * tooth[i];
        }
        const auto comb = make_sampled(grid, std::move(h));
        for (const auto& phi : phis) {
          const double norm = luxemburg_norm(comb, phi);
          const double bound = comb_norm_lower_bound(phi, g_l1, a, N);
          const bool ok = norm >= bound * (1.0 - lemma_tol);
          ++checks;
          if (!ok) ++failures;
          worst_margin = std::min(worst_margin, norm / bound);
          r.rows.push_back({"comb", N, shape_name, phi.describe(), sv, num(norm), num(bound), ok});
        }
      }
    }
  }
  r.summary["comb_checks"] = checks;
  r.summary["comb_failures"] = failures;
  r.summary["comb_min_norm_over_bound"] = num(worst_margin);
  r.verdicts.push_back({"N_Phi(comb) >= ||g||_1 / (a Phi^-1(1/(a(N+1))))", failures == 0,
                        std::to_string(failures) + " failures in " + std::to_string(checks) + " checks"});
  return r;
}

VerificationReport run_gaussian_limits(const Json& config) {
  VerificationReport r{"gaussian_limits", config, {"record", "lambda", "value", "aux"}};
  const Grid mg = detail::grid_from(config.at("M_grid"));
  const auto M = parse_function(config.at("M").get<std::string>(), mg);
  const auto lambdas = detail::log_grid_from(config.at("lambdas"));
  const double usable = max_usable_lambda(M);
  r.summary["max_usable_lambda"] = num(usable);
  if (lambdas.back() > usable)
    throw Error("lambda grid reaches " + sci(lambdas.back()) + " but the grid of M resolves only lambda <= " + sci(usable));

  const auto phis = detail::youngs_from(config.at("phis"));
  if (phis.size() != 3) throw std::invalid_argument("gaussian_limits needs three Young functions");
  double lemma_max = 0.0;
  for (double lambda : lambdas) {
    const double F = gaussian_functional(M, lambda);
    // Lemma: A lambda F_M(lambda) <= C1(1/lambda) C2(1/lambda) C3(lambda).
    const double rhs = gauge_upper(phis[0], 1.0 / lambda) * gauge_upper(phis[1], 1.0 / lambda) * gauge_upper(phis[2], lambda);
    lemma_max = std::max(lemma_max, lambda * F / rhs);
    r.rows.push_back({"F_M", lambda, num(F), num(lambda * F)});
  }

  const std::size_t zero = M.grid.n / 2;
  cplx mass{};
  for (const auto& v : M.values) mass += v * mg.spacing();
  const double top_target = std::sqrt(kPi) * std::abs(M.values[zero]);
  const double top = lambdas.back() * gaussian_functional(M, lambdas.back());
  const double bottom_target = std::abs(mass);
  const double bottom = gaussian_functional(M, lambdas.front());
  const double top_err = std::abs(top - top_target) / top_target;
  const double bottom_err = std::abs(bottom - bottom_target) / bottom_target;
  const double lim_tol = config.at("limit_rel_tol").get<double>();
  r.summary["lambda_F_at_max"] = num(top);
  r.summary["sqrt_pi_M0"] = num(top_target);
  r.summary["F_at_min"] = num(bottom);
  r.summary["abs_integral_M"] = num(bottom_target);
  r.summary["lemma_ratio_max"] = num(lemma_max);
  r.verdicts.push_back({"lambda F_M(lambda) -> sqrt(pi) |M(0)|", top_err <= lim_tol, "rel err " + sci(top_err)});
  r.verdicts.push_back({"F_M(lambda) -> |int M| as lambda -> 0", bottom_err <= lim_tol, "rel err " + sci(bottom_err)});

  // alpha = liminf_{lambda->0} P(lambda), beta = liminf_{lambda->inf} lambda P(lambda), with
  // P(lambda) = C1(lambda) C2(lambda) C3(1/lambda); minima over the grid plus fitted slopes.
  const auto proxy = detail::log_grid_from(config.at("proxy_lambdas"));
  std::vector<double> sx, sy, lx, ly;
  double alpha_min = kInf, beta_min = kInf;
  const double lo_edge = proxy.front() * 100.0, hi_edge = proxy.back() / 100.0;
  for (double lambda : proxy) {
    const double P = weight_W(phis[0], phis[1], phis[2], lambda);
    r.rows.push_back({"proxy", lambda, num(P), num(lambda * P)});
    if (lambda <= 1.0) alpha_min = std::min(alpha_min, P);
    if (lambda >= 1.0) beta_min = std::min(beta_min, lambda * P);
    if (lambda <= lo_edge) {
      sx.push_back(std::log(lambda));
      sy.push_back(std::log(P));
    }
    if (lambda >= hi_edge) {
      lx.push_back(std::log(lambda));
      ly.push_back(std::log(lambda * P));
    }
  }
  const double slope_tol = config.at("slope_tol").get<double>();
  const double alpha_slope = detail::fit_slope(sx, sy), beta_slope = detail::fit_slope(lx, ly);
  const bool alpha_zero = alpha_slope > slope_tol, beta_zero = beta_slope < -slope_tol;
  r.summary["proxy_note"] = "liminf proxies: minima over the lambda grid and log-log slopes over its outer two decades";
  r.summary["alpha_proxy_min"] = num(alpha_min);
  r.summary["alpha_slope"] = num(alpha_slope);
  r.summary["alpha_vanishes"] = alpha_zero;
  r.summary["beta_proxy_min"] = num(beta_min);
  r.summary["beta_slope"] = num(beta_slope);
  r.summary["beta_vanishes"] = beta_zero;
  r.summary["class_empty_flag"] = alpha_zero || beta_zero;
  if (std::all_of(phis.begin(), phis.end(), detail::is_power)) {
    const double e = 1.0 / phis[2].parameter() - 1.0 / phis[0].parameter() - 1.0 / phis[1].parameter();
    const bool ok = std::abs(alpha_slope - e) <= slope_tol && std::abs(beta_slope - (1.0 + e)) <= slope_tol;
    r.verdicts.push_back({"proxy exponents match 1/p3 - 1/p1 - 1/p2 and 1 + 1/p3 - 1/p1 - 1/p2", ok,
                          "alpha slope " + sci(alpha_slope) + ", beta slope " + sci(beta_slope) + ", closed form " + sci(e)});
  }
  return r;
}

VerificationReport run_homogeneous_constraint(const Json& config) {
  VerificationReport r{"homogeneous", config, {"t", "product_upper", "product_lower", "closed_form"}};
  const auto phis = detail::youngs_from(config.at("phis"));
  if (phis.size() != 3) throw std::invalid_argument("homogeneous needs three Young functions");
  const double tol = config.at("tol").get<double>();
  const bool powers = std::all_of(phis.begin(), phis.end(), detail::is_power);
  const double e = powers ? 1.0 / phis[2].parameter() - 1.0 / phis[0].parameter() - 1.0 / phis[1].parameter() : 0.0;

  double min_upper = kInf, worst_closed = 0.0;
  for (double t : detail::log_grid_from(config.at("t"))) {
    // h3(t) h1(1/t) h2(1/t) = C3(1/t) C1(t) C2(t)
    const double up = weight_W(phis[0], phis[1], phis[2], t);
    const double lo = gauge_lower(phis[2], 1.0 / t) * gauge_lower(phis[0], t) * gauge_lower(phis[1], t);
    min_upper = std::min(min_upper, up);
    Json closed = nullptr;
    if (powers) {
      const double c = std::pow(t, e);
      worst_closed = std::max(worst_closed, std::abs(up - c) / c);
      closed = c;
    }
    r.rows.push_back({t, num(up), num(lo), closed});
  }
  const bool compatible = min_upper >= 1.0 - tol;
  r.summary["min_product_upper"] = num(min_upper);
  r.summary["classification"] = compatible ? "compatible" : "index-incompatible";
  const double at_one = weight_W(phis[0], phis[1], phis[2], 1.0);
  r.verdicts.push_back({"product is 1 at t = 1", std::abs(at_one - 1.0) <= tol, "product " + sci(at_one)});
  if (powers) {
    r.summary["closed_form_exponent"] = num(e);
    r.verdicts.push_back({"product equals t^(1/p3 - 1/p1 - 1/p2)", worst_closed <= tol, "max rel err " + sci(worst_closed)});
  }

  const auto& b = config.at("boyd");
  try {
    std::vector<BoydEstimate> idx;
    for (const auto& phi : phis)
      idx.push_back(boyd_indices(phi, b.at("t_lo").get<double>(), b.at("t_hi").get<double>(), b.at("fit_decades").get<double>()));
    const double btol = config.at("boyd_tol").get<double>();
    const bool fo1 = idx[2].upper_index >= idx[0].lower_index + idx[1].lower_index - btol;
    const bool f2 = idx[2].lower_index <= idx[0].upper_index + idx[1].upper_index + btol;
    Json bj = Json::array();
    for (std::size_t i = 0; i < 3; ++i)
      bj.push_back(Json{{"phi", phis[i].describe()}, {"lower", num(idx[i].lower_index)}, {"upper", num(idx[i].upper_index)}});
    r.summary["boyd"] = bj;
    r.summary["fo1_holds"] = fo1;
    r.summary["f2_holds"] = f2;
    r.verdicts.push_back({"compatible product implies the Boyd inequalities (fo1), (f2)", !compatible || (fo1 && f2),
                          std::string("fo1 ") + (fo1 ? "holds" : "fails") + ", f2 " + (f2 ? "holds" : "fails")});
  } catch (const Error& err) {
    r.summary["boyd_error"] = err.what();
  }
  return r;
}

}  // namespace orlicz
