#include "orlicz/bilinear.hpp"
#include "orlicz/dilation_gauge.hpp"
#include "orlicz/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace orlicz {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double weight_or_nan(const std::optional<YoungTriple>& triple, double t) {
  if (!triple) return std::nan("");
  return weight_W(triple->phi1, triple->phi2, triple->phi3, t);
}

}  // namespace

TransformedSymbol symbol_transform(const Symbol& m, const SymbolOp& op, const std::optional<YoungTriple>& triple) {
  using K = SymbolOp::Kind;
  switch (op.kind) {
    case K::translate: {
      const double x0 = op.xi0, y0 = op.eta0;
      const std::string rule = "translate(" + fmt(x0) + "," + fmt(y0) + ")";
      if (m.constant_value()) return {m, 1.0, rule};
      if (m.form() == SymbolForm::difference) {
        const double c = x0 - y0;
        const auto w = *m.profile_window();
        return {Symbol::difference([m, c](double v) { return m.profile(v - c); }, {w.lo + c, w.hi + c},
                                   m.label() + "|" + rule),
                1.0, rule};
      }
      return {Symbol::general([m, x0, y0](double xi, double eta) { return m(xi - x0, eta - y0); }, m.label() + "|" + rule),
              1.0, rule};
    }
    case K::modulate: {
      const double x0 = op.xi0, y0 = op.eta0;
      const std::string rule = "modulate(" + fmt(x0) + "," + fmt(y0) + ")";
      if (m.form() == SymbolForm::difference && x0 == -y0) {
        const auto w = *m.profile_window();
        return {Symbol::difference([m, x0](double v) { return m.profile(v) * std::polar(1.0, 2.0 * kPi * x0 * v); }, w,
                                   m.label() + "|" + rule),
                1.0, rule};
      }
      return {Symbol::general([m, x0, y0](double xi, double eta) { return m(xi, eta) * std::polar(1.0, 2.0 * kPi * (xi * x0 + eta * y0)); },
                  m.label() + "|" + rule),
              1.0, rule};
    }
    case K::dilate: {
      const double t = op.t;
      if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("dilate needs t > 0");
      const std::string rule = "dilate(" + fmt(t) + ")";
      const double factor = weight_or_nan(triple, t);
      if (m.constant_value()) return {m, factor, rule};
      if (m.form() == SymbolForm::measure_hat)
        return {Symbol::measure_hat(m.measure(), m.alpha() * t, m.beta() * t), factor, rule};
      if (m.form() == SymbolForm::difference) {
        const auto w = *m.profile_window();
        return {Symbol::difference([m, t](double v) { return m.profile(t * v); }, {w.lo / t, w.hi / t},
                                   m.label() + "|" + rule),
                factor, rule};
      }
      return {Symbol::general([m, t](double xi, double eta) { return m(t * xi, t * eta); }, m.label() + "|" + rule), factor,
              rule};
    }
    case K::convolve_with: {
      const auto nodes = op.kernel.nodes;
      const std::string rule = "convolve(" + std::to_string(nodes.size()) + " nodes)";
      const double factor = op.kernel.l1();
      if (m.form() == SymbolForm::difference) {
        auto w = *m.profile_window();
        double lo = w.lo, hi = w.hi;
        for (const auto& nd : nodes) {
          lo = std::min(lo, w.lo + nd[0] - nd[1]);
          hi = std::max(hi, w.hi + nd[0] - nd[1]);
        }
        return {Symbol::difference(
                    [m, nodes](double v) {
                      cplx acc{};
                      for (const auto& nd : nodes) acc += nd[2] * m.profile(v - (nd[0] - nd[1]));
                      return acc;
                    },
                    {lo, hi}, m.label() + "|" + rule),
                factor, rule};
      }
      return {Symbol::general([m, nodes](double xi, double eta) {
                    cplx acc{};
                    for (const auto& nd : nodes) acc += nd[2] * m(xi - nd[0], eta - nd[1]);
                    return acc;
                  },
                  m.label() + "|" + rule),
              factor, rule};
    }
    case K::multiply_hat: {
      const auto nodes = op.kernel.nodes;
      const std::string rule = "multiply_hat(" + std::to_string(nodes.size()) + " nodes)";
      return {Symbol::general([m, nodes](double xi, double eta) {
                    cplx hat{};
                    for (const auto& nd : nodes) hat += nd[2] * std::polar(1.0, -2.0 * kPi * (nd[0] * xi + nd[1] * eta));
                    return hat * m(xi, eta);
                  },
                  m.label() + "|" + rule),
              op.kernel.l1(), rule};
    }
    case K::psi_average: {
      const auto& p = op.psi;
      if (p.t.size() != p.psi.size() || p.t.size() != p.dt.size() || p.t.empty())
        throw std::invalid_argument("psi profile needs matching non-empty t, psi, dt");
      double integral = 0.0;
      double factor = 0.0;
      for (std::size_t i = 0; i < p.t.size(); ++i) {
        if (!(p.t[i] > 0.0)) throw std::invalid_argument("psi grid must lie in t > 0");
        integral += p.psi[i] * p.dt[i];
        if (p.psi[i] == 0.0) continue;
        factor += std::abs(p.psi[i]) * weight_or_nan(triple, p.t[i]) * p.dt[i];
      }
      if (triple && !std::isfinite(factor)) throw Error("psi is not integrable against W on its grid");
      const std::string rule = "psi_average(" + std::to_string(p.t.size()) + " nodes)";
      if (auto c = m.constant_value()) return {Symbol::constant(*c * integral), factor, rule};
      if (m.form() == SymbolForm::difference) {
        const auto w = *m.profile_window();
        double lo = kInf, hi = -kInf;
        for (double t : p.t) {
          lo = std::min({lo, w.lo / t, w.hi / t});
          hi = std::max({hi, w.lo / t, w.hi / t});
        }
        return {Symbol::difference(
                    [m, p](double v) {
                      cplx acc{};
                      for (std::size_t i = 0; i < p.t.size(); ++i) acc += p.psi[i] * p.dt[i] * m.profile(p.t[i] * v);
                      return acc;
                    },
                    {lo, hi}, m.label() + "|" + rule),
                factor, rule};
      }
      return {Symbol::general([m, p](double xi, double eta) {
                    cplx acc{};
                    for (std::size_t i = 0; i < p.t.size(); ++i) acc += p.psi[i] * p.dt[i] * m(p.t[i] * xi, p.t[i] * eta);
                    return acc;
                  },
                  m.label() + "|" + rule),
              factor, rule};
    }
    case K::compose_linear: {
      if (!op.m1.m || !op.m2.m) throw std::invalid_argument("compose_linear needs both linear factors");
      const auto a = op.m1.m, b = op.m2.m;
      const double factor = op.m1.norm * op.m2.norm;
      const std::string rule = "compose_linear";
      if (auto c = m.constant_value()) {
        const cplx cc = *c;
        return {Symbol::separable([a, cc](double xi) { return cc * a(xi); }, b, m.label() + "|" + rule), factor, rule};
      }
      return {Symbol::general([m, a, b](double xi, double eta) { return a(xi) * m(xi, eta) * b(eta); }, m.label() + "|" + rule),
              factor, rule};
    }
  }
  throw std::logic_error("unreachable");
}

std::optional<NormRatio> norm_ratio(const Symbol& m, const YoungTriple& triple, const SampledFunction& f,
                                    const SampledFunction& g, Method method) {
  const double n1 = luxemburg_norm(f, triple.phi1);
  const double n2 = luxemburg_norm(g, triple.phi2);
  if (!(n1 > 0.0) || !(n2 > 0.0)) return std::nullopt;
  const SampledFunction b = evaluate_bm(m, f, g, method);
  return NormRatio{luxemburg_norm(b, triple.phi3), n1, n2};
}

const char* to_string(TestFamily family) {
  switch (family) {
    case TestFamily::indicators: return "indicators";
    case TestFamily::gaussians: return "gaussians";
    case TestFamily::modulated_translates: return "modulated_translates";
    case TestFamily::rademacher_combs: return "rademacher_combs";
  }
  return "unknown";
}

TestFamily parse_family(const std::string& name) {
  for (TestFamily f : {TestFamily::indicators, TestFamily::gaussians, TestFamily::modulated_translates,
                       TestFamily::rademacher_combs})
    if (name == to_string(f)) return f;
  throw std::invalid_argument("unknown family '" + name +
                              "' (indicators|gaussians|modulated_translates|rademacher_combs)");
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

namespace {

// Snaps x to the grid node at or below it.
double snap(const Grid& g, double x) { return g.node(0) + std::floor((x - g.node(0)) / g.spacing()) * g.spacing(); }

struct Draw {
  SampledFunction f;
  std::string label;
};

Draw draw_indicator(const Grid& grid, std::mt19937_64& rng) {
  const double L = grid.half_width;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double max_exp = std::log2(L / 2.0);
  double a = std::exp2(-4.0 + (max_exp + 4.0) * u(rng));
  a = std::max(grid.spacing(), std::round(a / grid.spacing()) * grid.spacing());
  const double start = snap(grid, -L / 2.0 + 0.5 * (L - a) * u(rng));
  std::ostringstream os;
  os.precision(17);
  os << "indicator(a=" << a << ",start=" << start << ")";
  return {indicator(grid, a, start), os.str()};
}

// Gaussians narrow enough in frequency to stay inside half the Nyquist band.
double gaussian_s_min(const Grid& grid) {
  const double nu = grid.dual().half_width;
  return 6.0 / (0.4 * nu);
}

Draw draw_gaussian(const Grid& grid, std::mt19937_64& rng) {
  const double L = grid.half_width;
  const double nu = grid.dual().half_width;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double s_min = gaussian_s_min(grid);
  const double s = s_min * (1.0 + 0.6 * u(rng));
  const double c = (L / 8.0) * (2.0 * u(rng) - 1.0);
  const double xi0 = (nu / 16.0) * (2.0 * u(rng) - 1.0);
  const cplx amp = std::polar(0.5 + 1.5 * u(rng), 2.0 * kPi * u(rng));
  std::ostringstream os;
  os.precision(17);
  os << "gaussian(s=" << s << ",c=" << c << ",xi0=" << xi0 << ",amp=" << amp.real() << (amp.imag() >= 0 ? "+" : "")
     << amp.imag() << "i)";
  return {scale(gaussian(grid, s, c, xi0), amp), os.str()};
}

Draw draw_modulated_translate(const Grid& grid, std::mt19937_64& rng) {
  const double L = grid.half_width;
  const double nu = grid.dual().half_width;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double s = 1.2 * gaussian_s_min(grid);
  const double y = std::round((L / 8.0) * (2.0 * u(rng) - 1.0) / grid.spacing()) * grid.spacing();
  const double x0 = (nu / 16.0) * (2.0 * u(rng) - 1.0);
  std::ostringstream os;
  os.precision(17);
  os << "modulated_translate(s=" << s << ",y=" << y << ",x0=" << x0 << ")";
  return {modulate(translate(gaussian(grid, s), y), x0), os.str()};
}

Draw draw_comb(const Grid& grid, std::mt19937_64& rng) {
  const double L = grid.half_width;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double a = std::exp2(-3.0 * u(rng));
  a = std::max(grid.spacing(), std::round(a / grid.spacing()) * grid.spacing());
  const auto max_teeth = std::max(1, static_cast<int>(std::floor(L / (a + 1.0))));
  std::uniform_int_distribution<int> teeth(1, std::min(6, max_teeth));
  const int n = teeth(rng);
  std::bernoulli_distribution coin(0.5);
  const double start = snap(grid, -L / 2.0);
  std::vector<cplx> v(grid.n);
  std::ostringstream os;
  os.precision(17);
  os << "comb(a=" << a << ",signs=";
  for (int k = 0; k < n; ++k) {
    const double sign = coin(rng) ? 1.0 : -1.0;
    os << (sign > 0 ? '+' : '-');
    const auto tooth = indicator(grid, a, start + static_cast<double>(k) * (a + 1.0));
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += sign * tooth.values[j];
  }
  os << ")";
  return {make_sampled(grid, std::move(v)), os.str()};
}

Draw draw_one(TestFamily family, const Grid& grid, std::mt19937_64& rng) {
  switch (family) {
    case TestFamily::indicators: return draw_indicator(grid, rng);
    case TestFamily::gaussians: return draw_gaussian(grid, rng);
    case TestFamily::modulated_translates: return draw_modulated_translate(grid, rng);
    case TestFamily::rademacher_combs: return draw_comb(grid, rng);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

TestPair draw_pair(TestFamily family, const Grid& grid, std::uint64_t seed) {
  grid.validate();
  std::mt19937_64 rng(seed);
  auto f = draw_one(family, grid, rng);
  auto g = draw_one(family, grid, rng);
  return {std::move(f.f), std::move(g.f), "f=" + f.label + " g=" + g.label};
}

BoundCheck opnorm_lower_search(const Symbol& m, const YoungTriple& triple, TestFamily family, std::size_t budget,
                               std::uint64_t seed, const Grid& grid) {
  if (budget == 0) throw std::invalid_argument("search budget must be >= 1");
  struct Trial {
    std::optional<NormRatio> r;
    std::string label;
  };
  std::vector<Trial> trials(budget);
  parallel_for(budget, [&](std::size_t i) {
    auto pair = draw_pair(family, grid, trial_seed(seed, i));
    trials[i].r = norm_ratio(m, triple, pair.f, pair.g);
    trials[i].label = std::move(pair.label);
  });

  BoundCheck out;
  out.trials = budget;
  double best = -1.0;
  for (std::size_t i = 0; i < budget; ++i) {
    const auto& t = trials[i];
    if (!t.r) {
      ++out.skipped;
      continue;
    }
    const double denom = t.r->n1 * t.r->n2;
    const double ratio = t.r->lhs / denom;
    if (ratio > best) {
      best = ratio;
      out.lhs = t.r->lhs;
      out.rhs = denom;
      out.ratio = ratio;
      out.witness = t.label;
      out.witness_trial = static_cast<std::int64_t>(i);
    }
  }
  return out;
}

}  // namespace orlicz
