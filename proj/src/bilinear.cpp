#include "orlicz/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orlicz {

namespace {

using Index = long long;

// e^{2 pi i q / n} for q in [0, n); phases on the lattice reduce to these exactly.
std::vector<cplx> twiddles(std::size_t n) {
  std::vector<cplx> w(n);
  for (std::size_t q = 0; q < n; ++q) w[q] = std::polar(1.0, 2.0 * kPi * static_cast<double>(q) / static_cast<double>(n));
  return w;
}

std::size_t wrap(Index q, Index n) { return static_cast<std::size_t>(((q % n) + n) % n); }

struct Setup {
  Spectrum F;
  Spectrum G;
  Grid out_grid;
  std::optional<Interval> out_hint;
  Index n = 0;       // padded size
  Index half = 0;    // n / 2, the index of frequency 0 and of x = 0
  Index offset = 0;  // padded index of original node 0
  double dxi = 0.0;
};

Setup make_setup(const SampledFunction& f, const SampledFunction& g) {
  if (!(f.grid == g.grid)) throw std::invalid_argument("evaluate_bm: f and g must share a grid");
  Setup s;
  s.F = padded_spectrum(f);
  s.G = padded_spectrum(g);
  s.out_grid = f.grid;
  if (f.bandlimit_hint && g.bandlimit_hint)
    s.out_hint = Interval{f.bandlimit_hint->lo + g.bandlimit_hint->lo, f.bandlimit_hint->hi + g.bandlimit_hint->hi};
  s.n = static_cast<Index>(s.F.grid.n);
  s.half = s.n / 2;
  s.offset = (s.n - static_cast<Index>(f.grid.n)) / 2;
  s.dxi = s.F.grid.dual().spacing();
  return s;
}

SampledFunction finish(const Setup& s, std::vector<cplx> padded_values) {
  SampledFunction wide{s.F.grid, std::move(padded_values), {}, s.out_hint};
  SampledFunction out = crop(wide, s.out_grid);
  out.bandlimit_hint = s.out_hint;
  return out;
}

SampledFunction zero_result(const Setup& s) { return finish(s, std::vector<cplx>(static_cast<std::size_t>(s.n))); }

// M(d dxi) for d in [d_lo, d_hi].
std::vector<cplx> profile_table(const Symbol& m, Index d_lo, Index d_hi, double dxi) {
  std::vector<cplx> t(static_cast<std::size_t>(d_hi - d_lo + 1));
  for (Index d = d_lo; d <= d_hi; ++d) t[static_cast<std::size_t>(d - d_lo)] = m.profile(static_cast<double>(d) * dxi);
  return t;
}

SampledFunction pointwise(const SampledFunction& f, const SampledFunction& g, cplx c) {
  std::vector<cplx> v(f.values.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = c * (f.values[j] * g.values[j]);
  SampledFunction out = make_sampled(f.grid, std::move(v));
  if (f.bandlimit_hint && g.bandlimit_hint)
    out.bandlimit_hint = Interval{f.bandlimit_hint->lo + g.bandlimit_hint->lo, f.bandlimit_hint->hi + g.bandlimit_hint->hi};
  return out;
}

SampledFunction eval_separable(const Symbol& m, const SampledFunction& f, const SampledFunction& g) {
  const Setup s = make_setup(f, g);
  if (s.F.empty || s.G.empty) return zero_result(s);
  const Grid dual = s.F.grid.dual();
  auto a = s.F.coeffs;
  auto b = s.G.coeffs;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != cplx{}) a[k] *= m.factor_a()(dual.node(k));
    if (b[k] != cplx{}) b[k] *= m.factor_b()(dual.node(k));
  }
  inverse_transform(s.F.grid, a);
  inverse_transform(s.F.grid, b);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  return finish(s, std::move(a));
}

SampledFunction eval_direct(const Symbol& m, const SampledFunction& f, const SampledFunction& g) {
  const Setup s = make_setup(f, g);
  if (s.F.empty || s.G.empty) return zero_result(s);
  const auto k0 = static_cast<Index>(s.F.first), k1 = static_cast<Index>(s.F.last);
  const auto l0 = static_cast<Index>(s.G.first), l1 = static_cast<Index>(s.G.last);
  const bool diff = m.is_difference();
  std::vector<cplx> table;
  if (diff) table = profile_table(m, k0 - l1, k1 - l0, s.dxi);
  const auto w = twiddles(static_cast<std::size_t>(s.n));
  const Grid dual = s.F.grid.dual();

  std::vector<cplx> acc(static_cast<std::size_t>(s.n));
  std::vector<cplx> h(static_cast<std::size_t>(s.n));
  const auto n_out = static_cast<Index>(s.out_grid.n);
  for (Index k = k0; k <= k1; ++k) {
    const cplx Fk = s.F.coeffs[static_cast<std::size_t>(k)];
    if (Fk == cplx{}) continue;
    std::fill(h.begin(), h.end(), cplx{});
    for (Index l = l0; l <= l1; ++l) {
      const cplx Gl = s.G.coeffs[static_cast<std::size_t>(l)];
      if (Gl == cplx{}) continue;
      const cplx mv = diff ? table[static_cast<std::size_t>(k - l - (k0 - l1))]
                           : m(dual.node(static_cast<std::size_t>(k)), dual.node(static_cast<std::size_t>(l)));
      h[static_cast<std::size_t>(l)] = Gl * mv;
    }
    inverse_transform(s.F.grid, h);
    const cplx c = Fk * s.dxi;
    for (Index j = 0; j < n_out; ++j) {
      const Index i = j + s.offset;
      acc[static_cast<std::size_t>(i)] += c * w[wrap((k - s.half) * (i - s.half), s.n)] * h[static_cast<std::size_t>(i)];
    }
  }
  return finish(s, std::move(acc));
}

SampledFunction eval_kernel(const Symbol& m, const SampledFunction& f, const SampledFunction& g) {
  const Setup s = make_setup(f, g);
  if (s.F.empty || s.G.empty) return zero_result(s);
  const Index quarter = s.n / 4;
  const auto inside = [&](const Spectrum& sp) {
    return static_cast<Index>(sp.first) - s.half > -quarter && static_cast<Index>(sp.last) - s.half < quarter;
  };
  if (!inside(s.F) || !inside(s.G))
    throw Error("kernel path needs both spectra inside half the Nyquist band; refine the grid or use another method");

  std::vector<cplx> K(static_cast<std::size_t>(s.n));
  for (Index i = 0; i < s.n; ++i) K[static_cast<std::size_t>(i)] = m.profile(static_cast<double>(i - s.half) * s.dxi);
  inverse_transform(s.F.grid, K);
  auto fp = s.F.coeffs;
  auto gp = s.G.coeffs;
  inverse_transform(s.F.grid, fp);
  inverse_transform(s.F.grid, gp);

  const double dx = s.F.grid.spacing();
  std::vector<cplx> acc(static_cast<std::size_t>(s.n));
  const auto n_out = static_cast<Index>(s.out_grid.n);
  for (Index j = 0; j < n_out; ++j) {
    const Index a = j + s.offset;
    // x_a - t_i sits at padded index a - i + half, x_a + t_i at a + i - half.
    const Index lo = std::max<Index>({0, a + s.half - (s.n - 1), s.half - a});
    const Index hi = std::min<Index>({s.n - 1, a + s.half, s.n - 1 + s.half - a});
    cplx sum{};
    for (Index i = lo; i <= hi; ++i)
      sum += fp[static_cast<std::size_t>(a - i + s.half)] * gp[static_cast<std::size_t>(a + i - s.half)] *
             K[static_cast<std::size_t>(i)];
    acc[static_cast<std::size_t>(a)] = sum * dx;
  }
  return finish(s, std::move(acc));
}

SampledFunction eval_halfsum(const Symbol& m, const SampledFunction& f, const SampledFunction& g) {
  const Setup s = make_setup(f, g);
  if (s.F.empty || s.G.empty) return zero_result(s);
  const auto k0 = static_cast<Index>(s.F.first), k1 = static_cast<Index>(s.F.last);
  const auto l0 = static_cast<Index>(s.G.first), l1 = static_cast<Index>(s.G.last);
  const Index d_lo = k0 - l1, d_hi = k1 - l0;
  const auto table = profile_table(m, d_lo, d_hi, s.dxi);

  // u = xi + eta lands on lattice index k + l - half; folding mod n is exact
  // on the padded nodes. Jacobian: (1/2) du dv with du = 2 dxi, dv = dxi.
  std::vector<cplx> S(static_cast<std::size_t>(s.n));
  for (Index d = d_lo; d <= d_hi; ++d) {
    const cplx Mv = table[static_cast<std::size_t>(d - d_lo)];
    if (Mv == cplx{}) continue;
    const Index ks = std::max(k0, l0 + d), ke = std::min(k1, l1 + d);
    for (Index k = ks; k <= ke; ++k) {
      const Index l = k - d;
      S[wrap(k + l - s.half, s.n)] +=
          s.F.coeffs[static_cast<std::size_t>(k)] * s.G.coeffs[static_cast<std::size_t>(l)] * Mv;
    }
  }
  const double jac = 0.5 * (2.0 * s.dxi) * s.dxi / s.dxi;
  for (auto& v : S) v *= jac;
  inverse_transform(s.F.grid, S);
  return finish(s, std::move(S));
}

SampledFunction eval_convolution(const Symbol& m, const SampledFunction& f, const SampledFunction& g) {
  const Setup s = make_setup(f, g);
  if (s.F.empty || s.G.empty) return zero_result(s);
  const auto k0 = static_cast<Index>(s.F.first), k1 = static_cast<Index>(s.F.last);
  const auto l0 = static_cast<Index>(s.G.first), l1 = static_cast<Index>(s.G.last);
  const Index d_lo = k0 - l1, d_hi = k1 - l0;
  const auto table = profile_table(m, d_lo, d_hi, s.dxi);
  const auto w = twiddles(static_cast<std::size_t>(s.n));

  std::vector<cplx> acc(static_cast<std::size_t>(s.n));
  std::vector<cplx> P(static_cast<std::size_t>(s.n));
  const auto n_out = static_cast<Index>(s.out_grid.n);
  for (Index d = d_lo; d <= d_hi; ++d) {
    const cplx Mb = table[static_cast<std::size_t>(d - d_lo)];
    if (Mb == cplx{}) continue;
    // (f * M_beta g)^(xi_k) = F_k G_{k - d}
    std::fill(P.begin(), P.end(), cplx{});
    const Index ks = std::max(k0, l0 + d), ke = std::min(k1, l1 + d);
    for (Index k = ks; k <= ke; ++k)
      P[static_cast<std::size_t>(k)] = s.F.coeffs[static_cast<std::size_t>(k)] * s.G.coeffs[static_cast<std::size_t>(k - d)];
    inverse_transform(s.F.grid, P);
    const cplx c = Mb * s.dxi;
    for (Index j = 0; j < n_out; ++j) {
      const Index i = j + s.offset;
      const Index twice = 2 * i - s.half;  // padded index of 2 x_i
      acc[static_cast<std::size_t>(i)] += c * w[wrap(-d * (i - s.half), s.n)] * P[static_cast<std::size_t>(twice)];
    }
  }
  return finish(s, std::move(acc));
}

SampledFunction eval_space_side(const Symbol& m, const SampledFunction& f, const SampledFunction& g) {
  if (!(f.grid == g.grid)) throw std::invalid_argument("evaluate_bm: f and g must share a grid");
  const SampledFunction fp = pad(f, 2);
  const SampledFunction gp = pad(g, 2);
  std::vector<cplx> acc(fp.grid.n);
  for (const auto& [t, weight] : m.measure().discretised()) {
    if (weight == cplx{}) continue;
    const SampledFunction a = translate(fp, m.alpha() * t);
    const SampledFunction b = translate(gp, m.beta() * t);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += weight * (a.values[i] * b.values[i]);
  }
  SampledFunction wide{fp.grid, std::move(acc), {}, std::nullopt};
  SampledFunction out = crop(wide, f.grid);
  if (f.bandlimit_hint && g.bandlimit_hint && m.measure().density == std::nullopt && m.measure().atoms.size() == 1)
    out.bandlimit_hint = Interval{f.bandlimit_hint->lo + g.bandlimit_hint->lo, f.bandlimit_hint->hi + g.bandlimit_hint->hi};
  return out;
}

}  // namespace

const char* to_string(Method method) {
  switch (method) {
    case Method::automatic: return "auto";
    case Method::direct: return "direct";
    case Method::kernel: return "kernel";
    case Method::halfsum: return "halfsum";
    case Method::convolution: return "convolution";
    case Method::space_side: return "space";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::automatic, Method::direct, Method::kernel, Method::halfsum, Method::convolution,
                   Method::space_side})
    if (name == to_string(m)) return m;
  if (name == "automatic") return Method::automatic;
  if (name == "space_side") return Method::space_side;
  throw std::invalid_argument("unknown method '" + name + "' (auto|direct|kernel|halfsum|convolution|space)");
}

bool method_applies(const Symbol& m, Method method) {
  switch (method) {
    case Method::automatic:
    case Method::direct: return true;
    case Method::kernel: return m.is_difference() && m.profile_window().has_value();
    case Method::halfsum:
    case Method::convolution: return m.is_difference();
    case Method::space_side: return m.form() == SymbolForm::measure_hat;
  }
  return false;
}

Spectrum padded_spectrum(const SampledFunction& f, std::size_t pad_factor) {
  const SampledFunction fp = pad(f, pad_factor);
  Spectrum s;
  s.grid = fp.grid;
  s.coeffs = fp.values;
  forward_transform(s.grid, s.coeffs);
  auto range = active_range(s.coeffs);
  double peak = 0.0;
  for (const auto& c : s.coeffs) peak = std::max(peak, std::abs(c));
  if (!range || peak == 0.0) {
    std::fill(s.coeffs.begin(), s.coeffs.end(), cplx{});
    return s;
  }
  std::size_t first = s.coeffs.size(), last = 0;
  for (std::size_t k = 0; k < s.coeffs.size(); ++k) {
    if (std::abs(s.coeffs[k]) > 1e-14 * peak) {
      first = std::min(first, k);
      last = k;
    }
  }
  if (f.bandlimit_hint) {
    // The hint may only narrow the range; one coarse cell of slack on each side.
    const Grid d = s.grid.dual();
    const double slack = f.grid.dual().spacing();
    const double lo = (f.bandlimit_hint->lo - slack - d.node(0)) / d.spacing();
    const double hi = (f.bandlimit_hint->hi + slack - d.node(0)) / d.spacing();
    const auto lo_i = static_cast<std::size_t>(std::clamp(std::ceil(lo), 0.0, static_cast<double>(s.grid.n - 1)));
    const auto hi_i = static_cast<std::size_t>(std::clamp(std::floor(hi), 0.0, static_cast<double>(s.grid.n - 1)));
    first = std::max(first, lo_i);
    last = std::min(last, hi_i);
  }
  if (first > last) {
    std::fill(s.coeffs.begin(), s.coeffs.end(), cplx{});
    return s;
  }
  for (std::size_t k = 0; k < s.coeffs.size(); ++k)
    if (k < first || k > last) s.coeffs[k] = cplx{};
  s.first = first;
  s.last = last;
  s.empty = false;
  return s;
}

SampledFunction evaluate_bm(const Symbol& m, const SampledFunction& f, const SampledFunction& g, Method method) {
  if (!(f.grid == g.grid)) throw std::invalid_argument("evaluate_bm: f and g must share a grid");
  if (!method_applies(m, method))
    throw std::invalid_argument(std::string("method ") + to_string(method) + " does not apply to symbol " + m.label());
  switch (method) {
    case Method::automatic: {
      if (auto c = m.constant_value()) return pointwise(f, g, *c);
      if (m.form() == SymbolForm::measure_hat) return eval_space_side(m, f, g);
      if (m.is_separable()) return eval_separable(m, f, g);
      if (method_applies(m, Method::kernel)) {
        try {
          return eval_kernel(m, f, g);
        } catch (const Error&) {
          // outside the kernel band: fall through to the direct sum
        }
      }
      return eval_direct(m, f, g);
    }
    case Method::direct: return m.is_separable() ? eval_separable(m, f, g) : eval_direct(m, f, g);
    case Method::kernel: return eval_kernel(m, f, g);
    case Method::halfsum: return eval_halfsum(m, f, g);
    case Method::convolution: return eval_convolution(m, f, g);
    case Method::space_side: return eval_space_side(m, f, g);
  }
  throw std::logic_error("unreachable");
}

SampledFunction apply_linear_multiplier(const SampledFunction& m, const SampledFunction& f) {
  if (!(m.grid == f.grid.dual())) throw std::invalid_argument("linear multiplier must be sampled on f.grid.dual()");
  std::vector<cplx> data = f.values;
  forward_transform(f.grid, data);
  for (std::size_t k = 0; k < data.size(); ++k) data[k] *= m.values[k];
  inverse_transform(f.grid, data);
  SampledFunction out = make_sampled(f.grid, std::move(data));
  out.bandlimit_hint = f.bandlimit_hint;
  return out;
}

SampledFunction apply_linear_multiplier(const Symbol::Fn1& m, const SampledFunction& f) {
  return apply_linear_multiplier(sample(f.grid.dual(), m), f);
}

cplx f1_spot_value(const Symbol& m, const SampledFunction& f, const SampledFunction& g, double x) {
  if (!m.is_difference()) throw std::invalid_argument("f1 spot check needs a difference symbol");
  const Setup s = make_setup(f, g);
  if (s.F.empty || s.G.empty) return 0.0;
  const auto k0 = static_cast<Index>(s.F.first), k1 = static_cast<Index>(s.F.last);
  const auto l0 = static_cast<Index>(s.G.first), l1 = static_cast<Index>(s.G.last);
  const auto table = profile_table(m, k0 - l1, k1 - l0, s.dxi);
  const Grid dual = s.F.grid.dual();
  // (tau_x g)^(eta) = e^{-2 pi i eta x} g^(eta), then convolved with M.
  std::vector<cplx> tg(static_cast<std::size_t>(l1 - l0 + 1));
  for (Index l = l0; l <= l1; ++l)
    tg[static_cast<std::size_t>(l - l0)] =
        s.G.coeffs[static_cast<std::size_t>(l)] * std::polar(1.0, -2.0 * kPi * dual.node(static_cast<std::size_t>(l)) * x);
  cplx total{};
  for (Index k = k0; k <= k1; ++k) {
    const cplx Fk = s.F.coeffs[static_cast<std::size_t>(k)];
    if (Fk == cplx{}) continue;
    cplx C{};
    for (Index l = l0; l <= l1; ++l) C += tg[static_cast<std::size_t>(l - l0)] * table[static_cast<std::size_t>(k - l - (k0 - l1))];
    total += C * s.dxi * Fk * std::polar(1.0, -2.0 * kPi * dual.node(static_cast<std::size_t>(k)) * x);
  }
  return total * s.dxi;
}

}  // namespace orlicz
