#include "orlicz/function_lab.hpp"

#include "orlicz/detail/fft.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace orlicz {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require_same_grid(const SampledFunction& f, const SampledFunction& g, const char* what) {
  if (!(f.grid == g.grid) || f.values.size() != g.values.size())
    throw std::invalid_argument(std::string(what) + ": functions live on different grids");
}

// Node slack used when deciding whether an interval edge falls on a node.
constexpr double kNodeSlack = 1e-9;

Interval grid_interval(const Grid& g) { return {-g.half_width, g.half_width}; }

void check_inside(const Grid& grid, const Interval& support, const char* what) {
  if (!grid_interval(grid).contains(support, kNodeSlack * grid.spacing()))
    throw Error(std::string(what) + ": support leaves the grid [-L, L]");
}

}  // namespace

void Grid::validate() const {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw std::invalid_argument("grid half width must be > 0");
  if (!is_power_of_two(n) || n < 8) throw std::invalid_argument("grid size must be a power of two >= 8");
}

long long Grid::nearest_index(double x) const { return std::llround((x + half_width) / spacing()); }

std::optional<std::pair<std::size_t, std::size_t>> active_range(std::span<const cplx> values) {
  double peak = 0.0;
  for (const auto& v : values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return std::nullopt;
  const double thr = kNegligible * peak;
  std::size_t first = 0;
  while (std::abs(values[first]) <= thr) ++first;
  std::size_t last = values.size() - 1;
  while (std::abs(values[last]) <= thr) --last;
  return std::make_pair(first, last);
}

Interval effective_support(const Grid& grid, std::span<const cplx> values) {
  const auto range = active_range(values);
  if (!range) return {0.0, 0.0};
  return {grid.node(range->first), grid.node(range->second) + grid.spacing()};
}

SampledFunction make_sampled(const Grid& grid, std::vector<cplx> values) {
  grid.validate();
  if (values.size() != grid.n) throw std::invalid_argument("sample count does not match grid size");
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw std::invalid_argument("samples must be finite");
  SampledFunction f{grid, std::move(values), {}, std::nullopt};
  f.support_hint = effective_support(grid, f.values);
  return f;
}

SampledFunction sample(const Grid& grid, const std::function<cplx(double)>& fn) {
  grid.validate();
  std::vector<cplx> v(grid.n);
  for (std::size_t j = 0; j < grid.n; ++j) v[j] = fn(grid.node(j));
  return make_sampled(grid, std::move(v));
}

void forward_transform(const Grid& grid, std::vector<cplx>& data) {
  // x_j xi_k = (j - n/2)(k - n/2)/n, so the kernel factors into (-1)^(j+k) times
  // the plain DFT kernel when n/2 is even.
  const double dx = grid.spacing();
  for (std::size_t j = 1; j < data.size(); j += 2) data[j] = -data[j];
  detail::fft_inplace(data, -1);
  for (std::size_t k = 0; k < data.size(); ++k) data[k] *= (k % 2 == 0) ? dx : -dx;
}

void inverse_transform(const Grid& space_grid, std::vector<cplx>& data) {
  const double dxi = space_grid.dual().spacing();
  for (std::size_t k = 1; k < data.size(); k += 2) data[k] = -data[k];
  detail::fft_inplace(data, +1);
  for (std::size_t j = 0; j < data.size(); ++j) data[j] *= (j % 2 == 0) ? dxi : -dxi;
}

SampledFunction fourier(const SampledFunction& f) {
  std::vector<cplx> data = f.values;
  forward_transform(f.grid, data);
  SampledFunction out{f.grid.dual(), std::move(data), {}, std::nullopt};
  out.support_hint = effective_support(out.grid, out.values);
  return out;
}

SampledFunction inverse_fourier(const SampledFunction& fhat) {
  const Grid space = fhat.grid.dual();
  std::vector<cplx> data = fhat.values;
  inverse_transform(space, data);
  SampledFunction out{space, std::move(data), {}, std::nullopt};
  out.support_hint = effective_support(space, out.values);
  out.bandlimit_hint = fhat.support_hint;
  return out;
}

SampledFunction translate(const SampledFunction& f, double y) {
  const Grid& g = f.grid;
  const Interval moved{f.support_hint.lo + y, f.support_hint.hi + y};
  check_inside(g, moved, "translate");
  const double cells = y / g.spacing();
  const double whole = std::round(cells);
  SampledFunction out = f;
  out.support_hint = moved;
  if (std::abs(cells - whole) < kNodeSlack) {
    const auto shift = static_cast<long long>(whole);
    const auto n = static_cast<long long>(g.n);
    for (long long j = 0; j < n; ++j) {
      const long long src = j - shift;
      out.values[static_cast<std::size_t>(j)] = (src >= 0 && src < n) ? f.values[static_cast<std::size_t>(src)] : cplx{};
    }
    return out;
  }
  std::vector<cplx> data = f.values;
  forward_transform(g, data);
  const Grid d = g.dual();
  for (std::size_t k = 0; k < data.size(); ++k) data[k] *= std::polar(1.0, -2.0 * kPi * y * d.node(k));
  inverse_transform(g, data);
  out.values = std::move(data);
  return out;
}

SampledFunction modulate(const SampledFunction& f, double x0) {
  SampledFunction out = f;
  if (x0 == 0.0) return out;
  for (std::size_t j = 0; j < f.values.size(); ++j) out.values[j] *= std::polar(1.0, 2.0 * kPi * x0 * f.grid.node(j));
  if (out.bandlimit_hint) out.bandlimit_hint = Interval{out.bandlimit_hint->lo + x0, out.bandlimit_hint->hi + x0};
  return out;
}

SampledFunction dilate(const SampledFunction& f, double lambda, DilationMode mode) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("dilation needs lambda > 0");
  const Grid& g = f.grid;
  const Interval moved{f.support_hint.lo / lambda, f.support_hint.hi / lambda};
  check_inside(g, moved, "dilate");
  if (mode == DilationMode::automatic) mode = f.bandlimit_hint ? DilationMode::bandlimited : DilationMode::step;

  SampledFunction out = f;
  out.support_hint = moved;
  const double dx = g.spacing();
  const double L = g.half_width;
  if (mode == DilationMode::step) {
    out.bandlimit_hint.reset();
    for (std::size_t j = 0; j < g.n; ++j) {
      const double pos = (lambda * g.node(j) + L) / dx;
      const double cell = std::floor(pos + kNodeSlack);
      out.values[j] = (cell >= 0.0 && cell < static_cast<double>(g.n)) ? f.values[static_cast<std::size_t>(cell)] : cplx{};
    }
    return out;
  }

  std::vector<cplx> spec = f.values;
  forward_transform(g, spec);
  const auto range = active_range(spec);
  const Grid d = g.dual();
  const double dxi = d.spacing();
  for (std::size_t j = 0; j < g.n; ++j) {
    const double x = lambda * g.node(j);
    if (!range || x < -L || x >= L) {
      out.values[j] = cplx{};
      continue;
    }
    cplx phase = std::polar(1.0, 2.0 * kPi * d.node(range->first) * x);
    const cplx step = std::polar(1.0, 2.0 * kPi * dxi * x);
    cplx acc{};
    for (std::size_t k = range->first; k <= range->second; ++k) {
      acc += spec[k] * phase;
      phase *= step;
    }
    out.values[j] = acc * dxi;
  }
  if (out.bandlimit_hint) out.bandlimit_hint = Interval{out.bandlimit_hint->lo * lambda, out.bandlimit_hint->hi * lambda};
  return out;
}

SampledFunction group_action(const SampledFunction& f, const GroupAction& action) {
  return std::visit(
      [&](const auto& a) -> SampledFunction {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Translate>) return translate(f, a.y);
        else if constexpr (std::is_same_v<T, Modulate>) return modulate(f, a.x0);
        else return dilate(f, a.lambda, a.mode);
      },
      action);
}

double modular(const SampledFunction& f, const YoungFunction& phi, double k) {
  double sum = 0.0;
  for (const auto& v : f.values) {
    const double a = std::abs(v);
    if (a == 0.0) continue;
    const double p = phi(a / k);
    if (std::isinf(p)) return kInf;
    sum += p;
  }
  return sum * f.grid.spacing();
}

double l1_norm(const SampledFunction& f) {
  double s = 0.0;
  for (const auto& v : f.values) s += std::abs(v);
  return s * f.grid.spacing();
}

double sup_norm(const SampledFunction& f) {
  double s = 0.0;
  for (const auto& v : f.values) s = std::max(s, std::abs(v));
  return s;
}

double support_measure(const SampledFunction& f) {
  const Grid& g = f.grid;
  const double dx = g.spacing();
  std::size_t count = 0;
  for (std::size_t j = 0; j < g.n; ++j) {
    const double x = g.node(j);
    if (x >= f.support_hint.lo - kNodeSlack * dx && x < f.support_hint.hi - kNodeSlack * dx) ++count;
  }
  return static_cast<double>(count) * dx;
}

JensenBounds jensen_bounds(const SampledFunction& f, const YoungFunction& phi) {
  const double a = support_measure(f);
  if (!(a > 0.0)) return {0.0, kInf};
  const double inv = phi.inverse(1.0 / a);
  return {l1_norm(f) / (a * inv), sup_norm(f) / inv};
}

double luxemburg_norm(const SampledFunction& f, const YoungFunction& phi, const LuxemburgOptions& opts) {
  if (!(opts.gamma > 0.0)) throw std::invalid_argument("luxemburg_norm needs gamma > 0");
  const double peak = sup_norm(f);
  if (peak == 0.0) return 0.0;
  const auto feasible = [&](double k) { return modular(f, phi, k) <= opts.gamma; };

  const JensenBounds b = jensen_bounds(f, phi);
  double lo = (b.lower > 0.0 && std::isfinite(b.lower)) ? b.lower : peak * 1e-3;
  double hi = (b.upper > 0.0 && std::isfinite(b.upper)) ? b.upper : peak;
  if (hi <= lo) hi = 2.0 * lo;

  int doublings = 0;
  while (!feasible(hi)) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > opts.max_doublings) throw Error("luxemburg_norm: cannot bracket the norm from above");
  }
  doublings = 0;
  while (feasible(lo)) {
    hi = lo;
    lo *= 0.5;
    if (++doublings > opts.max_doublings) throw Error("luxemburg_norm: cannot bracket the norm from below");
  }
  while (hi - lo > opts.rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) hi = mid;
    else lo = mid;
  }
  return hi;
}

double luxemburg_norm(const SampledFunction& f, const YoungFunction& phi, double gamma) {
  LuxemburgOptions opts;
  opts.gamma = gamma;
  return luxemburg_norm(f, phi, opts);
}

SampledFunction make_bandlimited(const Grid& grid, const BandSpec& spec) {
  grid.validate();
  const Grid d = grid.dual();
  if (spec.window.lo < -d.half_width || spec.window.hi > d.half_width || !(spec.window.hi >= spec.window.lo))
    throw Error("make_bandlimited: window exceeds the Nyquist range");
  std::vector<cplx> data(grid.n);
  const double slack = kNodeSlack * d.spacing();
  for (std::size_t k = 0; k < grid.n; ++k) {
    const double xi = d.node(k);
    if (xi >= spec.window.lo - slack && xi < spec.window.hi - slack) data[k] = spec.hat(xi);
  }
  inverse_transform(grid, data);
  SampledFunction out{grid, std::move(data), {}, spec.window};
  out.support_hint = effective_support(grid, out.values);
  return out;
}

SampledFunction convolve(const SampledFunction& f, const SampledFunction& g) {
  require_same_grid(f, g, "convolve");
  const Interval sum{f.support_hint.lo + g.support_hint.lo, f.support_hint.hi + g.support_hint.hi};
  check_inside(f.grid, sum, "convolve");
  std::vector<cplx> a = f.values;
  std::vector<cplx> b = g.values;
  forward_transform(f.grid, a);
  forward_transform(g.grid, b);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] *= b[k];
  inverse_transform(f.grid, a);
  SampledFunction out{f.grid, std::move(a), sum, std::nullopt};
  if (f.bandlimit_hint && g.bandlimit_hint)
    out.bandlimit_hint = Interval{std::max(f.bandlimit_hint->lo, g.bandlimit_hint->lo),
                                  std::min(f.bandlimit_hint->hi, g.bandlimit_hint->hi)};
  return out;
}

SampledFunction multiply(const SampledFunction& f, const SampledFunction& g) {
  require_same_grid(f, g, "multiply");
  SampledFunction out = f;
  for (std::size_t j = 0; j < f.values.size(); ++j) out.values[j] *= g.values[j];
  out.support_hint = {std::max(f.support_hint.lo, g.support_hint.lo), std::min(f.support_hint.hi, g.support_hint.hi)};
  if (out.support_hint.hi < out.support_hint.lo) out.support_hint = {0.0, 0.0};
  out.bandlimit_hint.reset();
  if (f.bandlimit_hint && g.bandlimit_hint)
    out.bandlimit_hint = Interval{f.bandlimit_hint->lo + g.bandlimit_hint->lo, f.bandlimit_hint->hi + g.bandlimit_hint->hi};
  return out;
}

SampledFunction axpby(cplx a, const SampledFunction& f, cplx b, const SampledFunction& g) {
  require_same_grid(f, g, "axpby");
  SampledFunction out = f;
  for (std::size_t j = 0; j < f.values.size(); ++j) out.values[j] = a * f.values[j] + b * g.values[j];
  out.support_hint = {std::min(f.support_hint.lo, g.support_hint.lo), std::max(f.support_hint.hi, g.support_hint.hi)};
  out.bandlimit_hint.reset();
  if (f.bandlimit_hint && g.bandlimit_hint)
    out.bandlimit_hint = Interval{std::min(f.bandlimit_hint->lo, g.bandlimit_hint->lo),
                                  std::max(f.bandlimit_hint->hi, g.bandlimit_hint->hi)};
  return out;
}

SampledFunction scale(const SampledFunction& f, cplx c) {
  SampledFunction out = f;
  for (auto& v : out.values) v *= c;
  return out;
}

double max_abs_diff(const SampledFunction& f, const SampledFunction& g) {
  require_same_grid(f, g, "max_abs_diff");
  double m = 0.0;
  for (std::size_t j = 0; j < f.values.size(); ++j) m = std::max(m, std::abs(f.values[j] - g.values[j]));
  return m;
}

SampledFunction pad(const SampledFunction& f, std::size_t factor) {
  if (factor == 1) return f;
  if (!is_power_of_two(factor)) throw std::invalid_argument("pad factor must be a power of two");
  const Grid wide{f.grid.half_width * static_cast<double>(factor), f.grid.n * factor};
  std::vector<cplx> v(wide.n);
  const std::size_t offset = (wide.n - f.grid.n) / 2;
  std::copy(f.values.begin(), f.values.end(), v.begin() + static_cast<std::ptrdiff_t>(offset));
  return SampledFunction{wide, std::move(v), f.support_hint, f.bandlimit_hint};
}

SampledFunction crop(const SampledFunction& f, const Grid& target) {
  if (target.n > f.grid.n || std::abs(target.spacing() - f.grid.spacing()) > 1e-12 * target.spacing())
    throw std::invalid_argument("crop: target grid is not a centred sub-grid");
  const std::size_t offset = (f.grid.n - target.n) / 2;
  std::vector<cplx> v(f.values.begin() + static_cast<std::ptrdiff_t>(offset),
                      f.values.begin() + static_cast<std::ptrdiff_t>(offset + target.n));
  SampledFunction out{target, std::move(v), {}, f.bandlimit_hint};
  out.support_hint = effective_support(target, out.values);
  return out;
}

SampledFunction indicator(const Grid& grid, double a, double start) {
  grid.validate();
  if (!(a > 0.0)) throw std::invalid_argument("indicator length must be > 0");
  const Interval supp{start, start + a};
  check_inside(grid, supp, "indicator");
  std::vector<cplx> v(grid.n);
  const double slack = kNodeSlack * grid.spacing();
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double x = grid.node(j);
    if (x >= supp.lo - slack && x < supp.hi - slack) v[j] = 1.0;
  }
  return SampledFunction{grid, std::move(v), supp, std::nullopt};
}

SampledFunction gaussian(const Grid& grid, double s, double center, double xi0) {
  if (!(s > 0.0)) throw std::invalid_argument("gaussian width must be > 0");
  SampledFunction f = sample(grid, [&](double x) {
    const double u = (x - center) / s;
    return std::exp(-kPi * u * u) * std::polar(1.0, 2.0 * kPi * xi0 * x);
  });
  const double nyq = grid.dual().half_width;
  f.bandlimit_hint = Interval{std::max(-nyq, xi0 - 6.0 / s), std::min(nyq, xi0 + 6.0 / s)};
  return f;
}

SampledFunction sinc(const Grid& grid, double w) {
  return make_bandlimited(grid, {{-w, w}, [](double) { return cplx{1.0}; }});
}

SampledFunction bl_gauss(const Grid& grid, double xi0) {
  return make_bandlimited(grid, {{xi0 - 6.0, xi0 + 6.0}, [xi0](double xi) {
                                   const double u = xi - xi0;
                                   return cplx{std::exp(-2.0 * u * u)};
                                 }});
}

}  // namespace orlicz
