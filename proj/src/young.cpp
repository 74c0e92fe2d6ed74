#include "orlicz/young.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace orlicz {

namespace {

constexpr double kInverseRelTol = 1e-12;
// Chord tolerance for the sampled conjugate.
constexpr double kConjugateAbsTol = 1e-8;
constexpr double kConjugateRelTol = 1e-8;
// Largest Phi value the conjugate scan accepts.
constexpr double kHuge = 1e300;

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

const char* to_string(YoungKind kind) {
  switch (kind) {
    case YoungKind::power: return "power";
    case YoungKind::power_over_p: return "power_over_p";
    case YoungKind::exp_minus_one: return "exp_minus_one";
    case YoungKind::indicator_window: return "indicator_window";
    case YoungKind::piecewise_linear: return "piecewise_linear";
    case YoungKind::grid: return "grid";
  }
  return "unknown";
}

const char* to_string(TripleKind kind) {
  return kind == TripleKind::hoelder ? "hoelder" : "young_conv";
}

YoungFunction YoungFunction::power(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("power Young function needs finite p >= 1");
  YoungFunction f;
  f.kind_ = YoungKind::power;
  f.param_ = p;
  return f;
}

YoungFunction YoungFunction::power_over_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("power_over_p Young function needs finite p >= 1");
  YoungFunction f;
  f.kind_ = YoungKind::power_over_p;
  f.param_ = p;
  return f;
}

YoungFunction YoungFunction::exp_minus_one() {
  YoungFunction f;
  f.kind_ = YoungKind::exp_minus_one;
  f.param_ = 0.0;
  return f;
}

YoungFunction YoungFunction::indicator_window(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("indicator window needs finite c > 0");
  YoungFunction f;
  f.kind_ = YoungKind::indicator_window;
  f.param_ = c;
  f.domain_bound_ = c;
  f.plateau_edge_ = c;
  return f;
}

YoungFunction YoungFunction::piecewise_linear(std::vector<double> x, std::vector<double> y) {
  YoungFunction f;
  f.kind_ = YoungKind::piecewise_linear;
  f.xs_ = std::move(x);
  f.ys_ = std::move(y);
  if (f.xs_.size() < 2) throw std::invalid_argument("piecewise_linear needs at least two samples");
  const std::size_t m = f.xs_.size();
  f.tail_slope_ = (f.ys_.size() == m) ? (f.ys_[m - 1] - f.ys_[m - 2]) / (f.xs_[m - 1] - f.xs_[m - 2]) : 0.0;
  f.finish_sampled();
  return f;
}

YoungFunction YoungFunction::grid(std::vector<double> x, std::vector<double> y, double tail_slope) {
  YoungFunction f;
  f.kind_ = YoungKind::grid;
  f.xs_ = std::move(x);
  f.ys_ = std::move(y);
  f.tail_slope_ = tail_slope;
  if (f.xs_.empty()) throw std::invalid_argument("grid Young function needs samples");
  f.finish_sampled();
  return f;
}

void YoungFunction::finish_sampled() {
  if (xs_.size() != ys_.size()) throw std::invalid_argument("Young samples: x and y differ in length");
  if (xs_.front() != 0.0 || ys_.front() != 0.0) throw std::invalid_argument("Young samples must start at (0, 0)");
  if (!(tail_slope_ >= 0.0)) throw std::invalid_argument("Young tail slope must be >= 0");
  double prev_slope = 0.0;
  for (std::size_t i = 1; i < xs_.size(); ++i) {
    if (!(xs_[i] > xs_[i - 1]) || !std::isfinite(xs_[i])) throw std::invalid_argument("Young samples: x must be strictly increasing");
    if (!std::isfinite(ys_[i]) || ys_[i] < ys_[i - 1]) throw std::invalid_argument("Young samples: Phi must be finite and non-decreasing");
    const double slope = (ys_[i] - ys_[i - 1]) / (xs_[i] - xs_[i - 1]);
    if (slope < prev_slope - 1e-9 * (std::abs(prev_slope) + 1.0)) throw std::invalid_argument("Young samples: Phi is not convex");
    prev_slope = std::max(prev_slope, slope);
  }
  if (tail_slope_ < prev_slope - 1e-9 * (prev_slope + 1.0)) throw std::invalid_argument("Young samples: tail slope breaks convexity");
  domain_bound_ = std::isinf(tail_slope_) ? xs_.back() : kInf;
  std::size_t last_zero = 0;
  while (last_zero + 1 < xs_.size() && ys_[last_zero + 1] == 0.0) ++last_zero;
  plateau_edge_ = xs_[last_zero];
  if (last_zero + 1 == xs_.size() && tail_slope_ == 0.0) throw std::invalid_argument("Young function is identically zero");
}

double YoungFunction::eval_sampled(double x) const {
  if (x >= xs_.back()) {
    if (x == xs_.back()) return ys_.back();
    return std::isinf(tail_slope_) ? kInf : ys_.back() + tail_slope_ * (x - xs_.back());
  }
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs_.begin());  // xs_[i-1] <= x < xs_[i]
  const double t = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
  return ys_[i - 1] + t * (ys_[i] - ys_[i - 1]);
}

double YoungFunction::operator()(double x) const {
  x = std::abs(x);
  switch (kind_) {
    case YoungKind::power:
      if (param_ == 1.0) return x;
      if (param_ == 2.0) return x * x;
      return std::pow(x, param_);
    case YoungKind::power_over_p:
      if (param_ == 2.0) return 0.5 * x * x;
      return std::pow(x, param_) / param_;
    case YoungKind::exp_minus_one:
      return std::expm1(x);
    case YoungKind::indicator_window:
      return x <= param_ ? 0.0 : kInf;
    case YoungKind::piecewise_linear:
    case YoungKind::grid:
      return eval_sampled(x);
  }
  return kInf;
}

double YoungFunction::inverse_by_bisection(double y) const {
  double lo = 0.0;
  double hi = std::max(1.0, plateau_edge_);
  while (!((*this)(hi) > y)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) return kInf;
  }
  while (hi - lo > kInverseRelTol * hi) {
    const double mid = 0.5 * (lo + hi);
    if ((*this)(mid) > y) hi = mid;
    else lo = mid;
  }
  return lo;
}

double YoungFunction::inverse(double y) const {
  if (std::isnan(y) || y < 0.0) throw std::invalid_argument("Young inverse needs y >= 0");
  if (std::isinf(y)) return domain_bound_;
  switch (kind_) {
    case YoungKind::power:
      if (param_ == 1.0) return y;
      if (param_ == 2.0) return std::sqrt(y);
      if (param_ == 3.0) return std::cbrt(y);
      return std::pow(y, 1.0 / param_);
    case YoungKind::power_over_p:
      if (param_ == 2.0) return std::sqrt(2.0 * y);
      return std::pow(param_ * y, 1.0 / param_);
    case YoungKind::exp_minus_one:
      return std::log1p(y);
    case YoungKind::indicator_window:
      return param_;
    case YoungKind::piecewise_linear:
    case YoungKind::grid:
      return inverse_by_bisection(y);
  }
  return kInf;
}

double YoungFunction::asymptotic_slope() const {
  switch (kind_) {
    case YoungKind::power:
    case YoungKind::power_over_p:
      return param_ == 1.0 ? 1.0 : kInf;
    case YoungKind::exp_minus_one:
    case YoungKind::indicator_window:
      return kInf;
    case YoungKind::piecewise_linear:
    case YoungKind::grid:
      return tail_slope_;
  }
  return kInf;
}

std::string YoungFunction::describe() const {
  switch (kind_) {
    case YoungKind::power: return "power:p=" + format_number(param_);
    case YoungKind::power_over_p: return "powerp:p=" + format_number(param_);
    case YoungKind::exp_minus_one: return "exp";
    case YoungKind::indicator_window: return "window:c=" + format_number(param_);
    case YoungKind::piecewise_linear:
      if (xs_.size() == 2) return "linear:c=" + format_number(ys_[1] / xs_[1]);
      return "piecewise_linear[" + std::to_string(xs_.size()) + " samples]";
    case YoungKind::grid:
      return "grid[" + std::to_string(xs_.size()) + " samples, tail=" + format_number(tail_slope_) + "]";
  }
  return "unknown";
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi >= lo) || n == 0) throw std::invalid_argument("log_grid needs 0 < lo <= hi and n >= 1");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

YoungFunction complement(const YoungFunction& phi, const ComplementOptions& opts) {
  if (!(opts.x_max > 0.0)) throw std::invalid_argument("complement needs x_max > 0");
  if (opts.n_points < 64) throw std::invalid_argument("complement needs n_points >= 64");
  double x_edge = std::min(opts.x_max, phi.finite_domain_bound());
  if (!(x_edge > opts.x_min)) throw std::invalid_argument("complement: scan range is empty");
  if (!(phi(x_edge) < kHuge)) {
    // Overflow before the domain edge (e.g. e^x at x = 1e3): pull the edge back.
    double lo = opts.x_min;
    double hi = x_edge;
    if (!(phi(lo) < kHuge)) throw Error("complement: Phi overflows at the bottom of the scan range");
    while (hi - lo > 1e-12 * hi) {
      const double mid = 0.5 * (lo + hi);
      if (phi(mid) < kHuge) lo = mid;
      else hi = mid;
    }
    x_edge = lo;
  }

  std::vector<double> xs{0.0};
  for (double x : log_grid(opts.x_min, x_edge, opts.n_points)) xs.push_back(x);
  std::vector<double> vs(xs.size());
  bool all_zero = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    vs[i] = phi(xs[i]);
    all_zero = all_zero && vs[i] == 0.0;
  }
  if (all_zero && x_edge < phi.finite_domain_bound())
    throw Error("complement: Phi vanishes on the whole scan range; no finite conjugate representation");

  // Lower convex hull; collinear points are dropped so slopes are strictly increasing.
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull.back();
      const double cross = (xs[b] - xs[a]) * (vs[i] - vs[a]) - (vs[b] - vs[a]) * (xs[i] - xs[a]);
      if (cross <= 0.0) hull.pop_back();
      else break;
    }
    hull.push_back(i);
  }
  std::vector<double> hx(hull.size());
  std::vector<double> slopes;
  for (std::size_t h = 0; h < hull.size(); ++h) hx[h] = xs[hull[h]];
  for (std::size_t h = 0; h + 1 < hull.size(); ++h)
    slopes.push_back((vs[hull[h + 1]] - vs[hull[h]]) / (hx[h + 1] - hx[h]));

  // Psi(y) for y in [slopes[v-1], slopes[v]]: the sup is attained in
  // [hx[v-1], hx[v+1]] by convexity. The first maximiser on the grid is the
  // hull vertex; brent refines within the bracket.
  const int bits = std::numeric_limits<double>::digits / 2;
  const auto psi_at = [&](double y) {
    const auto it = std::upper_bound(slopes.begin(), slopes.end(), y);
    const std::size_t v = static_cast<std::size_t>(it - slopes.begin());
    const double xa = hx[v == 0 ? 0 : v - 1];
    const double xb = hx[std::min(v + 1, hx.size() - 1)];
    double value = hx[v] * y - phi(hx[v]);
    if (xb > xa) {
      const auto neg_gain = [&](double x) { return phi(x) - x * y; };
      const auto [x_star, neg] = boost::math::tools::brent_find_minima(neg_gain, xa, xb, bits);
      (void)x_star;
      value = std::max(value, -neg);
    }
    return std::max(value, 0.0);
  };

  std::vector<double> ys{0.0};
  std::vector<double> psi{0.0};
  for (double s : slopes) {
    if (!(s > ys.back())) continue;
    ys.push_back(s);
    psi.push_back(psi_at(s));
  }

  // Insert nodes until the chord of each cell is within tolerance of Psi at
  // the cell midpoint; Psi is convex so the chord always lies above it.
  std::vector<double> ry{ys.front()};
  std::vector<double> rpsi{psi.front()};
  const auto refine = [&](auto&& self, double ya, double pa, double yb, double pb, int depth) -> void {
    const double ym = 0.5 * (ya + yb);
    const double pm = psi_at(ym);
    const double gap = 0.5 * (pa + pb) - pm;
    if (depth < 40 && gap > kConjugateAbsTol + kConjugateRelTol * pm && ym > ya && ym < yb) {
      self(self, ya, pa, ym, pm, depth + 1);
      self(self, ym, pm, yb, pb, depth + 1);
      return;
    }
    ry.push_back(yb);
    rpsi.push_back(pb);
  };
  for (std::size_t i = 1; i < ys.size(); ++i) refine(refine, ys[i - 1], psi[i - 1], ys[i], psi[i], 0);
  // Rounding can leave tiny dips; the running max keeps the samples monotone.
  for (std::size_t i = 1; i < rpsi.size(); ++i) rpsi[i] = std::max(rpsi[i], rpsi[i - 1]);

  const double s_asym = phi.asymptotic_slope();
  double tail = x_edge;
  if (std::isfinite(s_asym)) {
    if (s_asym > ry.back() * (1.0 + 1e-12)) {
      ry.push_back(s_asym);
      rpsi.push_back(std::max(rpsi.back(), x_edge * s_asym - phi(x_edge)));
    }
    tail = kInf;
  }
  if (ry.size() == 1) {
    // Phi vanishes on [0, x_edge] and is infinite beyond: Psi(y) = x_edge * y.
    ry.push_back(1.0);
    rpsi.push_back(x_edge);
  }
  return YoungFunction::grid(std::move(ry), std::move(rpsi), tail);
}

Delta2Result check_delta2(const YoungFunction& phi, double x_lo, double x_hi, std::size_t n_points) {
  if (!(x_lo > 0.0) || !(x_hi > x_lo) || !(x_hi < phi.finite_domain_bound()))
    throw std::invalid_argument("check_delta2 needs 0 < x_lo < x_hi < finite domain bound");
  const auto xs = log_grid(x_lo, x_hi, std::max<std::size_t>(n_points, 2));
  std::vector<double> ratio(xs.size(), -1.0);
  Delta2Result out;
  bool any = false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v = phi(xs[i]);
    const double v2 = phi(2.0 * xs[i]);
    if (std::isinf(v2) && std::isfinite(v)) return {false, kInf};
    if (v == 0.0) continue;
    any = true;
    ratio[i] = v2 / v;
    out.k = std::max(out.k, ratio[i]);
  }
  if (!any) throw Error("check_delta2: no grid point with 0 < Phi(x) < inf");

  // Compare the ratio at the top of the range with the ratio a decade lower.
  const double x_ref = std::max(x_lo, x_hi / 10.0);
  std::size_t ref = 0;
  while (ref + 1 < xs.size() && (xs[ref] < x_ref || ratio[ref] < 0.0)) ++ref;
  const double r_top = ratio.back();
  const double r_ref = ratio[ref];
  out.holds = std::isfinite(out.k) && r_ref > 0.0 && r_top <= 1.01 * r_ref;
  return out;
}

TripleCondition check_triple(TripleKind kind, const YoungFunction& phi1, const YoungFunction& phi2,
                             const YoungFunction& phi3, std::span<const double> grid) {
  TripleCondition out;
  out.kind = kind;
  out.triple = {phi1.describe(), phi2.describe(), phi3.describe()};
  out.check_grid.assign(grid.begin(), grid.end());
  for (double x : grid) {
    if (!(x > 0.0)) throw std::invalid_argument("check_triple grid values must be > 0");
    const double a = phi1.inverse(x);
    const double b = phi2.inverse(x);
    const double lhs = (a == 0.0 || b == 0.0) ? 0.0 : a * b;
    const double c = phi3.inverse(x);
    const double rhs = kind == TripleKind::hoelder ? c : x * c;
    double defect;
    double rel;
    if (std::isinf(lhs) && std::isinf(rhs)) {
      defect = 0.0;
      rel = 0.0;
    } else {
      defect = lhs - rhs;
      rel = rhs > 0.0 ? defect / rhs : (defect > 0.0 ? kInf : 0.0);
    }
    if (rel > out.max_relative_violation) {
      out.max_relative_violation = rel;
      out.worst_x = x;
    }
    out.max_violation = std::max(out.max_violation, defect);
  }
  return out;
}

YoungPointwiseCheck check_young_pointwise(const YoungFunction& phi, const YoungFunction& psi,
                                          std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("check_young_pointwise: length mismatch");
  YoungPointwiseCheck out;
  out.trials = xs.size();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lhs = std::abs(xs[i] * ys[i]);
    const double rhs = phi(xs[i]) + psi(ys[i]);
    if (std::isinf(rhs)) continue;
    const double defect = lhs - rhs;
    out.worst_defect = std::max(out.worst_defect, defect);
    if (defect > 0.0) ++out.violations;
  }
  return out;
}

}  // namespace orlicz
