#include "orlicz/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace orlicz {

double Measure::total_variation() const {
  double tv = 0.0;
  for (const auto& [t, w] : atoms) tv += std::abs(w);
  if (density) tv += l1_norm(*density);
  return tv;
}

std::vector<std::pair<double, cplx>> Measure::discretised() const {
  std::vector<std::pair<double, cplx>> out = atoms;
  if (density) {
    const double dx = density->grid.spacing();
    for (std::size_t j = 0; j < density->values.size(); ++j)
      if (density->values[j] != cplx{}) out.emplace_back(density->grid.node(j), density->values[j] * dx);
  }
  return out;
}

cplx Measure::hat(double s) const {
  cplx acc{};
  for (const auto& [t, w] : atoms) acc += w * std::polar(1.0, -2.0 * kPi * s * t);
  if (density) {
    const double dx = density->grid.spacing();
    for (std::size_t j = 0; j < density->values.size(); ++j)
      if (density->values[j] != cplx{}) acc += density->values[j] * dx * std::polar(1.0, -2.0 * kPi * s * density->grid.node(j));
  }
  return acc;
}

std::string Measure::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "measure:";
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) os << ';';
    os << "delta@" << atoms[i].first << ',' << atoms[i].second.real();
    if (atoms[i].second.imag() != 0.0) os << (atoms[i].second.imag() > 0 ? "+" : "") << atoms[i].second.imag() << 'i';
  }
  if (density) os << (atoms.empty() ? "" : ";") << "density[" << density->values.size() << "]";
  return os.str();
}

const char* to_string(SymbolForm form) {
  switch (form) {
    case SymbolForm::general: return "general";
    case SymbolForm::difference: return "difference";
    case SymbolForm::measure_hat: return "measure_hat";
  }
  return "unknown";
}

Symbol Symbol::constant(cplx c) {
  Symbol s;
  s.form_ = SymbolForm::general;
  s.constant_ = c;
  std::ostringstream os;
  os << "constant:" << c.real();
  if (c.imag() != 0.0) os << (c.imag() > 0 ? "+" : "") << c.imag() << 'i';
  s.label_ = os.str();
  s.general_ = [c](double, double) { return c; };
  return s;
}

Symbol Symbol::general(Fn2 m, std::string label) {
  if (!m) throw std::invalid_argument("general symbol needs a function");
  Symbol s;
  s.form_ = SymbolForm::general;
  s.general_ = std::move(m);
  s.label_ = std::move(label);
  return s;
}

Symbol Symbol::separable(Fn1 a, Fn1 b, std::string label) {
  if (!a || !b) throw std::invalid_argument("separable symbol needs two factors");
  Symbol s;
  s.form_ = SymbolForm::general;
  s.sep_a_ = a;
  s.sep_b_ = b;
  s.general_ = [a, b](double xi, double eta) { return a(xi) * b(eta); };
  s.label_ = std::move(label);
  return s;
}

Symbol Symbol::general_grid(double xi_lo, double xi_step, std::size_t xi_n, double eta_lo, double eta_step,
                            std::size_t eta_n, std::vector<cplx> values, std::string label) {
  if (xi_n < 2 || eta_n < 2 || !(xi_step > 0.0) || !(eta_step > 0.0))
    throw std::invalid_argument("general_grid needs at least 2 x 2 samples and positive steps");
  if (values.size() != xi_n * eta_n) throw std::invalid_argument("general_grid: value count does not match the axes");
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw std::invalid_argument("general_grid: values must be finite");
  auto table = std::make_shared<const std::vector<cplx>>(std::move(values));
  return general(
      [=](double xi, double eta) -> cplx {
        const double a = (xi - xi_lo) / xi_step;
        const double b = (eta - eta_lo) / eta_step;
        if (a < 0.0 || b < 0.0 || a > static_cast<double>(xi_n - 1) || b > static_cast<double>(eta_n - 1)) return 0.0;
        const auto i = std::min(static_cast<std::size_t>(a), xi_n - 2);
        const auto j = std::min(static_cast<std::size_t>(b), eta_n - 2);
        const double fa = a - static_cast<double>(i);
        const double fb = b - static_cast<double>(j);
        const auto& t = *table;
        return (1 - fa) * (1 - fb) * t[i * eta_n + j] + fa * (1 - fb) * t[(i + 1) * eta_n + j] +
               (1 - fa) * fb * t[i * eta_n + j + 1] + fa * fb * t[(i + 1) * eta_n + j + 1];
      },
      std::move(label));
}

Symbol Symbol::difference(Fn1 M, Interval window, std::string label) {
  if (!M) throw std::invalid_argument("difference symbol needs a profile");
  if (!(window.hi >= window.lo) || !std::isfinite(window.lo) || !std::isfinite(window.hi))
    throw std::invalid_argument("difference symbol needs a finite window");
  Symbol s;
  s.form_ = SymbolForm::difference;
  s.profile_ = std::move(M);
  s.window_ = window;
  s.label_ = std::move(label);
  return s;
}

Symbol Symbol::difference_sampled(std::vector<double> v, std::vector<cplx> values, std::string label) {
  if (v.size() < 2 || v.size() != values.size()) throw std::invalid_argument("difference_sampled needs matching samples");
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) throw std::invalid_argument("difference_sampled: v must be strictly increasing");
  const Interval window{v.front(), v.back()};
  auto vs = std::make_shared<const std::vector<double>>(std::move(v));
  auto ms = std::make_shared<const std::vector<cplx>>(std::move(values));
  return difference(
      [vs, ms](double x) -> cplx {
        const auto& a = *vs;
        auto it = std::upper_bound(a.begin(), a.end(), x);
        if (it == a.begin()) return (*ms)[0];
        if (it == a.end()) return ms->back();
        const auto i = static_cast<std::size_t>(it - a.begin());
        const double t = (x - a[i - 1]) / (a[i] - a[i - 1]);
        return (1.0 - t) * (*ms)[i - 1] + t * (*ms)[i];
      },
      window, std::move(label));
}

Symbol Symbol::measure_hat(Measure mu, double alpha, double beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) throw std::invalid_argument("measure_hat needs finite alpha, beta");
  Symbol s;
  s.form_ = SymbolForm::measure_hat;
  s.measure_ = std::move(mu);
  s.alpha_ = alpha;
  s.beta_ = beta;
  std::ostringstream os;
  os.precision(17);
  os << s.measure_.describe() << ":alpha=" << alpha << ",beta=" << beta;
  s.label_ = os.str();
  return s;
}

Symbol Symbol::gauss(double w, double c) {
  if (!(w > 0.0)) throw std::invalid_argument("gauss symbol needs w > 0");
  std::ostringstream os;
  os.precision(17);
  os << "difference:gauss:w=" << w << ",c=" << c;
  return difference(
      [w, c](double v) {
        const double u = (v - c) / w;
        return cplx{std::exp(-u * u)};
      },
      {c - 9.0 * w, c + 9.0 * w}, os.str());
}

Symbol Symbol::bump(double w, double c) {
  if (!(w > 0.0)) throw std::invalid_argument("bump symbol needs w > 0");
  std::ostringstream os;
  os.precision(17);
  os << "difference:bump:w=" << w << ",c=" << c;
  return difference(
      [w, c](double v) {
        const double u = (v - c) / w;
        if (std::abs(u) >= 1.0) return cplx{};
        return cplx{std::exp(1.0 - 1.0 / (1.0 - u * u))};
      },
      {c - w, c + w}, os.str());
}

Symbol Symbol::windowed_sign(double W) {
  if (!(W > 0.0)) throw std::invalid_argument("windowed sign needs W > 0");
  std::ostringstream os;
  os.precision(17);
  os << "difference:sign:W=" << W;
  return difference([](double v) { return cplx{v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0)}; }, {-W, W}, os.str());
}

bool Symbol::is_difference() const {
  if (form_ == SymbolForm::difference) return true;
  return form_ == SymbolForm::measure_hat && alpha_ != 0.0 && alpha_ == -beta_;
}

cplx Symbol::profile(double v) const {
  if (form_ == SymbolForm::difference) return (v >= window_.lo && v <= window_.hi) ? profile_(v) : cplx{};
  if (is_difference()) return measure_.hat(alpha_ * v);
  throw Error("symbol " + label_ + " is not of difference form");
}

std::optional<Interval> Symbol::profile_window() const {
  if (form_ == SymbolForm::difference) return window_;
  return std::nullopt;
}

double Symbol::profile_l1() const {
  if (!is_difference()) throw Error("symbol " + label_ + " is not of difference form");
  if (form_ != SymbolForm::difference) return kInf;
  const std::size_t n = 1u << 16;
  const double h = window_.length() / static_cast<double>(n);
  if (h == 0.0) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    acc += w * std::abs(profile(window_.lo + static_cast<double>(i) * h));
  }
  return acc * h;
}

cplx Symbol::operator()(double xi, double eta) const {
  if (constant_) return *constant_;
  switch (form_) {
    case SymbolForm::general: return general_(xi, eta);
    case SymbolForm::difference: return profile(xi - eta);
    case SymbolForm::measure_hat: return measure_.hat(alpha_ * xi + beta_ * eta);
  }
  return 0.0;
}

double PointKernel::l1() const {
  double s = 0.0;
  for (const auto& n : nodes) s += std::abs(n[2]);
  return s;
}

PsiProfile PsiProfile::indicator(double a, double b, std::size_t n) {
  if (!(b > a) || !(a > 0.0) || n == 0) throw std::invalid_argument("psi indicator needs 0 < a < b and n >= 1");
  PsiProfile p;
  const double h = (b - a) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.t.push_back(a + (static_cast<double>(i) + 0.5) * h);
    p.psi.push_back(1.0);
    p.dt.push_back(h);
  }
  return p;
}

}  // namespace orlicz
