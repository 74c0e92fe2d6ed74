#include "orlicz/dilation_gauge.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace orlicz {

namespace {

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("dilation gauge needs lambda > 0");
}

// Least-squares slope of y against x, with the RMS residual.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (my + slope * (x[i] - mx));
    ss += r * r;
  }
  return {slope, std::sqrt(ss / n)};
}

}  // namespace

std::vector<double> default_mu_grid() { return log_grid(1e-8, 1e8, 2048); }

double gauge_lower(const YoungFunction& phi, double lambda, std::span<const double> mu_grid) {
  require_lambda(lambda);
  double best = -kInf;
  for (double mu : mu_grid) {
    if (!(mu > 0.0)) continue;
    const double num = phi.inverse(mu);
    const double den = phi.inverse(lambda * mu);
    if (!(num > 0.0) || !(den > 0.0) || !std::isfinite(num) || !std::isfinite(den)) continue;
    best = std::max(best, num / den);
  }
  if (!std::isfinite(best)) throw Error("gauge_lower: no mu on the grid gives a finite ratio");
  return best;
}

double gauge_lower(const YoungFunction& phi, double lambda) {
  static const std::vector<double> grid = default_mu_grid();
  return gauge_lower(phi, lambda, grid);
}

GaugeCertificates known_certificates(const YoungFunction& phi) {
  switch (phi.kind()) {
    case YoungKind::power:
    case YoungKind::power_over_p: {
      const auto s_p = YoungFunction::power(phi.parameter());
      return {s_p, s_p};
    }
    default:
      return {};
  }
}

void verify_certificates(const YoungFunction& phi, const GaugeCertificates& certs) {
  if (!certs.minorant && !certs.majorant) return;
  const auto grid = log_grid(1e-3, 1e3, 41);
  constexpr double rel = 1e-12;
  for (double s : grid) {
    for (double t : grid) {
      const double lhs = phi(s * t);
      const double pt = phi(t);
      if (certs.minorant) {
        const double rhs = (*certs.minorant)(s) * pt;
        if (lhs < rhs * (1.0 - rel)) {
          std::ostringstream os;
          os << "minorant fails Phi(st) >= Phi1(s) Phi(t) at s=" << s << " t=" << t;
          throw CertificateError(os.str(), s, t);
        }
      }
      if (certs.majorant) {
        const double rhs = (*certs.majorant)(s) * pt;
        if (lhs > rhs * (1.0 + rel)) {
          std::ostringstream os;
          os << "majorant fails Phi(st) <= Phi2(s) Phi(t) at s=" << s << " t=" << t;
          throw CertificateError(os.str(), s, t);
        }
      }
    }
  }
}

double gauge_upper(const YoungFunction& phi, double lambda, const GaugeCertificates& certs) {
  require_lambda(lambda);
  verify_certificates(phi, certs);
  double best = 1.0 / std::min(1.0, lambda);
  if (certs.minorant) best = std::min(best, certs.minorant->inverse(1.0 / lambda));
  if (certs.majorant) {
    const double s = certs.majorant->inverse(lambda);
    if (s > 0.0) best = std::min(best, 1.0 / s);
  }
  return best;
}

double gauge_upper(const YoungFunction& phi, double lambda) { return gauge_upper(phi, lambda, known_certificates(phi)); }

GaugeEstimate estimate_gauge(const YoungFunction& phi, double lambda) {
  GaugeEstimate e;
  e.lambda = lambda;
  e.lower = gauge_lower(phi, lambda);
  e.upper = gauge_upper(phi, lambda);
  e.crude_lo = 1.0 / std::max(1.0, lambda);
  e.crude_hi = 1.0 / std::min(1.0, lambda);
  return e;
}

BoydEstimate boyd_indices(const YoungFunction& phi, double t_lo, double t_hi, double fit_decades) {
  if (!(t_lo > 0.0) || !(t_hi > 1.0) || std::log10(1.0 / t_lo) < 3.0 - 1e-12 || std::log10(t_hi) < 3.0 - 1e-12)
    throw std::invalid_argument("boyd_indices needs at least 3 decades on each side of t = 1");
  if (!(fit_decades > 0.0)) throw std::invalid_argument("boyd_indices needs fit_decades > 0");

  const auto fit_side = [&](double a, double b) {
    std::vector<double> lx, ly;
    for (double t : log_grid(a, b, 41)) {
      lx.push_back(std::log(t));
      ly.push_back(std::log(gauge_lower(phi, 1.0 / t)));
    }
    return fit_line(lx, ly);
  };
  const double span = std::pow(10.0, fit_decades);
  const auto [lo_slope, lo_res] = fit_side(t_lo, t_lo * span);
  const auto [hi_slope, hi_res] = fit_side(t_hi / span, t_hi);

  BoydEstimate out;
  out.lower_index = lo_slope;
  out.upper_index = hi_slope;
  out.fit_decades = fit_decades;
  out.residual = std::max(lo_res, hi_res);
  out.exact_gauge = phi.kind() == YoungKind::power;
  if (out.residual > 0.05) {
    std::ostringstream os;
    os << "boyd_indices: fit residual " << out.residual << " exceeds 0.05; the gauge is not power-like on the range";
    throw Error(os.str());
  }
  return out;
}

double weight_W(const YoungFunction& phi1, const YoungFunction& phi2, const YoungFunction& phi3, double t) {
  require_lambda(t);
  return gauge_upper(phi3, 1.0 / t) * gauge_upper(phi1, t) * gauge_upper(phi2, t);
}

}  // namespace orlicz
