#pragma once

#include "orlicz/young.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace orlicz {

// C_Phi(lambda) is the norm of D_lambda f = f(lambda .) on L^Phi.

/// mu grid used by gauge_lower when none is given: 2048 log points on [1e-8, 1e8].
[[nodiscard]] std::vector<double> default_mu_grid();

/// max over mu of Phi^-1(mu) / Phi^-1(lambda mu), skipping points where either
/// inverse is 0 or infinite. A certified lower bound for C_Phi(lambda).
[[nodiscard]] double gauge_lower(const YoungFunction& phi, double lambda, std::span<const double> mu_grid);
[[nodiscard]] double gauge_lower(const YoungFunction& phi, double lambda);

/// A factorisation inequality that failed on the verification grid.
class CertificateError : public Error {
 public:
  CertificateError(const std::string& what, double s, double t) : Error(what), s_(s), t_(t) {}
  [[nodiscard]] double s() const { return s_; }
  [[nodiscard]] double t() const { return t_; }

 private:
  double s_;
  double t_;
};

/// Phi1 with Phi(st) >= Phi1(s) Phi(t) and Phi2 with Phi(st) <= Phi2(s) Phi(t).
struct GaugeCertificates {
  std::optional<YoungFunction> minorant;
  std::optional<YoungFunction> majorant;
};

/// Certificates known in closed form: |x|^p and |x|^p/p factor through s^p.
/// Other kinds get none.
[[nodiscard]] GaugeCertificates known_certificates(const YoungFunction& phi);

/// Checks the factorisation inequalities on a 41 x 41 log grid over
/// [1e-3, 1e3]^2; throws CertificateError with the witness (s, t).
void verify_certificates(const YoungFunction& phi, const GaugeCertificates& certs);

/// min of Phi1^-1(1/lambda), 1/Phi2^-1(lambda) and 1/min(1, lambda).
/// Certificates are verified before use.
[[nodiscard]] double gauge_upper(const YoungFunction& phi, double lambda, const GaugeCertificates& certs);
/// gauge_upper with known_certificates(phi).
[[nodiscard]] double gauge_upper(const YoungFunction& phi, double lambda);

struct GaugeEstimate {
  double lambda = 1.0;
  double lower = 0.0;
  double upper = 0.0;
  double crude_lo = 0.0;  // 1 / max(1, lambda)
  double crude_hi = 0.0;  // 1 / min(1, lambda)
};

[[nodiscard]] GaugeEstimate estimate_gauge(const YoungFunction& phi, double lambda);

struct BoydEstimate {
  double lower_index = 0.0;  // slope of log h / log t as t -> 0
  double upper_index = 0.0;  // slope as t -> inf
  double fit_decades = 2.0;
  double residual = 0.0;     // largest RMS residual of the two fits, in log units
  /// True when the working gauge is known to be exact (submultiplicative
  /// Phi with Phi(1) = 1); otherwise the indices come from a lower bound.
  bool exact_gauge = false;
};

/// h(t) = gauge_lower(Phi, 1/t) fitted over the outer fit_decades of
/// [t_lo, 1] and [1, t_hi]. Throws Error when a residual exceeds 0.05.
[[nodiscard]] BoydEstimate boyd_indices(const YoungFunction& phi, double t_lo = 1e-6, double t_hi = 1e6,
                                        double fit_decades = 2.0);

/// W(t) = C_Phi3(1/t) C_Phi1(t) C_Phi2(t) with upper gauges.
[[nodiscard]] double weight_W(const YoungFunction& phi1, const YoungFunction& phi2, const YoungFunction& phi3,
                              double t);

}  // namespace orlicz
