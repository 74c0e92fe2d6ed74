#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace orlicz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Raised when a numerical operation cannot produce a meaningful result
/// (failed bracketing, degenerate inputs, incompatible shapes).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class YoungKind {
  power,             // |x|^p
  power_over_p,      // |x|^p / p
  exp_minus_one,     // e^|x| - 1
  indicator_window,  // 0 on [0,c], +inf beyond
  piecewise_linear,  // linear interpolation, last slope continued
  grid,              // linear interpolation, explicit tail slope (may be +inf)
};

const char* to_string(YoungKind kind);

/// An even convex function Phi: R -> [0, +inf] with Phi(0) = 0.
///
/// Only the half line x >= 0 is represented; negative arguments are folded.
/// Values are extended reals: +inf is a first class value and is returned
/// for every |x| beyond finite_domain_bound().
class YoungFunction {
 public:
  static YoungFunction power(double p);
  static YoungFunction power_over_p(double p);
  static YoungFunction exp_minus_one();
  static YoungFunction indicator_window(double c);
  /// Samples must start at (0, 0), have strictly increasing x and
  /// non-decreasing slopes.
  static YoungFunction piecewise_linear(std::vector<double> x, std::vector<double> y);
  /// As piecewise_linear, but beyond the last sample Phi grows with
  /// `tail_slope`; tail_slope = +inf makes the last sample the domain edge.
  static YoungFunction grid(std::vector<double> x, std::vector<double> y, double tail_slope);

  [[nodiscard]] double operator()(double x) const;

  /// inf{x > 0 : Phi(x) > y}; +inf when the set is empty.
  [[nodiscard]] double inverse(double y) const;

  [[nodiscard]] YoungKind kind() const { return kind_; }
  [[nodiscard]] double parameter() const { return param_; }
  [[nodiscard]] double finite_domain_bound() const { return domain_bound_; }
  [[nodiscard]] double zero_plateau_edge() const { return plateau_edge_; }
  /// lim Phi(x)/x as x -> inf; +inf for finite domains and superlinear kinds.
  [[nodiscard]] double asymptotic_slope() const;

  [[nodiscard]] std::span<const double> sample_x() const { return xs_; }
  [[nodiscard]] std::span<const double> sample_y() const { return ys_; }
  [[nodiscard]] double tail_slope() const { return tail_slope_; }

  /// Short human readable form, in the CLI mini-language where one exists.
  [[nodiscard]] std::string describe() const;

 private:
  YoungFunction() = default;
  void finish_sampled();
  [[nodiscard]] double eval_sampled(double x) const;
  [[nodiscard]] double inverse_by_bisection(double y) const;

  YoungKind kind_ = YoungKind::power;
  double param_ = 1.0;
  std::vector<double> xs_;
  std::vector<double> ys_;
  double tail_slope_ = 0.0;
  double domain_bound_ = kInf;
  double plateau_edge_ = 0.0;
};

[[nodiscard]] inline double eval(const YoungFunction& phi, double x) { return phi(x); }
[[nodiscard]] inline double inverse(const YoungFunction& phi, double y) { return phi.inverse(y); }

struct ComplementOptions {
  double x_max = 1e3;
  std::size_t n_points = 4096;
  double x_min = 1e-8;
};

/// Complementary function Psi(y) = sup_{x >= 0} (x|y| - Phi(x)).
///
/// Scans a log grid on (0, min(x_max, domain bound)], takes the lower convex
/// hull of the samples and uses the hull slopes as the y nodes of the
/// result. Each node value is the discrete sup refined by a 1-D concave
/// maximisation, so the linear interpolant of the nodes lies on or above the
/// exact conjugate. Beyond the last node the result grows with slope equal to
/// the scan edge, or is +inf when Phi has a finite asymptotic slope.
[[nodiscard]] YoungFunction complement(const YoungFunction& phi, const ComplementOptions& opts = {});

struct Delta2Result {
  bool holds = false;
  double k = 0.0;
};

/// Estimates sup Phi(2x)/Phi(x) on a log grid over [x_lo, x_hi].
///
/// holds is false as soon as Phi(2x) = inf for a finite Phi(x), or when the
/// ratio still grows by more than 1% across the top decade of the range.
[[nodiscard]] Delta2Result check_delta2(const YoungFunction& phi, double x_lo, double x_hi,
                                        std::size_t n_points = 256);

enum class TripleKind { hoelder, young_conv };

const char* to_string(TripleKind kind);

struct TripleCondition {
  TripleKind kind = TripleKind::hoelder;
  std::vector<std::string> triple;  // descriptions of Phi1, Phi2, Phi3
  std::vector<double> check_grid;
  double max_violation = -kInf;           // sup of lhs - rhs
  double max_relative_violation = -kInf;  // sup of (lhs - rhs) / rhs
  double worst_x = 0.0;

  [[nodiscard]] bool holds(double rel_tol = 1e-9) const { return max_relative_violation <= rel_tol; }
};

/// hoelder:    Phi1^-1(x) Phi2^-1(x) <= Phi3^-1(x)
/// young_conv: Phi1^-1(x) Phi2^-1(x) <= x Phi3^-1(x)
[[nodiscard]] TripleCondition check_triple(TripleKind kind, const YoungFunction& phi1,
                                           const YoungFunction& phi2, const YoungFunction& phi3,
                                           std::span<const double> grid);

struct YoungPointwiseCheck {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double worst_defect = -kInf;  // max of |xy| - Phi(x) - Psi(y)
};

/// |xy| <= Phi(x) + Psi(y) over the given pairs, evaluated in extended reals.
[[nodiscard]] YoungPointwiseCheck check_young_pointwise(const YoungFunction& phi,
                                                        const YoungFunction& psi,
                                                        std::span<const double> xs,
                                                        std::span<const double> ys);

/// n points log-spaced over [lo, hi], both ends included.
[[nodiscard]] std::vector<double> log_grid(double lo, double hi, std::size_t n);

}  // namespace orlicz
