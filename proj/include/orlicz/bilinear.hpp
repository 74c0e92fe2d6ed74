#pragma once

#include "orlicz/function_lab.hpp"
#include "orlicz/young.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace orlicz {

/// Finite Borel measure: point masses plus an optional density sampled on a
/// grid (integrated with the trapezoid weights of that grid).
struct Measure {
  std::vector<std::pair<double, cplx>> atoms;  // (location, weight)
  std::optional<SampledFunction> density;

  [[nodiscard]] double total_variation() const;
  /// mu^(s) = int e^{-2 pi i s t} d mu(t), with the density discretised.
  [[nodiscard]] cplx hat(double s) const;
  /// Atoms followed by the non-zero density nodes as weighted atoms.
  [[nodiscard]] std::vector<std::pair<double, cplx>> discretised() const;
  [[nodiscard]] std::string describe() const;
};

enum class SymbolForm { general, difference, measure_hat };

const char* to_string(SymbolForm form);

/// A bilinear multiplier m(xi, eta).
///
/// Difference symbols m = M(xi - eta) carry a window outside which M is
/// taken to be 0; every evaluation path samples M at integer multiples of
/// the frequency spacing, so they all see identical values.
class Symbol {
 public:
  using Fn1 = std::function<cplx(double)>;
  using Fn2 = std::function<cplx(double, double)>;

  static Symbol constant(cplx c);
  static Symbol general(Fn2 m, std::string label);
  /// m = a(xi) b(eta); evaluated through two linear multipliers.
  static Symbol separable(Fn1 a, Fn1 b, std::string label);
  /// Samples on the product of two axes, bilinear interpolation in between
  /// and 0 outside the rectangle. values[i * eta_n + j] = m(xi_i, eta_j).
  static Symbol general_grid(double xi_lo, double xi_step, std::size_t xi_n, double eta_lo, double eta_step,
                             std::size_t eta_n, std::vector<cplx> values, std::string label);
  static Symbol difference(Fn1 M, Interval window, std::string label);
  /// M from samples (v, M(v)) on a uniform axis, linear interpolation.
  static Symbol difference_sampled(std::vector<double> v, std::vector<cplx> values, std::string label);
  static Symbol measure_hat(Measure mu, double alpha, double beta);

  // Built-in difference profiles.
  /// M(v) = e^{-((v - c) / w)^2} on [c - 9w, c + 9w].
  static Symbol gauss(double w = 1.0, double c = 0.0);
  /// M(v) = exp(1 - 1 / (1 - ((v - c)/w)^2)) on (c - w, c + w).
  static Symbol bump(double w = 1.0, double c = 0.0);
  /// M(v) = sign(v) on [-W, W]; the bilinear Hilbert transform cut to a window.
  static Symbol windowed_sign(double W);

  [[nodiscard]] cplx operator()(double xi, double eta) const;
  [[nodiscard]] SymbolForm form() const { return form_; }
  [[nodiscard]] const std::string& label() const { return label_; }

  /// True when m(xi, eta) depends on xi - eta only: difference form, or
  /// measure_hat with alpha = -beta != 0.
  [[nodiscard]] bool is_difference() const;
  /// M(v) for difference-compatible symbols (0 outside the window).
  [[nodiscard]] cplx profile(double v) const;
  /// Window of M; nullopt for measure profiles, which need not decay.
  [[nodiscard]] std::optional<Interval> profile_window() const;
  /// int |M| over the window by a 2^16 point trapezoid rule.
  [[nodiscard]] double profile_l1() const;

  [[nodiscard]] std::optional<cplx> constant_value() const { return constant_; }
  [[nodiscard]] bool is_separable() const { return static_cast<bool>(sep_a_); }
  [[nodiscard]] const Fn1& factor_a() const { return sep_a_; }
  [[nodiscard]] const Fn1& factor_b() const { return sep_b_; }
  [[nodiscard]] const Measure& measure() const { return measure_; }
  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] double beta() const { return beta_; }

 private:
  Symbol() = default;

  SymbolForm form_ = SymbolForm::general;
  std::string label_;
  Fn2 general_;
  std::optional<cplx> constant_;
  Fn1 sep_a_;
  Fn1 sep_b_;
  Fn1 profile_;
  Interval window_;
  Measure measure_;
  double alpha_ = 0.0;
  double beta_ = 0.0;
};

enum class Method { automatic, direct, kernel, halfsum, convolution, space_side };

const char* to_string(Method method);
/// Parses the CLI spelling; throws std::invalid_argument.
Method parse_method(const std::string& name);

/// Whether `method` can evaluate `m` (form and integrability requirements).
[[nodiscard]] bool method_applies(const Symbol& m, Method method);

/// Spectral data of a function on the padded lattice: coefficients and the
/// index range holding them. With a bandlimit hint the range is the hint;
/// otherwise coefficients below 1e-14 of the peak are dropped.
struct Spectrum {
  Grid grid;  // padded space grid
  std::vector<cplx> coeffs;
  std::size_t first = 0;
  std::size_t last = 0;
  bool empty = true;
};
[[nodiscard]] Spectrum padded_spectrum(const SampledFunction& f, std::size_t pad_factor = 2);

/// B_m(f, g)(x) = int int f^(xi) g^(eta) m(xi, eta) e^{2 pi i (xi + eta) x} dxi deta.
///
/// All paths work on copies of f and g zero-padded to twice the width, so the
/// frequency lattice has spacing 1/(4L) and circular wrap never reaches the
/// output window; the result is cropped back to f.grid. On that lattice the
/// paths are algebraically identical sums:
///   direct       the double sum, one inverse transform per active xi;
///   kernel       int f(x - t) g(x + t) K(t) dt with K the inverse transform of M;
///   halfsum      (1/2) int int f^((u+v)/2) g^((u-v)/2) M(v) e^{2 pi i u x} du dv;
///   convolution  int (f * M_beta g)(2x) M(beta) e^{-2 pi i beta x} dbeta;
///   space_side   int tau_{alpha t} f tau_{beta t} g d mu(t).
/// The kernel path also needs both spectra inside half the Nyquist band,
/// where the t-quadrature is exact.
[[nodiscard]] SampledFunction evaluate_bm(const Symbol& m, const SampledFunction& f, const SampledFunction& g,
                                          Method method = Method::automatic);

/// T_m f = inverse transform of m f^; m sampled on f.grid.dual().
[[nodiscard]] SampledFunction apply_linear_multiplier(const SampledFunction& m, const SampledFunction& f);
[[nodiscard]] SampledFunction apply_linear_multiplier(const Symbol::Fn1& m, const SampledFunction& f);

/// B_M(f, g)(-x) = int (tau_x g ^ * M)(xi) tau_x f ^(xi) dxi, evaluated as a
/// frequency double sum at one point (difference symbols only).
[[nodiscard]] cplx f1_spot_value(const Symbol& m, const SampledFunction& f, const SampledFunction& g, double x);

// Symbol algebra.

struct YoungTriple {
  YoungFunction phi1;
  YoungFunction phi2;
  YoungFunction phi3;
};

/// 2-D weighted point set phi = sum w_i delta_(u_i, v_i), standing in for phi in L^1(R^2).
struct PointKernel {
  std::vector<std::array<double, 3>> nodes;  // (u, v, weight)
  [[nodiscard]] double l1() const;
};

/// psi on a t grid with quadrature weights (midpoint rule).
struct PsiProfile {
  std::vector<double> t;
  std::vector<double> psi;
  std::vector<double> dt;
  /// psi = chi_[a, b) sampled at n midpoints.
  static PsiProfile indicator(double a, double b, std::size_t n);
};

/// Linear multiplier factor with its (caller supplied) operator norm.
struct LinearFactor {
  Symbol::Fn1 m;
  double norm = 1.0;
};

struct SymbolOp {
  enum class Kind { translate, modulate, dilate, convolve_with, multiply_hat, psi_average, compose_linear };
  Kind kind = Kind::translate;
  double xi0 = 0.0;
  double eta0 = 0.0;
  double t = 1.0;
  PointKernel kernel;
  PsiProfile psi;
  LinearFactor m1;
  LinearFactor m2;
};

struct TransformedSymbol {
  Symbol symbol;
  /// Norm propagation factor: 1 for translate/modulate, W(t) for dilate,
  /// ||phi||_1 for convolve/multiply, ||psi||_{L^1(W)} for psi_average,
  /// ||m1|| ||m2|| for compose_linear.
  double factor = 1.0;
  std::string rule;
};

/// Throws Error when psi is not W-integrable on its grid. W needs a triple;
/// without one the dilate and psi factors are reported as NaN.
[[nodiscard]] TransformedSymbol symbol_transform(const Symbol& m, const SymbolOp& op,
                                                 const std::optional<YoungTriple>& triple = std::nullopt);

// Norm checks.

/// Outcome of a bound or lower-bound computation. For a bound check the
/// ratio is lhs / rhs with rhs = constant * N1(f) N2(g); for a search it is
/// the best N3(B(f,g)) / (N1(f) N2(g)) found.
struct BoundCheck {
  double constant_claimed = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::size_t skipped = 0;
  std::string witness;
  std::int64_t witness_trial = -1;
};

/// N_Phi3(B_m(f, g)) / (N_Phi1(f) N_Phi2(g)); nullopt when a denominator vanishes.
struct NormRatio {
  double lhs = 0.0;
  double n1 = 0.0;
  double n2 = 0.0;
};
[[nodiscard]] std::optional<NormRatio> norm_ratio(const Symbol& m, const YoungTriple& triple,
                                                  const SampledFunction& f, const SampledFunction& g,
                                                  Method method = Method::automatic);

enum class TestFamily { indicators, gaussians, modulated_translates, rademacher_combs };

const char* to_string(TestFamily family);
TestFamily parse_family(const std::string& name);

/// Deterministic generator for trial `index` of a run seeded with `seed`.
[[nodiscard]] std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

/// Draws one (f, g) pair of the family; the label describes the draw.
struct TestPair {
  SampledFunction f;
  SampledFunction g;
  std::string label;
};
[[nodiscard]] TestPair draw_pair(TestFamily family, const Grid& grid, std::uint64_t seed);

/// max over `budget` seeded pairs of N3(B(f,g)) / (N1(f) N2(g)): a lower
/// bound for ||m||_(Phi1,Phi2,Phi3). Trials run on worker threads with
/// per-trial seeds, so the result does not depend on the worker count.
[[nodiscard]] BoundCheck opnorm_lower_search(const Symbol& m, const YoungTriple& triple, TestFamily family,
                                             std::size_t budget, std::uint64_t seed, const Grid& grid = {8.0, 512});

}  // namespace orlicz
