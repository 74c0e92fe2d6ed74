#pragma once

#include "orlicz/young.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace orlicz {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Uniform periodic grid x_j = -L + j * (2L / n), j = 0..n-1, n a power of two.
struct Grid {
  double half_width = 32.0;
  std::size_t n = 4096;

  [[nodiscard]] double spacing() const { return 2.0 * half_width / static_cast<double>(n); }
  [[nodiscard]] double node(std::size_t j) const { return -half_width + static_cast<double>(j) * spacing(); }
  /// Frequency grid of the discrete transform: same n, half width n / (4L).
  [[nodiscard]] Grid dual() const { return {static_cast<double>(n) / (4.0 * half_width), n}; }
  /// Index of the node nearest to x (may be out of range).
  [[nodiscard]] long long nearest_index(double x) const;
  [[nodiscard]] bool operator==(const Grid& other) const = default;

  void validate() const;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  [[nodiscard]] double length() const { return hi - lo; }
  [[nodiscard]] bool contains(const Interval& other, double slack = 0.0) const {
    return other.lo >= lo - slack && other.hi <= hi + slack;
  }
  [[nodiscard]] bool operator==(const Interval& other) const = default;
};

/// Complex samples on a Grid. support_hint bounds the non-negligible samples;
/// bandlimit_hint, when set, bounds the non-negligible Fourier coefficients.
struct SampledFunction {
  Grid grid;
  std::vector<cplx> values;
  Interval support_hint;
  std::optional<Interval> bandlimit_hint;

  [[nodiscard]] std::size_t size() const { return values.size(); }
};

/// Relative magnitude below which samples count as outside the support.
inline constexpr double kNegligible = 1e-17;

/// Builds a SampledFunction, deriving the support hint from the samples.
[[nodiscard]] SampledFunction make_sampled(const Grid& grid, std::vector<cplx> values);
[[nodiscard]] SampledFunction sample(const Grid& grid, const std::function<cplx(double)>& fn);
/// Smallest node interval [x_first, x_last + dx) holding every sample above
/// kNegligible * max|f|; empty interval at 0 for the zero function.
[[nodiscard]] Interval effective_support(const Grid& grid, std::span<const cplx> values);
/// Index range [first, last] of samples above kNegligible * max; nullopt if all vanish.
[[nodiscard]] std::optional<std::pair<std::size_t, std::size_t>> active_range(std::span<const cplx> values);

/// f^(xi) = int f(x) e^{-2 pi i x xi} dx by the trapezoid rule, realised as a
/// phase corrected FFT; the result lives on grid.dual().
[[nodiscard]] SampledFunction fourier(const SampledFunction& f);
/// Exact inverse of fourier(); the input lives on a dual grid.
[[nodiscard]] SampledFunction inverse_fourier(const SampledFunction& fhat);

/// In-place transforms on raw sample vectors of a grid of size n:
/// forward: out_k = dx * sum_j f_j e^{-2 pi i x_j xi_k}
/// inverse: out_j = dxi * sum_k F_k e^{+2 pi i x_j xi_k}
void forward_transform(const Grid& grid, std::vector<cplx>& data);
void inverse_transform(const Grid& space_grid, std::vector<cplx>& data);

struct Translate {
  double y = 0.0;
};
struct Modulate {
  double x0 = 0.0;
};
enum class DilationMode { automatic, step, bandlimited };
struct Dilate {
  double lambda = 1.0;
  DilationMode mode = DilationMode::automatic;
};
using GroupAction = std::variant<Translate, Modulate, Dilate>;

/// tau_y f(x) = f(x - y). Whole-cell shifts move samples; other shifts use a
/// frequency-domain phase factor and are exact only for band-limited f.
[[nodiscard]] SampledFunction translate(const SampledFunction& f, double y);
/// M_x0 f(y) = f(y) e^{2 pi i x0 y}.
[[nodiscard]] SampledFunction modulate(const SampledFunction& f, double x0);
/// D_lambda f(x) = f(lambda x) resampled on the same grid. `step` reads f as
/// piecewise constant on cells [x_j, x_j + dx); `bandlimited` evaluates the
/// trigonometric interpolant. `automatic` picks bandlimited iff the input
/// carries a bandlimit hint.
[[nodiscard]] SampledFunction dilate(const SampledFunction& f, double lambda,
                                     DilationMode mode = DilationMode::automatic);
[[nodiscard]] SampledFunction group_action(const SampledFunction& f, const GroupAction& action);

struct LuxemburgOptions {
  double gamma = 1.0;
  double rel_tol = 1e-10;
  int max_doublings = 400;
};

/// inf{k > 0 : dx * sum_j Phi(|f_j| / k) <= gamma}.
[[nodiscard]] double luxemburg_norm(const SampledFunction& f, const YoungFunction& phi,
                                    const LuxemburgOptions& opts = {});
[[nodiscard]] double luxemburg_norm(const SampledFunction& f, const YoungFunction& phi, double gamma);

/// Modular integral dx * sum Phi(|f_j| / k).
[[nodiscard]] double modular(const SampledFunction& f, const YoungFunction& phi, double k);

[[nodiscard]] double l1_norm(const SampledFunction& f);
[[nodiscard]] double sup_norm(const SampledFunction& f);
/// Measure of the support hint counted in whole cells.
[[nodiscard]] double support_measure(const SampledFunction& f);

/// Lemma bounds ||f||_1 / (|A| Phi^-1(1/|A|)) and ||f||_inf / Phi^-1(1/|A|).
struct JensenBounds {
  double lower = 0.0;
  double upper = kInf;
};
[[nodiscard]] JensenBounds jensen_bounds(const SampledFunction& f, const YoungFunction& phi);

/// Builds f = inverse transform of a prescribed f^ on the half-open window
/// [lo, hi) of the dual grid; everything outside the window is zero.
struct BandSpec {
  Interval window;
  std::function<cplx(double)> hat;
};
[[nodiscard]] SampledFunction make_bandlimited(const Grid& grid, const BandSpec& spec);

/// (f * g)(x) = int f(x - t) g(t) dt via transform, multiply, invert.
[[nodiscard]] SampledFunction convolve(const SampledFunction& f, const SampledFunction& g);

/// Pointwise product on a common grid.
[[nodiscard]] SampledFunction multiply(const SampledFunction& f, const SampledFunction& g);
/// a f + b g.
[[nodiscard]] SampledFunction axpby(cplx a, const SampledFunction& f, cplx b, const SampledFunction& g);
[[nodiscard]] SampledFunction scale(const SampledFunction& f, cplx c);
[[nodiscard]] double max_abs_diff(const SampledFunction& f, const SampledFunction& g);

/// Zero-extends f onto a grid `factor` times wider with the same spacing.
[[nodiscard]] SampledFunction pad(const SampledFunction& f, std::size_t factor);
/// Restricts a padded function back onto `target`, which must share spacing and centre.
[[nodiscard]] SampledFunction crop(const SampledFunction& f, const Grid& target);

// Presets used by the CLI and the experiments.
/// chi_[start, start + a), sampled on the nodes of the half-open interval.
[[nodiscard]] SampledFunction indicator(const Grid& grid, double a, double start = 0.0);
/// e^{-pi ((x - c)/s)^2} e^{2 pi i xi0 x}
[[nodiscard]] SampledFunction gaussian(const Grid& grid, double s, double center = 0.0, double xi0 = 0.0);
/// f^ = chi_[-w, w): f(x) = sin(2 pi w x) / (pi x).
[[nodiscard]] SampledFunction sinc(const Grid& grid, double w);
/// f^(xi) = e^{-2 (xi - xi0)^2} truncated at |xi - xi0| >= 6.
[[nodiscard]] SampledFunction bl_gauss(const Grid& grid, double xi0 = 0.0);

}  // namespace orlicz
