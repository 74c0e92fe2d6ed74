#pragma once

#include "orlicz/dsl.hpp"
#include "orlicz/experiments.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace orlicz::detail {

// Non-finite reals travel as strings, since JSON has no inf or nan.
inline Json num(double v) {
  if (std::isfinite(v)) return v;
  return format_real(v);
}

inline Grid grid_from(const Json& j) {
  Grid g{j.at("L").get<double>(), j.at("n").get<std::size_t>()};
  g.validate();
  return g;
}

inline std::vector<double> log_grid_from(const Json& j) {
  return log_grid(j.at("lo").get<double>(), j.at("hi").get<double>(), j.at("n").get<std::size_t>());
}

inline std::vector<YoungFunction> youngs_from(const Json& j) {
  std::vector<YoungFunction> out;
  for (const auto& s : j) out.push_back(parse_young(s.get<std::string>()));
  return out;
}

inline YoungTriple triple_from(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("a Young triple needs exactly three specs");
  return {parse_young(j[0].get<std::string>()), parse_young(j[1].get<std::string>()), parse_young(j[2].get<std::string>())};
}

inline std::uint64_t seed_from(const Json& config) { return config.at("seed").get<std::uint64_t>(); }

/// Least-squares slope of y on x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

inline std::string sci(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline bool is_power(const YoungFunction& phi) { return phi.kind() == YoungKind::power; }

}  // namespace orlicz::detail
