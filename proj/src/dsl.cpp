#include "orlicz/dsl.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace orlicz {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

// "k=v,k=v" with every key from `allowed`; missing keys take the defaults.
std::map<std::string, double> parse_params(const std::string& text, const std::map<std::string, double>& defaults,
                                           const std::string& context) {
  std::map<std::string, double> out = defaults;
  if (trim(text).empty()) return out;
  std::set<std::string> seen;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) bad(context + ": expected key=value, got '" + item + "'");
    const std::string key = trim(item.substr(0, eq));
    if (!defaults.contains(key)) {
      std::string keys;
      for (const auto& [k, v] : defaults) keys += (keys.empty() ? "" : ", ") + k;
      bad(context + ": unknown key '" + key + "' (accepted: " + keys + ")");
    }
    if (!seen.insert(key).second) bad(context + ": key '" + key + "' given twice");
    out[key] = parse_real(item.substr(eq + 1));
  }
  return out;
}

// "name:params" -> (name, params)
std::pair<std::string, std::string> head_tail(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return {trim(spec), ""};
  return {trim(spec.substr(0, colon)), spec.substr(colon + 1)};
}

double required(const std::map<std::string, double>& p, const std::string& key, const std::string& context) {
  const double v = p.at(key);
  if (std::isnan(v)) bad(context + ": missing required key '" + key + "'");
  return v;
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_real(const std::string& text) {
  const std::string t = trim(text);
  if (t == "inf" || t == "+inf") return kInf;
  if (t == "-inf") return -kInf;
  if (t == "nan") return std::nan("");
  double v = 0.0;
  const auto* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (ec != std::errc{} || ptr != end || t.empty()) bad("not a number: '" + text + "'");
  return v;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  bad("csv: missing column '" + name + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open '" + path.string() + "'");
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) bad("csv '" + path.string() + "' is empty");
  t.header = split(trim(line), ',');
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(trim(line), ',');
    if (cells.size() != t.header.size())
      bad("csv '" + path.string() + "' line " + std::to_string(lineno) + ": expected " +
          std::to_string(t.header.size()) + " fields");
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_real(c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string to_csv(const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) out += (i ? "," : "") + table.header[i];
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_real(row[i]);
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

SampledFunction read_function_csv(const std::filesystem::path& path) {
  const auto t = read_csv(path);
  const auto cx = t.column("x"), cre = t.column("re"), cim = t.column("im");
  const std::size_t n = t.rows.size();
  if (n < 2) bad("function csv needs at least two rows");
  const double x0 = t.rows[0][cx];
  const double dx = t.rows[1][cx] - x0;
  const Grid grid{-x0, n};
  if (!(dx > 0.0) || std::abs(grid.spacing() - dx) > 1e-9 * dx)
    bad("function csv: x must be the nodes -L + j (2L / n) of a centred grid");
  grid.validate();
  std::vector<cplx> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(t.rows[j][cx] - grid.node(j)) > 1e-9 * std::max(1.0, grid.half_width))
      bad("function csv: row " + std::to_string(j + 2) + " is off the grid");
    v[j] = {t.rows[j][cre], t.rows[j][cim]};
  }
  return make_sampled(grid, std::move(v));
}

CsvTable function_table(const SampledFunction& f) {
  CsvTable t{{"x", "re", "im"}, {}};
  t.rows.reserve(f.values.size());
  for (std::size_t j = 0; j < f.values.size(); ++j)
    t.rows.push_back({f.grid.node(j), f.values[j].real(), f.values[j].imag()});
  return t;
}

YoungFunction parse_young(const std::string& raw) {
  const std::string spec = trim(raw);
  const std::string ctx = "young spec '" + spec + "'";
  if (spec.rfind("complement(", 0) == 0) {
    if (spec.back() != ')') bad(ctx + ": unbalanced parenthesis");
    return complement(parse_young(spec.substr(11, spec.size() - 12)));
  }
  if (!spec.empty() && spec[0] == '@') {
    const auto t = read_csv(spec.substr(1));
    const auto cx = t.column("x"), cy = t.column("y");
    std::vector<double> x, y;
    for (const auto& r : t.rows) {
      x.push_back(r[cx]);
      y.push_back(r[cy]);
    }
    return YoungFunction::piecewise_linear(std::move(x), std::move(y));
  }
  const auto [name, rest] = head_tail(spec);
  const double nan = std::nan("");
  if (name == "power") return YoungFunction::power(required(parse_params(rest, {{"p", nan}}, ctx), "p", ctx));
  if (name == "powerp") return YoungFunction::power_over_p(required(parse_params(rest, {{"p", nan}}, ctx), "p", ctx));
  if (name == "exp") {
    (void)parse_params(rest, {}, ctx);
    return YoungFunction::exp_minus_one();
  }
  if (name == "window") return YoungFunction::indicator_window(required(parse_params(rest, {{"c", nan}}, ctx), "c", ctx));
  if (name == "linear") {
    const double c = required(parse_params(rest, {{"c", nan}}, ctx), "c", ctx);
    return YoungFunction::piecewise_linear({0.0, 1.0}, {0.0, c});
  }
  bad(ctx + ": expected power:p=P | powerp:p=P | exp | window:c=C | linear:c=C | complement(...) | @file.csv");
}

SampledFunction parse_function(const std::string& raw, const Grid& grid) {
  const std::string spec = trim(raw);
  const std::string ctx = "function spec '" + spec + "'";
  if (!spec.empty() && spec[0] == '@') return read_function_csv(spec.substr(1));
  const auto [name, rest] = head_tail(spec);
  const double nan = std::nan("");
  if (name == "indicator") {
    const auto p = parse_params(rest, {{"a", nan}, {"start", 0.0}}, ctx);
    return indicator(grid, required(p, "a", ctx), p.at("start"));
  }
  if (name == "gaussian") {
    const auto p = parse_params(rest, {{"s", 1.0}, {"c", 0.0}, {"xi0", 0.0}}, ctx);
    return gaussian(grid, p.at("s"), p.at("c"), p.at("xi0"));
  }
  if (name == "sinc") return sinc(grid, required(parse_params(rest, {{"w", nan}}, ctx), "w", ctx));
  if (name == "bl_gauss") return bl_gauss(grid, parse_params(rest, {{"xi0", 0.0}}, ctx).at("xi0"));
  bad(ctx + ": expected indicator:a=A[,start=S] | gaussian[:s=S,c=C,xi0=X] | sinc:w=W | bl_gauss[:xi0=X] | @file.csv");
}

Symbol parse_symbol(const std::string& raw) {
  const std::string spec = trim(raw);
  const std::string ctx = "symbol spec '" + spec + "'";
  const auto [name, rest] = head_tail(spec);
  const double nan = std::nan("");
  if (name == "constant") return Symbol::constant(parse_params(rest, {{"c", 1.0}}, ctx).at("c"));
  if (name == "difference") {
    if (!rest.empty() && rest[0] == '@') {
      const auto t = read_csv(rest.substr(1));
      const auto cv = t.column("v"), cre = t.column("re"), cim = t.column("im");
      std::vector<double> v;
      std::vector<cplx> m;
      for (const auto& r : t.rows) {
        v.push_back(r[cv]);
        m.emplace_back(r[cre], r[cim]);
      }
      return Symbol::difference_sampled(std::move(v), std::move(m), "difference:" + rest);
    }
    const auto [profile, params] = head_tail(rest);
    if (profile == "gauss") {
      const auto p = parse_params(params, {{"w", 1.0}, {"c", 0.0}}, ctx);
      return Symbol::gauss(p.at("w"), p.at("c"));
    }
    if (profile == "bump") {
      const auto p = parse_params(params, {{"w", 1.0}, {"c", 0.0}}, ctx);
      return Symbol::bump(p.at("w"), p.at("c"));
    }
    if (profile == "sign") return Symbol::windowed_sign(required(parse_params(params, {{"W", nan}}, ctx), "W", ctx));
    bad(ctx + ": expected difference:gauss[:w=,c=] | difference:bump[:w=,c=] | difference:sign:W= | difference:@file.csv");
  }
  if (name == "measure") {
    // Atoms first, then an optional ":alpha=..,beta=.." tail.
    std::string atoms = rest, tail;
    if (const auto pos = rest.find(':'); pos != std::string::npos) {
      atoms = rest.substr(0, pos);
      tail = rest.substr(pos + 1);
    }
    const auto p = parse_params(tail, {{"alpha", 1.0}, {"beta", -1.0}}, ctx);
    Measure mu;
    for (const auto& atom : split(atoms, ';')) {
      if (atom.rfind("delta@", 0) != 0) bad(ctx + ": atoms look like delta@t,w; got '" + atom + "'");
      const auto parts = split(atom.substr(6), ',');
      if (parts.size() != 2) bad(ctx + ": atom '" + atom + "' needs a location and a weight");
      mu.atoms.emplace_back(parse_real(parts[0]), parse_real(parts[1]));
    }
    if (mu.atoms.empty()) bad(ctx + ": a measure needs at least one atom");
    return Symbol::measure_hat(std::move(mu), p.at("alpha"), p.at("beta"));
  }
  bad(ctx + ": expected constant[:c=C] | difference:... | measure:delta@t,w;...[:alpha=A,beta=B]");
}

}  // namespace orlicz
