#include "perfo/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace perfo {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& key, const std::string& token) {
  const std::string t = trim(token);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ConfigError(key, "cannot parse '" + t + "' as a number");
  if (!std::isfinite(v)) throw ConfigError(key, "value must be finite");
  return v;
}

struct Value {
  bool list = false;
  std::vector<double> numbers;
};

Value parse_value(const std::string& key, const std::string& raw) {
  Value v;
  if (raw.empty()) throw ConfigError(key, "missing value");
  if (raw.front() == '[') {
    if (raw.back() != ']') throw ConfigError(key, "unterminated list");
    v.list = true;
    const std::string body = trim(std::string_view(raw).substr(1, raw.size() - 2));
    if (body.empty()) return v;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) v.numbers.push_back(parse_number(key, item));
    return v;
  }
  v.numbers.push_back(parse_number(key, raw));
  return v;
}

double scalar(const std::string& key, const Value& v) {
  if (v.list || v.numbers.size() != 1) throw ConfigError(key, "expected a scalar");
  return v.numbers[0];
}

int integer(const std::string& key, const Value& v) {
  const double x = scalar(key, v);
  if (x != std::floor(x) || std::abs(x) > 1e9) throw ConfigError(key, "expected an integer");
  return static_cast<int>(x);
}

std::vector<double> list(const std::string& key, const Value& v) {
  if (!v.list) throw ConfigError(key, "expected a bracketed list");
  return v.numbers;
}

std::vector<Vec2> points(const std::string& key, const Value& v) {
  const std::vector<double> xs = list(key, v);
  if (xs.size() % 2 != 0) throw ConfigError(key, "expected an even number of coordinates");
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < xs.size(); i += 2) out.push_back({xs[i], xs[i + 1]});
  return out;
}

void validate(const RunConfig& c) {
  if (!(c.q11 > 0.0)) throw ConfigError("lattice.q11", "must be positive");
  if (!(c.q22 > 0.0)) throw ConfigError("lattice.q22", "must be positive");
  if (c.ewald_split < 0.0) throw ConfigError("lattice.ewald_split", "must be non-negative (0 selects the default)");
  try {
    c.hole_shape();
  } catch (const InvalidArgument& e) {
    throw ConfigError("hole.shape", e.what());
  }
  if (!c.lattice().contains(c.p)) throw ConfigError("hole.p", "must lie in the open cell ]0,q11[ x ]0,q22[");
  if (c.g.empty() || c.g.size() % 2 == 0) throw ConfigError("data.g", "expected [a0, a1, b1, ...] with odd length");
  if (c.f.size() % 4 != 0) throw ConfigError("data.f", "expected quadruples [k1, k2, re, im, ...]");
  for (std::size_t i = 0; i < c.f.size(); i += 4)
    if (c.f[i] != std::floor(c.f[i]) || c.f[i + 1] != std::floor(c.f[i + 1]))
      throw ConfigError("data.f", "wave numbers must be integers");
  try {
    c.source();
  } catch (const InvalidArgument& e) {
    throw ConfigError("data.f", e.what());
  }
  if (c.n < 8) throw ConfigError("numerics.N", "must be at least 8");
  if (c.grid < 8 || (c.grid & (c.grid - 1)) != 0) throw ConfigError("numerics.M", "must be a power of two >= 8");
  if (c.quadrature < 0) throw ConfigError("numerics.quadrature", "must be non-negative (0 selects 2N)");
  if (c.eps_count < 4) throw ConfigError("sweep.count", "need at least 4 points");
  if (!(c.eps_max > c.eps_min && c.eps_min > 0.0)) throw ConfigError("sweep.eps_min", "need eps_max > eps_min > 0");
  for (std::size_t i = 0; i < c.eps_grid.size(); ++i)
    if (!(c.eps_grid[i] > 0.0) || (i > 0 && !(c.eps_grid[i] < c.eps_grid[i - 1])))
      throw ConfigError("sweep.eps_grid", "must be positive and strictly decreasing");
  if (!c.eps_grid.empty() && c.eps_grid.size() < 4) throw ConfigError("sweep.eps_grid", "need at least 4 points");
  for (double e : c.continuation_eps)
    if (e == 0.0) throw ConfigError("continuation.eps", "eps = 0 is the comparison point, not a grid value");
  if (c.green_grid < 1) throw ConfigError("green.grid", "must be positive");
}

}  // namespace

PeriodicField RunConfig::source() const {
  std::vector<FourierMode> modes;
  for (std::size_t i = 0; i + 3 < f.size(); i += 4)
    modes.push_back({static_cast<int>(f[i]), static_cast<int>(f[i + 1]), {f[i + 2], f[i + 3]}});
  return PeriodicField::from_modes(lattice(), modes, grid);
}

ProblemData RunConfig::problem() const {
  return ProblemData{eps, p, hole_shape(), boundary_data(), source(), n};
}

std::vector<double> RunConfig::sweep_grid() const {
  if (!eps_grid.empty()) return eps_grid;
  std::vector<double> out(eps_count);
  const double ratio = std::log(eps_min / eps_max) / (eps_count - 1);
  for (int i = 0; i < eps_count; ++i) out[i] = eps_max * std::exp(ratio * i);
  out.back() = eps_min;
  return out;
}

RunConfig parse_config(std::string_view text) {
  RunConfig c;
  using Setter = std::function<void(const std::string&, const Value&)>;
  const std::map<std::string, Setter> setters{
      {"lattice.q11", [&](auto& k, auto& v) { c.q11 = scalar(k, v); }},
      {"lattice.q22", [&](auto& k, auto& v) { c.q22 = scalar(k, v); }},
      {"lattice.ewald_split", [&](auto& k, auto& v) { c.ewald_split = scalar(k, v); }},
      {"hole.p",
       [&](auto& k, auto& v) {
         const auto ps = points(k, v);
         if (ps.size() != 1) throw ConfigError(k, "expected [x, y]");
         c.p = ps[0];
       }},
      {"hole.shape", [&](auto& k, auto& v) { c.shape = list(k, v); }},
      {"data.g", [&](auto& k, auto& v) { c.g = v.list ? v.numbers : std::vector<double>{scalar(k, v)}; }},
      {"data.f", [&](auto& k, auto& v) { c.f = list(k, v); }},
      {"numerics.N", [&](auto& k, auto& v) { c.n = integer(k, v); }},
      {"numerics.M", [&](auto& k, auto& v) { c.grid = integer(k, v); }},
      {"numerics.quadrature", [&](auto& k, auto& v) { c.quadrature = integer(k, v); }},
      {"solve.eps", [&](auto& k, auto& v) { c.eps = scalar(k, v); }},
      {"sweep.eps_max", [&](auto& k, auto& v) { c.eps_max = scalar(k, v); }},
      {"sweep.eps_min", [&](auto& k, auto& v) { c.eps_min = scalar(k, v); }},
      {"sweep.count", [&](auto& k, auto& v) { c.eps_count = integer(k, v); }},
      {"sweep.eps_grid", [&](auto& k, auto& v) { c.eps_grid = list(k, v); }},
      {"continuation.eps", [&](auto& k, auto& v) { c.continuation_eps = list(k, v); }},
      {"eval.probes", [&](auto& k, auto& v) { c.probes = points(k, v); }},
      {"green.grid", [&](auto& k, auto& v) { c.green_grid = integer(k, v); }},
  };

  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos)
      throw ConfigError("", "line " + std::to_string(number) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string raw = trim(std::string_view(content).substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(key, "unknown key (line " + std::to_string(number) + ")");
    if (!seen.insert(key).second) throw ConfigError(key, "duplicate key (line " + std::to_string(number) + ")");
    it->second(key, parse_value(key, raw));
  }
  validate(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace perfo
