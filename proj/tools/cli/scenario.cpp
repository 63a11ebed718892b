#include "scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hdsphere/convergence.hpp"
#include "hdsphere/error.hpp"

namespace hdsphere::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string where(int line, std::string_view key) {
  return "line " + std::to_string(line) + ", key '" + std::string(key) + "'";
}

double parse_double(std::string_view text, int line, std::string_view key) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(where(line, key) + ": not a finite number: '" + std::string(text) + "'");
  }
  return v;
}

int parse_int(std::string_view text, int line, std::string_view key) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(where(line, key) + ": not an integer: '" + std::string(text) + "'");
  }
  return v;
}

Vec3 parse_vec3(std::string_view text, int line, std::string_view key) {
  std::vector<double> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto sep = text.find_first_of(", \t", pos);
    const auto tok = text.substr(pos, sep == std::string_view::npos ? std::string_view::npos : sep - pos);
    if (!tok.empty()) parts.push_back(parse_double(tok, line, key));
    if (sep == std::string_view::npos) break;
    pos = sep + 1;
  }
  if (parts.size() != 3) {
    throw ConfigError(where(line, key) + ": expected three components, got " + std::to_string(parts.size()));
  }
  return {parts[0], parts[1], parts[2]};
}

void require(bool ok, const std::string& key, const std::string& msg) {
  if (!ok) throw ConfigError(key + ": " + msg);
}

}  // namespace

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<double> Scenario::eps_grid() const { return geometric_grid(eps_start, eps_ratio, eps_count); }

void Scenario::validate(MediumConfig::Loss loss, std::vector<std::string>* warnings) {
  const double len = norm(medium.d);
  require(std::isfinite(len) && std::abs(len - 1.0) <= 1e-6, "d",
          "must be a unit vector (within 1e-6), |d| = " + shortest(len));
  if (std::abs(len - 1.0) > 1e-15) {
    medium.d = scaled(medium.d, 1.0 / len);
    if (warnings) warnings->push_back("d renormalized from |d| = " + shortest(len));
  }
  medium.validate(loss);
  require(tol > 0.0 && tol <= 1e-4, "tol", "must lie in (0, 1e-4], got " + shortest(tol));
  require(eps_start > 0.0, "eps_start", "must be positive, got " + shortest(eps_start));
  require(eps_ratio > 0.0 && eps_ratio < 1.0, "eps_ratio", "must lie in (0, 1), got " + shortest(eps_ratio));
  require(eps_count >= 1 && eps_count <= 64, "eps_count", "must lie in [1, 64], got " + std::to_string(eps_count));
  require(fit_window > 0.0, "fit_window", "must be positive, got " + shortest(fit_window));
  require(x0_fraction >= 0.0 && x0_fraction < 1.0, "x0_fraction",
          "must lie in [0, 1), got " + shortest(x0_fraction));
  require(!out.empty(), "out", "must not be empty");
}

Scenario default_scenario() { return Scenario{}; }

Scenario parse_scenario(std::string_view text) {
  Scenario s = default_scenario();
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value, got '" + std::string(line) + "'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view val = trim(line.substr(eq + 1));
    const auto num = [&] { return parse_double(val, line_no, key); };

    if (key == "k") s.medium.k = num();
    else if (key == "R1") s.medium.R1 = num();
    else if (key == "eta0") s.medium.eta0 = num();
    else if (key == "tau0") s.medium.tau0 = num();
    else if (key == "eps") s.medium.eps = num();
    else if (key == "eps_start") s.eps_start = num();
    else if (key == "eps_ratio") s.eps_ratio = num();
    else if (key == "eps_count") s.eps_count = parse_int(val, line_no, key);
    else if (key == "d") s.medium.d = parse_vec3(val, line_no, key);
    else if (key == "tol") s.tol = num();
    else if (key == "fit_window") s.fit_window = num();
    else if (key == "x0_fraction") s.x0_fraction = num();
    else if (key == "out") {
      if (val.empty()) throw ConfigError(where(line_no, key) + ": empty path");
      s.out = std::string(val);
    } else {
      throw ConfigError(where(line_no, key) + ": unknown key");
    }
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string serialize(const Scenario& s) {
  std::string o;
  const auto kv = [&](std::string_view key, const std::string& v) {
    o.append(key).append("=").append(v).append("\n");
  };
  kv("k", shortest(s.medium.k));
  kv("R1", shortest(s.medium.R1));
  kv("eta0", shortest(s.medium.eta0));
  kv("tau0", shortest(s.medium.tau0));
  kv("eps", shortest(s.medium.eps));
  kv("d", shortest(s.medium.d[0]) + " " + shortest(s.medium.d[1]) + " " + shortest(s.medium.d[2]));
  kv("eps_start", shortest(s.eps_start));
  kv("eps_ratio", shortest(s.eps_ratio));
  kv("eps_count", std::to_string(s.eps_count));
  kv("tol", shortest(s.tol));
  kv("fit_window", shortest(s.fit_window));
  kv("x0_fraction", shortest(s.x0_fraction));
  kv("out", s.out);
  return o;
}

bool operator==(const Scenario& a, const Scenario& b) {
  const MediumConfig &x = a.medium, &y = b.medium;
  return x.k == y.k && x.R1 == y.R1 && x.eta0 == y.eta0 && x.tau0 == y.tau0 && x.eps == y.eps && x.d == y.d &&
         a.eps_start == b.eps_start && a.eps_ratio == b.eps_ratio && a.eps_count == b.eps_count && a.tol == b.tol &&
         a.fit_window == b.fit_window && a.x0_fraction == b.x0_fraction && a.out == b.out;
}

}  // namespace hdsphere::cli
