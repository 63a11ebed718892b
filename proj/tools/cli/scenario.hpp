#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hdsphere/partialwave.hpp"

namespace hdsphere::cli {

/// Plain-text key=value scenario. '#' starts a comment; blank lines are
/// ignored; unknown keys are errors.
struct Scenario {
  MediumConfig medium;
  double eps_start = 1e-1;
  double eps_ratio = 0.25;
  int eps_count = 10;
  double tol = 1e-12;
  double fit_window = 1e-3;
  double x0_fraction = 0.5;  ///< interior probe at x0_fraction * R1 * d
  std::string out = "out";

  std::vector<double> eps_grid() const;
  Vec3 x0() const { return scaled(medium.d, x0_fraction * medium.R1); }

  /// Medium invariants plus the numeric knobs. d within 1e-6 of unit length
  /// is renormalized (a warning is appended); anything else is rejected.
  void validate(MediumConfig::Loss loss, std::vector<std::string>* warnings = nullptr);
};

/// k=1, R1=1, eta0=tau0=1, d=(0,0,1), eps=1e-2, grid 1e-1 * 4^-j for j=0..9.
Scenario default_scenario();

/// Parses on top of the defaults. Throws ConfigError naming the line and key.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

/// Every key, shortest round-trip representation; parse(serialize(s)) == s.
std::string serialize(const Scenario& s);

bool operator==(const Scenario& a, const Scenario& b);

/// Shortest decimal string that reads back to the same double.
std::string shortest(double v);

}  // namespace hdsphere::cli
