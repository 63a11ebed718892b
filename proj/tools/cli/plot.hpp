#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hdsphere/convergence.hpp"

namespace hdsphere::cli {

/// Rows and fit of a sweep CSV as written by `hdsphere sweep`.
struct SweepCsv {
  Metric metric = Metric::farfield_sup_diff;
  std::vector<double> eps;
  std::vector<double> ln_metric;
  std::optional<double> slope;      ///< from the "# fit" footer
  std::optional<double> intercept;  ///< ln metric = intercept + slope * x
};

/// Throws ConfigError on empty or malformed input.
SweepCsv parse_sweep_csv(std::string_view text);

/// Log-log metric vs eps for power metrics; ln metric vs eps^{-1/2} for the
/// decay metric. Points, fitted line, labeled axes and a "slope=" annotation.
std::string render_svg(const SweepCsv& data);

}  // namespace hdsphere::cli
