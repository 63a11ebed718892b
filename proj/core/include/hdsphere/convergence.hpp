#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hdsphere/partialwave.hpp"

namespace hdsphere {

enum class Metric {
  farfield_sup_diff,  ///< sup_mu |A_eps - A|
  trace_norm,         ///< H^{-1/2} norm of the normal velocity on dB_R1
  interior_abs,       ///< |u_eps(x0)| at one interior point
};

std::string_view metric_name(Metric m);
std::optional<Metric> parse_metric(std::string_view name);
bool is_power_metric(Metric m);

/// start * ratio^j for j = 0..count-1.
std::vector<double> geometric_grid(double start, double ratio, int count);

struct SweepOptions {
  double tol = 1e-12;
  /// Interior probe point; defaults to (R1/2) d.
  std::optional<Vec3> x0;
  int jobs = 1;
};

struct SweepTable {
  std::vector<double> eps;         ///< strictly decreasing
  Metric metric = Metric::farfield_sup_diff;
  std::vector<double> values;      ///< metric per eps (may underflow for interior_abs)
  std::vector<double> log_values;  ///< ln(metric), never underflows
  MediumConfig config;             ///< template; eps is overwritten per row
  Vec3 x0{};
};

/// One full solve per eps. The grid must be geometric with ratio <= 1/2, at
/// least six points, all in (0, 0.1]. Rows are independent and may be
/// computed on `jobs` threads; the result does not depend on `jobs`.
SweepTable sweep(const MediumConfig& tmpl, std::span<const double> eps_grid, Metric metric,
                 const SweepOptions& options = {});

struct RateFit {
  double slope = 0.0;
  double log_prefactor = 0.0;
  double r_squared = 0.0;
  std::size_t first = 0;  ///< window of rows used, inclusive
  std::size_t last = 0;

  double prefactor() const;
};

/// Least squares through (ln eps, ln metric) over rows with eps <= window_max.
RateFit fit_power_rate(const SweepTable& table, double window_max = std::numeric_limits<double>::infinity());
RateFit fit_power_rate(std::span<const double> eps, std::span<const double> metric);

struct DecayFit {
  double slope_vs_inv_sqrt_eps = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  Vec3 x0{};
  double delta0 = 0.0;          ///< R1 - |x0|
  double sharp_slope = 0.0;     ///< -k b delta0
  double guaranteed_slope = 0.0;///< -k b delta0 / 2
  std::size_t rows_used = 0;
};

/// Least squares through (eps^{-1/2}, ln metric). Rows past the first one
/// below 1e-300 are dropped; fewer than three usable rows is an error.
DecayFit fit_exponential_decay(const SweepTable& table);

/// l0 = sum_n (1 + n(n+1)/R1^2)^{-1/2} 4pi(2n+1) / (k^4 R1^2 |h_n'(kR1)|^2).
double l0_constant(const MediumConfig& cfg);
/// 2 k sqrt(l0) |a + ib|.
double analytic_c_nu(const MediumConfig& cfg);

/// |sum_{n>=1} (2n+1) P_n(mu) / (k^3 R1^2 h_n'(kR1)^2)| |a + ib|.
double c_a_series(const MediumConfig& cfg, double mu);

struct PrefactorStudy {
  std::vector<double> eps;
  std::vector<double> ratio;  ///< farfield_sup_diff / sqrt(eps)
  double mu_at_sup = 1.0;     ///< where the sup is attained at the smallest eps
  double c_a_series = 0.0;    ///< c_a_series(cfg, mu_at_sup)
};

PrefactorStudy amplitude_prefactor_study(const MediumConfig& cfg, std::span<const double> eps_grid,
                                         double tol = 1e-12);

}  // namespace hdsphere
