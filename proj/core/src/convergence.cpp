#include "hdsphere/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <string>

#include "hdsphere/error.hpp"
#include "hdsphere/fields.hpp"
#include "hdsphere/specfun.hpp"

namespace hdsphere {
namespace {

constexpr double kPi = std::numbers::pi;
const double kUnderflowLog = std::log(1e-300);

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

Line least_squares(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  Line l;
  l.slope = sxy / sxx;
  l.intercept = my - l.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (l.intercept + l.slope * x[i]);
    ss_res += r * r;
  }
  l.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return l;
}

void check_grid(std::span<const double> eps) {
  if (eps.size() < 6) {
    throw ConfigError("sweep: eps grid needs at least 6 points, got " + std::to_string(eps.size()));
  }
  const double ratio = eps[1] / eps[0];
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0 && eps[i] <= 0.1)) {
      throw ConfigError("sweep: eps values must lie in (0, 0.1], got " + std::to_string(eps[i]));
    }
    if (i > 0) {
      const double r = eps[i] / eps[i - 1];
      if (!(r <= 0.5) || std::abs(r - ratio) > 1e-9 * ratio) {
        throw ConfigError("sweep: eps grid must be geometric with ratio <= 1/2");
      }
    }
  }
}

double evaluate(const MediumConfig& cfg, Metric metric, const SweepOptions& opt, const Vec3& x0) {
  const PartialWaveSolution sol = solve_penetrable(cfg, opt.tol);
  switch (metric) {
    case Metric::farfield_sup_diff: return std::log(far_field_sup_diff(sol));
    case Metric::trace_norm: return std::log(trace_norm_boundary(sol));
    case Metric::interior_abs: {
      const std::vector<Vec3> pts{x0};
      return interior_field(sol, pts).front().log_abs;
    }
  }
  return 0.0;
}

void require_positive_finite(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string(what) + ": metric values must be positive and finite");
  }
}

// Table of h_n'(t) in scaled form, extended until the l0-type tail is negligible.
template <class Term>
double converged_series(double t, Term term) {
  int n_top = std::max(64, static_cast<int>(2 * t) + 40);
  while (true) {
    const auto tab = specfun::sph_bessel_real(n_top, t);
    double sum = 0.0;
    for (int n = 0; n <= n_top; ++n) {
      const double v = term(n, tab);
      sum += v;
      if (n > t && v < 1e-16 * sum) return sum;
    }
    if (n_top >= 4096) throw NumericError("l0 series did not converge");
    n_top *= 2;
  }
}

}  // namespace

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::farfield_sup_diff: return "farfield_sup_diff";
    case Metric::trace_norm: return "trace_norm";
    case Metric::interior_abs: return "interior_abs";
  }
  return "";
}

std::optional<Metric> parse_metric(std::string_view name) {
  for (Metric m : {Metric::farfield_sup_diff, Metric::trace_norm, Metric::interior_abs}) {
    if (metric_name(m) == name) return m;
  }
  if (name == "farfield") return Metric::farfield_sup_diff;
  if (name == "trace") return Metric::trace_norm;
  if (name == "interior") return Metric::interior_abs;
  return std::nullopt;
}

bool is_power_metric(Metric m) { return m != Metric::interior_abs; }

std::vector<double> geometric_grid(double start, double ratio, int count) {
  std::vector<double> g(std::max(count, 0));
  for (int j = 0; j < count; ++j) g[j] = start * std::pow(ratio, j);
  return g;
}

SweepTable sweep(const MediumConfig& tmpl, std::span<const double> eps_grid, Metric metric,
                 const SweepOptions& options) {
  check_grid(eps_grid);
  SweepTable table;
  table.eps.assign(eps_grid.begin(), eps_grid.end());
  table.metric = metric;
  table.config = tmpl;
  table.x0 = options.x0.value_or(scaled(tmpl.d, 0.5 * tmpl.R1));
  if (metric == Metric::interior_abs && !(norm(table.x0) < tmpl.R1)) {
    throw ConfigError("sweep: interior probe point must satisfy |x0| < R1");
  }

  const std::size_t n = table.eps.size();
  table.log_values.assign(n, 0.0);
  auto run_row = [&](std::size_t i) {
    MediumConfig cfg = tmpl;
    cfg.eps = table.eps[i];
    try {
      table.log_values[i] = evaluate(cfg, metric, options, table.x0);
    } catch (const NumericError& e) {
      throw NumericError(std::string(e.what()) + " (eps = " + std::to_string(cfg.eps) + ")", e.order());
    }
  };

  const std::size_t jobs = static_cast<std::size_t>(std::clamp(options.jobs, 1, 64));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) run_row(i);
  } else {
    std::vector<std::future<void>> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < n; i += jobs) run_row(i);
      }));
    }
    for (auto& f : workers) f.get();
  }

  table.values.resize(n);
  std::transform(table.log_values.begin(), table.log_values.end(), table.values.begin(),
                 [](double l) { return std::exp(l); });
  return table;
}

double RateFit::prefactor() const { return std::exp(log_prefactor); }

RateFit fit_power_rate(std::span<const double> eps, std::span<const double> metric) {
  if (eps.size() != metric.size()) throw ConfigError("fit_power_rate: size mismatch");
  if (eps.size() < 3) {
    throw ConfigError("fit_power_rate: need at least 3 points, got " + std::to_string(eps.size()));
  }
  std::vector<double> x(eps.size()), y(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    require_positive_finite(eps[i], "fit_power_rate");
    require_positive_finite(metric[i], "fit_power_rate");
    x[i] = std::log(eps[i]);
    y[i] = std::log(metric[i]);
  }
  const Line l = least_squares(x, y);
  return {l.slope, l.intercept, l.r_squared, 0, eps.size() - 1};
}

RateFit fit_power_rate(const SweepTable& table, double window_max) {
  std::size_t first = table.eps.size();
  for (std::size_t i = 0; i < table.eps.size(); ++i) {
    if (table.eps[i] <= window_max) {
      first = i;
      break;
    }
  }
  if (first == table.eps.size()) throw ConfigError("fit_power_rate: fit window is empty");
  std::span<const double> e(table.eps), v(table.values);
  RateFit fit = fit_power_rate(e.subspan(first), v.subspan(first));
  fit.first = first;
  fit.last = table.eps.size() - 1;
  return fit;
}

DecayFit fit_exponential_decay(const SweepTable& table) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < table.eps.size(); ++i) {
    if (!std::isfinite(table.log_values[i]) || table.log_values[i] < kUnderflowLog) break;
    x.push_back(1.0 / std::sqrt(table.eps[i]));
    y.push_back(table.log_values[i]);
  }
  if (x.size() < 3) {
    throw ConfigError("fit_exponential_decay: fewer than 3 usable rows (empty or underflowed table)");
  }
  const double r0 = norm(table.x0);
  if (!(r0 < table.config.R1)) throw ConfigError("fit_exponential_decay: x0 must be inside the sphere");

  const Line l = least_squares(x, y);
  DecayFit fit;
  fit.slope_vs_inv_sqrt_eps = l.slope;
  fit.intercept = l.intercept;
  fit.r_squared = l.r_squared;
  fit.x0 = table.x0;
  fit.delta0 = table.config.R1 - r0;
  const double b = sqrt_contrast(table.config.eta0, table.config.tau0).b;
  fit.sharp_slope = -table.config.k * b * fit.delta0;
  fit.guaranteed_slope = 0.5 * fit.sharp_slope;
  fit.rows_used = x.size();
  return fit;
}

double l0_constant(const MediumConfig& cfg) {
  const double k = cfg.k, R1 = cfg.R1;
  return converged_series(k * R1, [&](int n, const specfun::BesselTable& tab) {
    const double weight = 1.0 / std::sqrt(1.0 + n * (n + 1.0) / (R1 * R1));
    // 1/|h_n'|^2 in log form; h_n' overflows double well before the tail is reached
    const double inv_hp2 = std::exp(-2.0 * tab.hp[n].logmag());
    return weight * 4.0 * kPi * (2.0 * n + 1.0) * inv_hp2 / (std::pow(k, 4) * R1 * R1);
  });
}

double analytic_c_nu(const MediumConfig& cfg) {
  return 2.0 * cfg.k * std::sqrt(l0_constant(cfg)) * sqrt_contrast(cfg.eta0, cfg.tau0).modulus();
}

double c_a_series(const MediumConfig& cfg, double mu) {
  const double k = cfg.k, R1 = cfg.R1, t = k * R1;
  const int n_top = std::max(64, static_cast<int>(2 * t) + 40);
  const auto tab = specfun::sph_bessel_real(n_top, t);
  const auto p = specfun::legendre_p(n_top, mu);
  cdouble sum = 0.0;
  for (int n = 1; n <= n_top; ++n) {
    const ScaledComplex term = ScaledComplex::from_complex((2.0 * n + 1.0) * p[n]) / (tab.hp[n] * tab.hp[n]);
    sum += term.to_complex();
  }
  return std::abs(sum) / (k * k * k * R1 * R1) * sqrt_contrast(cfg.eta0, cfg.tau0).modulus();
}

PrefactorStudy amplitude_prefactor_study(const MediumConfig& cfg, std::span<const double> eps_grid, double tol) {
  PrefactorStudy study;
  for (double eps : eps_grid) {
    MediumConfig c = cfg;
    c.eps = eps;
    const PartialWaveSolution sol = solve_penetrable(c, tol);
    study.eps.push_back(eps);
    study.ratio.push_back(far_field_sup_diff(sol) / std::sqrt(eps));
    if (eps == eps_grid.back()) {
      const auto mu = chebyshev_mu_grid(kSupGridPoints);
      double best = -1.0;
      for (double m : mu) {
        cdouble s = 0.0;
        const auto p = specfun::legendre_p(sol.n_max, m);
        for (int n = 0; n <= sol.n_max; ++n) s += (2.0 * n + 1.0) * (sol.A[n] - sol.C[n]) * p[n];
        if (std::abs(s) > best) {
          best = std::abs(s);
          study.mu_at_sup = m;
        }
      }
    }
  }
  study.c_a_series = c_a_series(cfg, study.mu_at_sup);
  return study;
}

}  // namespace hdsphere
