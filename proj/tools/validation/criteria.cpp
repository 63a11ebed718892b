#include "criteria.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "hdsphere/convergence.hpp"
#include "hdsphere/error.hpp"
#include "hdsphere/fields.hpp"
#include "hdsphere/specfun.hpp"
#include "reference.hpp"

namespace hdsphere::validation {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr cdouble kI{0.0, 1.0};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Outcome make(int id, const std::string& title, bool ok, std::string detail) {
  return {id, title, ok ? Status::pass : Status::fail, std::move(detail)};
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  while (true) {
    Vec3 v{g(rng), g(rng), g(rng)};
    const double n = norm(v);
    if (n > 1e-3) return scaled(v, 1.0 / n);
  }
}

cdouble i_pow(int n) { return std::pow(kI, n); }

MediumConfig with_eps(const Context& ctx, double eps) {
  MediumConfig c = ctx.base;
  c.eps = eps;
  return c;
}

// 1. far-field rate
Outcome farfield_rate(const Context& ctx) {
  const auto grid = geometric_grid(1e-3, 0.25, ctx.grid_count);
  SweepOptions opt{ctx.tol, std::nullopt, ctx.jobs};
  const SweepTable t = sweep(ctx.base, grid, Metric::farfield_sup_diff, opt);
  const RateFit f = fit_power_rate(t);
  const std::size_t n = t.eps.size();
  const double pref_last = t.values[n - 1] / std::sqrt(t.eps[n - 1]);
  const double pref_prev = t.values[n - 2] / std::sqrt(t.eps[n - 2]);
  const double ratio = pref_last / pref_prev;
  const bool ok = f.slope >= 0.45 && f.slope <= 0.55 && f.r_squared >= 0.999 && std::abs(ratio - 1.0) <= 0.05;
  return make(1, "", ok,
              fmt("slope=%.6f r2=%.9f prefactor=%.6g last-two prefactor ratio=%.6f", f.slope, f.r_squared,
                  f.prefactor(), ratio));
}

// 2. trace rate
Outcome trace_rate(const Context& ctx) {
  const auto grid = geometric_grid(1e-3, 0.25, ctx.grid_count);
  SweepOptions opt{ctx.tol, std::nullopt, ctx.jobs};
  const SweepTable t = sweep(ctx.base, grid, Metric::trace_norm, opt);
  const RateFit f = fit_power_rate(t);
  const double c_nu = analytic_c_nu(ctx.base);
  double lo = INFINITY, hi = 0.0;
  for (std::size_t i = 0; i < t.eps.size(); ++i) {
    const double r = t.values[i] / std::sqrt(t.eps[i]) / c_nu;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  const double spread = hi / lo - 1.0;
  const bool ok = f.slope >= 0.45 && f.slope <= 0.55 && spread <= 0.05;
  return make(2, "", ok,
              fmt("slope=%.6f r2=%.9f prefactor=%.6g C_nu(analytic)=%.6g prefactor/C_nu in [%.6f, %.6f] "
                  "spread=%.4f",
                  f.slope, f.r_squared, f.prefactor(), c_nu, lo, hi, spread));
}

// 3. interior decay
Outcome interior_decay(const Context& ctx) {
  const auto grid = geometric_grid(1e-2, 0.25, ctx.grid_count);
  SweepOptions opt{ctx.tol, scaled(ctx.base.d, 0.5 * ctx.base.R1), ctx.jobs};
  const SweepTable t = sweep(ctx.base, grid, Metric::interior_abs, opt);
  const DecayFit f = fit_exponential_decay(t);
  const double rel = std::abs(f.slope_vs_inv_sqrt_eps / f.sharp_slope - 1.0);
  const bool ok = f.slope_vs_inv_sqrt_eps <= f.guaranteed_slope && rel <= 0.10;
  return make(3, "", ok,
              fmt("slope=%.6f guaranteed<=%.6f sharp=%.6f rel.dev=%.4f r2=%.9f", f.slope_vs_inv_sqrt_eps,
                  f.guaranteed_slope, f.sharp_slope, rel, f.r_squared));
}

// 4. null scatterer
Outcome null_scatterer(const Context& ctx) {
  const MediumConfig cfg = MediumConfig::homogeneous(ctx.base.k, ctx.base.R1, ctx.base.d);
  const PartialWaveSolution sol = solve_penetrable(cfg, ctx.tol, MediumConfig::Loss::optional);
  double max_a = 0.0;
  for (const cdouble& a : sol.A) max_a = std::max(max_a, std::abs(a));
  const auto mu = chebyshev_mu_grid(kSupGridPoints);
  const FarFieldPattern p = far_field(sol, ScattererKind::penetrable, mu);
  double sup = 0.0;
  for (const cdouble& v : p.values) sup = std::max(sup, std::abs(v));
  return make(4, "", max_a <= 1e-13 && sup <= 1e-12, fmt("max|A_n|=%.3e sup|A(mu)|=%.3e", max_a, sup));
}

// 5. special functions
Outcome special_functions(const Context&) {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> ut(0.1, 50.0);
  std::uniform_int_distribution<int> un(0, 60);
  double wr = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const double t = ut(rng);
    const int n = un(rng);
    const auto tab = specfun::sph_bessel_real(n, t);
    const ScaledComplex w = tab.j[n] * tab.yp[n] - tab.jp[n] * tab.y[n];
    wr = std::max(wr, std::abs(w.to_complex() * (t * t) - 1.0));
  }

  std::uniform_real_distribution<double> ux(0.1, 100.0), uy(-500.0, 500.0);
  double rec = 0.0;
  for (int s = 0; s < 200; ++s) {
    const cdouble z(ux(rng), uy(rng));
    const auto tab = specfun::sph_bessel_complex(60, z);
    for (double r : specfun::recurrence_residuals(tab)) rec = std::max(rec, r);
  }

  std::uniform_real_distribution<double> ur(0.2, 10.0), ua(-kPi, kPi);
  std::uniform_int_distribution<int> us(0, 25);
  double ser = 0.0;
  for (int s = 0; s < 200; ++s) {
    cdouble z = std::polar(ur(rng), ua(rng));
    if (std::abs(z.imag()) < 0.1) z += cdouble(0.0, 0.1);
    const int n = us(rng);
    const auto tab = specfun::sph_bessel_complex(n, z);
    const auto D = specfun::log_derivative_j(n, z);
    const cdouble jr = reference::to_cd(reference::series_j(n, z));
    const cdouble jpr = reference::to_cd(reference::series_jp(n, z));
    ser = std::max(ser, std::abs(tab.j[n].to_complex() / jr - 1.0));
    ser = std::max(ser, std::abs(D[n] / (jpr / jr) - 1.0));
  }
  const bool ok = wr <= 1e-9 && rec <= 1e-10 && ser <= 1e-9;
  return make(5, "", ok, fmt("wronskian=%.3e recurrence=%.3e series=%.3e", wr, rec, ser));
}

double sup_rel(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
  double diff = 0.0, sup = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    sup = std::max(sup, std::abs(b[i]));
  }
  return diff / sup;
}

// 6. Kirchhoff consistency
Outcome kirchhoff(const Context& ctx) {
  const auto mu = chebyshev_mu_grid(101);
  const double R1 = ctx.base.R1;
  const PartialWaveSolution sol = solve_penetrable(with_eps(ctx, 1e-3), ctx.tol);
  double worst_series = 0.0, worst_r = 0.0;
  for (ScattererKind kind : {ScattererKind::hard, ScattererKind::penetrable}) {
    const auto series = far_field(sol, kind, mu).values;
    auto at = [&](double R) {
      return far_field_from_boundary(sol, kind, R, default_quad_orders(sol, R), mu).values;
    };
    const auto k2 = at(2.0 * R1);
    worst_series = std::max(worst_series, sup_rel(k2, series));
    worst_r = std::max(worst_r, sup_rel(at(1.5 * R1), at(3.0 * R1)));
  }
  return make(6, "", worst_series <= 1e-8 && worst_r <= 1e-8,
              fmt("series vs boundary (R=2R1)=%.3e  R=1.5R1 vs 3R1=%.3e", worst_series, worst_r));
}

// 7. physical consistency
Outcome physical(const Context& ctx) {
  const auto mu = chebyshev_mu_grid(kSupGridPoints);
  const PartialWaveSolution ref = solve_penetrable(with_eps(ctx, 1e-2), ctx.tol);
  const CrossSections hard = cross_sections(far_field(ref, ScattererKind::hard, mu), ctx.base.k);
  const double hard_gap = std::abs(hard.extinction - hard.scattering) / hard.scattering;

  std::mt19937_64 rng(7);
  std::vector<Vec3> dirs(50);
  for (auto& d : dirs) d = random_unit(rng);
  double bc = 0.0;
  for (const auto& tr : boundary_traces(ref, dirs, ScattererKind::hard)) bc = std::max(bc, std::abs(tr.outer_flux));

  bool positive = true, decreasing = true;
  double prev = INFINITY, last_ratio = 0.0;
  std::string sweep_txt;
  for (double eps : geometric_grid(1e-2, 0.1, 5)) {
    const PartialWaveSolution sol = solve_penetrable(with_eps(ctx, eps), ctx.tol);
    const CrossSections cs = cross_sections(far_field(sol, ScattererKind::penetrable, mu), ctx.base.k);
    positive = positive && cs.absorption > 0.0;
    decreasing = decreasing && cs.absorption < prev;
    prev = cs.absorption;
    last_ratio = cs.absorption / cs.scattering;
    sweep_txt += fmt(" %.0e:%.3e", eps, last_ratio);
  }
  const bool ok = hard_gap <= 1e-10 && bc <= 1e-9 * ctx.base.k && positive && decreasing && last_ratio < 1e-3;
  return make(7, "", ok,
              fmt("hard |ext-sca|/sca=%.3e  bc residual=%.3e  abs>0:%s decreasing:%s  abs/sca at eps=1e-6: %.4e "
                  "(need <1e-3)  [eps:abs/sca%s]",
                  hard_gap, bc, positive ? "yes" : "no", decreasing ? "yes" : "no", last_ratio, sweep_txt.c_str()));
}

// 8. transmission residuals
Outcome transmission(const Context& ctx) {
  std::mt19937_64 rng(8);
  std::vector<Vec3> dirs(50);
  for (auto& d : dirs) d = random_unit(rng);
  double dir = 0.0, neu = 0.0;
  for (double eps : {1e-2, 1e-4}) {
    const PartialWaveSolution sol = solve_penetrable(with_eps(ctx, eps), ctx.tol);
    for (const auto& tr : boundary_traces(sol, dirs, ScattererKind::penetrable)) {
      dir = std::max(dir, std::abs(tr.inner_value - tr.outer_value));
      neu = std::max(neu, std::abs(tr.inner_flux - tr.outer_flux));
    }
  }
  return make(8, "", dir <= 1e-8 && neu <= 1e-8 * ctx.base.k,
              fmt("dirichlet=%.3e  scaled neumann=%.3e", dir, neu));
}

// 9. reduced vs explicit spherical-harmonic sums
Outcome reduced_vs_full(const Context& ctx) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ur(0.05, 0.95);
  double far = 0.0, trace = 0.0, inner = 0.0;
  for (int s = 0; s < 20; ++s) {
    MediumConfig cfg = with_eps(ctx, 1e-1);
    cfg.d = random_unit(rng);
    const Vec3 xhat = random_unit(rng);
    const PartialWaveSolution sol = solve_penetrable(cfg, ctx.tol);
    const double k = cfg.k;

    const std::vector<double> mu{std::clamp(dot(cfg.d, xhat), -1.0, 1.0)};
    const cdouble collapsed = far_field(sol, ScattererKind::penetrable, mu).values[0];
    cdouble explicit_far = 0.0;
    double explicit_trace = 0.0;
    const Vec3 x = scaled(xhat, ur(rng) * cfg.R1);
    const auto ratio = specfun::bessel_ratios_scaled(sol.n_max, cfg.z1(), norm(x) / cfg.R1);
    cdouble explicit_inner = 0.0;
    for (int n = 0; n <= sol.n_max; ++n) {
      const double w = 1.0 / std::sqrt(1.0 + n * (n + 1.0) / (cfg.R1 * cfg.R1));
      for (int m = -n; m <= n; ++m) {
        const cdouble yd = std::conj(reference::sph_harmonic(n, m, cfg.d));
        const cdouble yx = reference::sph_harmonic(n, m, xhat);
        const cdouble f = i_pow(n) * 4.0 * kPi * yd;
        explicit_far += f * sol.A[n] * yx / i_pow(n + 1);
        explicit_trace += w * std::norm(f * sol.Btilde[n] * sol.Dz1[n] * cfg.R1);
        explicit_inner += f * sol.Btilde[n] * ratio[n].to_complex() * yx;
      }
    }
    explicit_far /= k;
    explicit_trace = cfg.eps * std::abs(k * cfg.sqrt_q0()) * std::sqrt(explicit_trace);
    const std::vector<Vec3> pts{x};
    const cdouble collapsed_inner = interior_field(sol, pts).front().value;
    far = std::max(far, std::abs(collapsed - explicit_far) / std::abs(explicit_far));
    trace = std::max(trace, std::abs(trace_norm_boundary(sol) / explicit_trace - 1.0));
    inner = std::max(inner, std::abs(collapsed_inner - explicit_inner) / std::abs(explicit_inner));
  }
  return make(9, "", far <= 1e-8 && trace <= 1e-8 && inner <= 1e-8,
              fmt("far field=%.3e  trace norm=%.3e  interior=%.3e", far, trace, inner));
}

}  // namespace

Context default_context() {
  Context ctx;
  ctx.base.k = 1.0;
  ctx.base.R1 = 1.0;
  ctx.base.eta0 = 1.0;
  ctx.base.tau0 = 1.0;
  ctx.base.eps = 1e-3;
  ctx.base.d = {0.0, 0.0, 1.0};
  return ctx;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "far-field rate sup|A_eps - A| ~ C_A eps^1/2", farfield_rate},
      {2, "trace rate ||du+/dnu||_{H^-1/2} ~ C_nu eps^1/2", trace_rate},
      {3, "interior exponential decay at |x0| = R1/2", interior_decay},
      {4, "null scatterer (eps = 1, q0 = 1)", null_scatterer},
      {5, "special functions (Wronskian, recurrence, series)", special_functions},
      {6, "Kirchhoff boundary-integral far field", kirchhoff},
      {7, "cross sections and hard boundary condition", physical},
      {8, "transmission residuals on |x| = R1", transmission},
      {9, "collapsed Legendre sums vs explicit Y_n^m sums", reduced_vs_full},
  };
  return list;
}

Outcome run_criterion(const Criterion& c, const Context& ctx) {
  Outcome o;
  try {
    o = c.run(ctx);
  } catch (const ConfigError& e) {
    o.status = Status::skipped_fail;
    o.detail = std::string("precondition refused: ") + e.what();
  } catch (const std::exception& e) {
    o.status = Status::fail;
    o.detail = std::string("error: ") + e.what();
  }
  o.id = c.id;
  o.title = c.title;
  return o;
}

std::string status_label(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::skipped_fail: return "SKIPPED-FAIL";
  }
  return "FAIL";
}

}  // namespace hdsphere::validation
