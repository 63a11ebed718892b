#include "hdsphere/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hdsphere/error.hpp"
#include "hdsphere/quadrature.hpp"
#include "hdsphere/specfun.hpp"

namespace hdsphere {
namespace {

constexpr cdouble kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

cdouble i_pow(int n) {
  switch (n % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// sum_n w_n P_n(mu)
cdouble legendre_sum(const std::vector<cdouble>& w, double mu) {
  const auto p = specfun::legendre_p(static_cast<int>(w.size()) - 1, mu);
  cdouble s = 0.0;
  for (std::size_t n = 0; n < w.size(); ++n) s += w[n] * p[n];
  return s;
}

// (2n+1) X_n, the far-field series weights before the -i/k prefactor
std::vector<cdouble> far_weights(const std::vector<cdouble>& X) {
  std::vector<cdouble> w(X.size());
  for (std::size_t n = 0; n < X.size(); ++n) w[n] = (2.0 * n + 1.0) * X[n];
  return w;
}

const std::vector<cdouble>& scattered_coefficients(const PartialWaveSolution& sol, ScattererKind kind) {
  return kind == ScattererKind::penetrable ? sol.A : sol.C;
}

double clamp_mu(double mu) { return std::clamp(mu, -1.0, 1.0); }

}  // namespace

cdouble FarFieldPattern::forward() const {
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] == 1.0) return values[i];
  }
  throw ConfigError("far-field pattern has no forward direction mu = 1");
}

std::vector<double> chebyshev_mu_grid(int count) {
  if (count < 2) throw ConfigError("chebyshev_mu_grid: need at least 2 points");
  std::vector<double> mu(count);
  for (int i = 0; i < count; ++i) mu[i] = -std::cos(kPi * i / (count - 1));
  mu.front() = -1.0;
  mu.back() = 1.0;
  return mu;
}

FarFieldPattern far_field(const PartialWaveSolution& sol, ScattererKind kind, std::span<const double> mu_grid) {
  FarFieldPattern pat;
  pat.kind = kind;
  pat.k = sol.config.k;
  pat.eps = kind == ScattererKind::penetrable ? sol.config.eps : 0.0;
  pat.coefficients = scattered_coefficients(sol, kind);
  const auto w = far_weights(pat.coefficients);
  const cdouble pref = -kI / sol.config.k;
  pat.mu.assign(mu_grid.begin(), mu_grid.end());
  pat.values.reserve(mu_grid.size());
  for (double mu : mu_grid) pat.values.push_back(pref * legendre_sum(w, mu));
  return pat;
}

double far_field_sup_diff(const PartialWaveSolution& sol, int grid_points) {
  std::vector<cdouble> diff(sol.A.size());
  for (std::size_t n = 0; n < diff.size(); ++n) diff[n] = (2.0 * n + 1.0) * (sol.A[n] - sol.C[n]);
  double sup = 0.0;
  for (double mu : chebyshev_mu_grid(grid_points)) {
    sup = std::max(sup, std::abs(legendre_sum(diff, mu)));
  }
  return sup / sol.config.k;
}

cdouble incident_field(const MediumConfig& cfg, const Vec3& x) {
  return std::exp(kI * cfg.k * dot(x, cfg.d));
}

cdouble incident_radial_derivative(const MediumConfig& cfg, const Vec3& x) {
  const double r = norm(x);
  if (r == 0.0) return 0.0;
  return kI * cfg.k * (dot(x, cfg.d) / r) * incident_field(cfg, x);
}

std::vector<FieldSample> interior_field(const PartialWaveSolution& sol, std::span<const Vec3> points) {
  const MediumConfig& cfg = sol.config;
  const cdouble z1 = cfg.z1();
  std::vector<FieldSample> out;
  out.reserve(points.size());
  for (const Vec3& x : points) {
    const double r = norm(x);
    if (!(r < cfg.R1)) {
      throw ConfigError("interior_field: point with |x| = " + std::to_string(r) + " is not inside R1");
    }
    const double mu = r > 0.0 ? clamp_mu(dot(x, cfg.d) / r) : 1.0;
    const auto ratio = specfun::bessel_ratios_scaled(sol.n_max, z1, r / cfg.R1);
    const auto p = specfun::legendre_p(sol.n_max, mu);
    ScaledComplex u;
    for (int n = 0; n <= sol.n_max; ++n) {
      const cdouble w = i_pow(n) * (2.0 * n + 1.0) * sol.Btilde[n] * p[n];
      u += ScaledComplex::from_complex(w) * ratio[n];
    }
    FieldSample s;
    s.point = x;
    s.region = Region::interior;
    s.value = u.to_complex();
    s.log_abs = u.logmag();
    out.push_back(s);
  }
  return out;
}

std::vector<FieldSample> exterior_scattered_field(const PartialWaveSolution& sol, std::span<const Vec3> points,
                                                  ScattererKind kind) {
  const MediumConfig& cfg = sol.config;
  const auto& X = scattered_coefficients(sol, kind);
  std::vector<FieldSample> out;
  out.reserve(points.size());
  for (const Vec3& x : points) {
    const double r = norm(x);
    if (!(r > cfg.R1)) {
      throw ConfigError("exterior_scattered_field: point with |x| = " + std::to_string(r) + " is not outside R1");
    }
    const auto tab = specfun::sph_bessel_real(sol.n_max, cfg.k * r);
    const auto p = specfun::legendre_p(sol.n_max, clamp_mu(dot(x, cfg.d) / r));
    ScaledComplex u, du;
    for (int n = 0; n <= sol.n_max; ++n) {
      const ScaledComplex w = ScaledComplex::from_complex(i_pow(n) * (2.0 * n + 1.0) * X[n] * p[n]);
      u += w * tab.h[n];
      du += w * tab.hp[n];
    }
    FieldSample s;
    s.point = x;
    s.region = Region::exterior;
    s.value = u.to_complex();
    s.log_abs = u.logmag();
    s.radial_derivative = cfg.k * du.to_complex();
    out.push_back(s);
  }
  return out;
}

std::vector<SurfaceTrace> boundary_traces(const PartialWaveSolution& sol, std::span<const Vec3> unit_directions,
                                          ScattererKind kind) {
  const MediumConfig& cfg = sol.config;
  const auto& X = scattered_coefficients(sol, kind);
  const auto tab = specfun::sph_bessel_real(sol.n_max, cfg.size_parameter());
  std::vector<SurfaceTrace> out;
  out.reserve(unit_directions.size());
  for (const Vec3& u : unit_directions) {
    const double len = norm(u);
    const Vec3 x = scaled(u, cfg.R1 / len);
    const auto p = specfun::legendre_p(sol.n_max, clamp_mu(dot(u, cfg.d) / len));
    ScaledComplex us, dus;
    cdouble inner = 0.0, inner_flux = 0.0;
    for (int n = 0; n <= sol.n_max; ++n) {
      const cdouble base = i_pow(n) * (2.0 * n + 1.0) * p[n];
      const ScaledComplex w = ScaledComplex::from_complex(base * X[n]);
      us += w * tab.h[n];
      dus += w * tab.hp[n];
      if (kind == ScattererKind::penetrable) {
        inner += base * sol.Btilde[n];
        inner_flux += base * sol.T[n] * sol.Btilde[n];
      }
    }
    SurfaceTrace tr;
    tr.inner_value = inner;
    tr.inner_flux = cfg.k * inner_flux;
    tr.outer_value = incident_field(cfg, x) + us.to_complex();
    tr.outer_flux = incident_radial_derivative(cfg, x) + cfg.k * dus.to_complex();
    out.push_back(tr);
  }
  return out;
}

double trace_norm_boundary(const PartialWaveSolution& sol) {
  const MediumConfig& cfg = sol.config;
  const double R1 = cfg.R1;
  double sum = 0.0;
  for (int n = 0; n <= sol.n_max; ++n) {
    const double weight = 1.0 / std::sqrt(1.0 + n * (n + 1.0) / (R1 * R1));
    const double mag = std::abs(sol.Btilde[n] * sol.Dz1[n] * R1);
    sum += weight * 4.0 * kPi * (2.0 * n + 1.0) * mag * mag;
  }
  return cfg.eps * std::abs(cfg.k * cfg.sqrt_q0()) * std::sqrt(sum);
}

CrossSections cross_sections(const FarFieldPattern& pattern, double k) {
  if (pattern.coefficients.empty()) {
    throw ConfigError("cross_sections: pattern carries no partial-wave coefficients");
  }
  CrossSections cs;
  double parseval = 0.0;
  for (std::size_t n = 0; n < pattern.coefficients.size(); ++n) {
    parseval += (2.0 * n + 1.0) * std::norm(pattern.coefficients[n]);
  }
  cs.scattering = 4.0 * kPi / (k * k) * parseval;
  cs.extinction = 4.0 * kPi / k * pattern.forward().imag();
  cs.absorption = cs.extinction - cs.scattering;
  return cs;
}

QuadOrders default_quad_orders(const PartialWaveSolution& sol, double R) {
  const int band = static_cast<int>(std::ceil(sol.config.k * R));
  return {sol.n_max + band + 8, 2 * (sol.n_max + band) + 8};
}

namespace {

std::vector<cdouble> kirchhoff(const PartialWaveSolution& sol, ScattererKind kind, double R, QuadOrders orders,
                               std::span<const double> mu_grid) {
  const MediumConfig& cfg = sol.config;
  const double k = cfg.k;
  const auto& X = scattered_coefficients(sol, kind);
  const auto tab = specfun::sph_bessel_real(sol.n_max, k * R);
  const GaussRule rule = gauss_legendre(orders.polar);

  // u^s and du^s/dr on the sphere depend only on the polar node
  std::vector<cdouble> us(orders.polar), dus(orders.polar);
  for (int q = 0; q < orders.polar; ++q) {
    const auto p = specfun::legendre_p(sol.n_max, rule.nodes[q]);
    ScaledComplex a, b;
    for (int n = 0; n <= sol.n_max; ++n) {
      const ScaledComplex w = ScaledComplex::from_complex(i_pow(n) * (2.0 * n + 1.0) * X[n] * p[n]);
      a += w * tab.h[n];
      b += w * tab.hp[n];
    }
    us[q] = a.to_complex();
    dus[q] = k * b.to_complex();
  }

  std::vector<double> cos_phi(orders.azimuth);
  for (int m = 0; m < orders.azimuth; ++m) cos_phi[m] = std::cos(2.0 * kPi * m / orders.azimuth);
  const double dphi = 2.0 * kPi / orders.azimuth;

  std::vector<cdouble> out;
  out.reserve(mu_grid.size());
  for (double mu : mu_grid) {
    mu = clamp_mu(mu);
    const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    cdouble acc = 0.0;
    for (int q = 0; q < orders.polar; ++q) {
      const double c = rule.nodes[q];
      const double sq = std::sqrt(std::max(0.0, 1.0 - c * c));
      cdouble ring = 0.0;
      for (int m = 0; m < orders.azimuth; ++m) {
        const double xy = mu * c + s * sq * cos_phi[m];  // x_hat . y_hat
        const cdouble kernel = std::exp(-kI * k * R * xy);
        ring += (us[q] * (-kI * k * xy) - dus[q]) * kernel;
      }
      acc += rule.weights[q] * dphi * ring;
    }
    out.push_back(acc * R * R / (4.0 * kPi));
  }
  return out;
}

}  // namespace

FarFieldPattern far_field_from_boundary(const PartialWaveSolution& sol, ScattererKind kind, double R,
                                        QuadOrders orders, std::span<const double> mu_grid) {
  if (!(R > sol.config.R1)) throw ConfigError("far_field_from_boundary: need R > R1");
  if (orders.polar < sol.n_max + 1 || orders.azimuth < 2 * sol.n_max + 2) {
    throw ConfigError("far_field_from_boundary: quadrature orders below (n_max+1, 2n_max+2)");
  }
  const auto coarse = kirchhoff(sol, kind, R, orders, mu_grid);
  const auto fine = kirchhoff(sol, kind, R, {orders.polar + 1, orders.azimuth + 2}, mu_grid);
  double sup = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    sup = std::max(sup, std::abs(fine[i]));
    diff = std::max(diff, std::abs(fine[i] - coarse[i]));
  }
  if (diff > 1e-6 * sup) {
    throw NumericError("far_field_from_boundary: quadrature under-resolved (relative change " +
                       std::to_string(diff / sup) + ")");
  }
  FarFieldPattern pat;
  pat.kind = kind;
  pat.k = sol.config.k;
  pat.eps = kind == ScattererKind::penetrable ? sol.config.eps : 0.0;
  pat.mu.assign(mu_grid.begin(), mu_grid.end());
  pat.values = fine;
  return pat;
}

}  // namespace hdsphere
