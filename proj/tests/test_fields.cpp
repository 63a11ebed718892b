#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hdsphere/convergence.hpp"
#include "hdsphere/error.hpp"
#include "hdsphere/fields.hpp"
#include "hdsphere/quadrature.hpp"
#include "hdsphere/specfun.hpp"
#include "reference.hpp"
#include "support.hpp"

using namespace hdsphere;
namespace ref = hdsphere::reference;
using ldcomplex = std::complex<long double>;

namespace {

constexpr double kPi = std::numbers::pi;
const cdouble I(0.0, 1.0);

MediumConfig lossy(double eps) {
  MediumConfig c;
  c.eps = eps;
  return c;
}

PartialWaveSolution solve(double eps) { return solve_penetrable(lossy(eps), 1e-12); }

PartialWaveSolution null_solution() {
  return solve_penetrable(MediumConfig::homogeneous(1.0, 1.0), 1e-12, MediumConfig::Loss::optional);
}

// Explicit sum over (n, m) of i^n 4 pi conj(Y_n^m(d)) coef_n radial_n Y_n^m(xhat).
template <class Radial>
cdouble explicit_msum(int n_max, const Vec3& d, const Vec3& xhat, Radial radial) {
  cdouble s = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const cdouble rn = radial(n);
    for (int m = -n; m <= n; ++m) {
      s += std::pow(I, n) * 4.0 * kPi * std::conj(ref::sph_harmonic(n, m, d)) * rn * ref::sph_harmonic(n, m, xhat);
    }
  }
  return s;
}

}  // namespace

TEST_SUITE("fields") {
  TEST_CASE("Chebyshev grid") {
    const auto g = chebyshev_mu_grid(17);
    REQUIRE(g.size() == 17);
    CHECK(g.front() == -1.0);
    CHECK(g.back() == 1.0);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  }

  TEST_CASE("null scatterer produces no scattered field") {
    const auto sol = null_solution();
    const auto mu = chebyshev_mu_grid(101);
    for (const auto& v : far_field(sol, ScattererKind::penetrable, mu).values) CHECK(std::abs(v) <= 1e-12);
    std::mt19937_64 rng(3);
    std::vector<Vec3> pts;
    for (int i = 0; i < 10; ++i) pts.push_back(scaled(testing::random_unit(rng), 1.5 + 0.2 * i));
    for (const auto& s : exterior_scattered_field(sol, pts, ScattererKind::penetrable)) {
      CHECK(std::abs(s.value) <= 1e-12);
    }
    const auto kf = far_field_from_boundary(sol, ScattererKind::penetrable, 2.0, default_quad_orders(sol, 2.0), mu);
    for (const auto& v : kf.values) CHECK(std::abs(v) <= 1e-12);
  }

  TEST_CASE("hard-sphere forward amplitude") {
    const auto sol = solve(1e-2);
    const std::vector<double> one{1.0};
    cdouble series = 0.0;
    for (int n = 0; n <= sol.n_max; ++n) series += (2.0 * n + 1.0) * sol.C[n];
    series *= -I / sol.config.k;
    const cdouble fwd = far_field(sol, ScattererKind::hard, one).forward();
    CHECK(testing::rel_err(fwd, series) < 1e-14);

    // explicit (n, m) sum at x = d for random incidence directions
    std::mt19937_64 rng(10);
    for (int s = 0; s < 10; ++s) {
      const Vec3 d = testing::random_unit(rng);
      const cdouble full = explicit_msum(sol.n_max, d, d, [&](int n) { return sol.C[n] / std::pow(I, n + 1); });
      CHECK(testing::rel_err(full / sol.config.k, fwd) < 1e-10);
    }
  }

  TEST_CASE("forward() needs mu = 1 on the grid") {
    const auto sol = solve(1e-2);
    const std::vector<double> mu{-1.0, 0.0, 0.5};
    CHECK_THROWS_AS(far_field(sol, ScattererKind::hard, mu).forward(), ConfigError);
  }

  TEST_CASE("far-field difference scales like sqrt(eps)") {
    const double r = far_field_sup_diff(solve(1e-4)) / far_field_sup_diff(solve(1e-6));
    CHECK(std::abs(r / 10.0 - 1.0) < 0.15);
  }

  TEST_CASE("grid sup is converged against a ten times finer grid") {
    for (double eps : {1e-2, 1e-5}) {
      const auto sol = solve(eps);
      const double coarse = far_field_sup_diff(sol);
      const double fine = far_field_sup_diff(sol, 10 * (kSupGridPoints - 1) + 1);
      CHECK(std::abs(coarse / fine - 1.0) < 1e-6);
    }
  }

  TEST_CASE("interior field at the centre is the n = 0 term") {
    const auto sol = solve(1e-2);
    const std::vector<Vec3> origin{Vec3{0.0, 0.0, 0.0}};
    const cdouble u = interior_field(sol, origin).front().value;
    const cdouble j0 = std::sin(sol.config.z1()) / sol.config.z1();
    CHECK(testing::rel_err(u, sol.Btilde[0] / j0) < 1e-13);
  }

  TEST_CASE("interior field against the unreduced series") {
    const MediumConfig cfg = lossy(1e-1);
    const auto sol = solve_penetrable(cfg, 1e-12);
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> ur(0.05, 0.95);
    std::vector<Vec3> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(scaled(testing::random_unit(rng), ur(rng)));
    const auto samples = interior_field(sol, pts);
    const ldcomplex sq = std::sqrt(ldcomplex(cfg.eta0, cfg.tau0)) / std::sqrt(static_cast<long double>(cfg.eps));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double r = norm(pts[i]);
      const Vec3 xhat = scaled(pts[i], 1.0 / r);
      const cdouble full = explicit_msum(sol.n_max, cfg.d, xhat, [&](int n) {
        const auto direct = ref::unreduced_order(cfg, n);
        return ref::to_cd(direct.b * ref::series_j(n, static_cast<long double>(cfg.k * r) * sq));
      });
      CHECK(testing::rel_err(samples[i].value, full) < 1e-8);
      CHECK(samples[i].region == Region::interior);
    }
  }

  TEST_CASE("interior field obeys a fixed-constant exponential bound") {
    const double b = sqrt_contrast(1.0, 1.0).b;
    const std::vector<Vec3> x0{Vec3{0.0, 0.0, 0.5}};
    double lo = INFINITY, hi = 0.0;
    for (double eps : {1e-2, 1e-3, 1e-4, 1e-5}) {
      const double log_u = interior_field(solve(eps), x0).front().log_abs;
      const double m = std::exp(log_u + b * 0.5 / std::sqrt(eps));
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
    CHECK(hi / lo < 2.0);
  }

  TEST_CASE("interior field rejects points outside") {
    const auto sol = solve(1e-2);
    const std::vector<Vec3> bad{Vec3{0.0, 1.0, 0.0}};
    CHECK_THROWS_AS(interior_field(sol, bad), ConfigError);
    const std::vector<Vec3> inside{Vec3{0.0, 0.5, 0.0}};
    CHECK_THROWS_AS(exterior_scattered_field(sol, inside, ScattererKind::hard), ConfigError);
  }

  TEST_CASE("exterior field against the unreduced series") {
    const MediumConfig cfg = lossy(1e-2);
    const auto sol = solve_penetrable(cfg, 1e-12);
    std::mt19937_64 rng(22);
    std::vector<Vec3> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(scaled(testing::random_unit(rng), 2.0));
    const auto samples = exterior_scattered_field(sol, pts, ScattererKind::penetrable);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const cdouble full = explicit_msum(sol.n_max, cfg.d, scaled(pts[i], 0.5), [&](int n) {
        return ref::to_cd(ref::unreduced_order(cfg, n).a) * ref::real_bessel(n, 2.0 * cfg.k).h();
      });
      CHECK(testing::rel_err(samples[i].value, full) < 1e-9);
    }
  }

  TEST_CASE("sound-hard normal velocity vanishes on the surface") {
    const auto sol = solve(1e-2);
    std::mt19937_64 rng(23);
    std::vector<Vec3> dirs;
    for (int i = 0; i < 50; ++i) dirs.push_back(testing::random_unit(rng));
    for (const auto& t : boundary_traces(sol, dirs, ScattererKind::hard)) CHECK(std::abs(t.outer_flux) <= 1e-10);
  }

  TEST_CASE("incident radial derivative matches a central difference") {
    const MediumConfig cfg = lossy(1e-2);
    const Vec3 x{0.3, -0.7, 1.1};
    const double r = norm(x), h = 1e-5;
    const cdouble fd = (incident_field(cfg, scaled(x, (r + h) / r)) - incident_field(cfg, scaled(x, (r - h) / r))) /
                       (2.0 * h);
    CHECK(std::abs(incident_radial_derivative(cfg, x) - fd) < 1e-9);
  }

  TEST_CASE("trace norm of the matched medium is that of the plane wave") {
    const auto sol = null_solution();
    double sum = 0.0;
    for (int n = 0; n <= 40; ++n) {
      const double w = 1.0 / std::sqrt(1.0 + n * (n + 1.0));
      const double jp = ref::real_bessel(n, 1.0).jp;
      sum += w * 4.0 * kPi * (2.0 * n + 1.0) * jp * jp;
    }
    CHECK(testing::rel_err(trace_norm_boundary(sol), std::sqrt(sum)) < 1e-12);
  }

  TEST_CASE("trace norm shrinks tenfold over two decades of eps") {
    const double r = trace_norm_boundary(solve(1e-4)) / trace_norm_boundary(solve(1e-6));
    CHECK(std::abs(r / 10.0 - 1.0) < 0.15);
  }

  TEST_CASE("trace norm collapse against the explicit m-sum") {
    std::mt19937_64 rng(24);
    for (double eps : {1e-1, 1e-3}) {
      MediumConfig cfg = lossy(eps);
      cfg.d = testing::random_unit(rng);
      const auto sol = solve_penetrable(cfg, 1e-12);
      double sum = 0.0;
      for (int n = 0; n <= sol.n_max; ++n) {
        const double w = 1.0 / std::sqrt(1.0 + n * (n + 1.0));
        for (int m = -n; m <= n; ++m) {
          const cdouble c = std::pow(I, n) * 4.0 * kPi * std::conj(ref::sph_harmonic(n, m, cfg.d)) * sol.Btilde[n] *
                            sol.Dz1[n];
          sum += w * std::norm(c);
        }
      }
      const double full = cfg.eps * std::abs(cfg.k * cfg.sqrt_q0()) * std::sqrt(sum);
      CHECK(testing::rel_err(trace_norm_boundary(sol), full) < 1e-10);
    }
  }

  TEST_CASE("transmission conditions hold on the surface") {
    std::mt19937_64 rng(25);
    std::vector<Vec3> dirs;
    for (int i = 0; i < 50; ++i) dirs.push_back(testing::random_unit(rng));
    for (double eps : {1e-2, 1e-4}) {
      for (const auto& t : boundary_traces(solve(eps), dirs, ScattererKind::penetrable)) {
        CHECK(std::abs(t.inner_value - t.outer_value) <= 1e-8);
        CHECK(std::abs(t.inner_flux - t.outer_flux) <= 1e-8);
      }
    }
  }

  TEST_CASE("cross sections") {
    const auto mu = chebyshev_mu_grid(201);
    const auto sol = solve(1e-2);
    const CrossSections hard = cross_sections(far_field(sol, ScattererKind::hard, mu), 1.0);
    CHECK(std::abs(hard.absorption) <= 1e-10 * hard.scattering);

    // sigma_scat = 2 pi int |A(mu)|^2 dmu, by quadrature rather than Parseval
    const auto rule = gauss_legendre(60);
    const auto pat = far_field(sol, ScattererKind::hard, rule.nodes);
    double direct = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) direct += rule.weights[i] * std::norm(pat.values[i]);
    CHECK(testing::rel_err(hard.scattering, 2.0 * kPi * direct) < 1e-12);

    double prev = INFINITY;
    for (double eps : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
      const CrossSections cs = cross_sections(far_field(solve(eps), ScattererKind::penetrable, mu), 1.0);
      CHECK(cs.absorption > 0.0);
      CHECK(cs.absorption < prev);
      prev = cs.absorption;
    }
  }

  TEST_CASE("Kirchhoff extraction matches the series far field") {
    const auto mu = chebyshev_mu_grid(61);
    for (double eps : {1e-2, 1e-3}) {
      const auto sol = solve(eps);
      for (ScattererKind kind : {ScattererKind::hard, ScattererKind::penetrable}) {
        const auto series = far_field(sol, kind, mu).values;
        const auto kf = far_field_from_boundary(sol, kind, 2.0, default_quad_orders(sol, 2.0), mu).values;
        double diff = 0.0, sup = 0.0;
        for (std::size_t i = 0; i < mu.size(); ++i) {
          diff = std::max(diff, std::abs(kf[i] - series[i]));
          sup = std::max(sup, std::abs(series[i]));
        }
        CHECK(diff / sup <= 1e-8);
      }
    }
  }

  TEST_CASE("Kirchhoff extraction detects an under-resolved rule") {
    const auto sol = solve(1e-2);
    const auto mu = chebyshev_mu_grid(11);
    CHECK_THROWS_AS(far_field_from_boundary(sol, ScattererKind::hard, 2.0, QuadOrders{2, 3}, mu), ConfigError);
    // the bare minimum orders cannot resolve e^{-ik x.y} once kR exceeds n_max
    const QuadOrders minimal{sol.n_max + 1, 2 * sol.n_max + 2};
    CHECK_THROWS_AS(far_field_from_boundary(sol, ScattererKind::hard, 40.0, minimal, mu), NumericError);
    CHECK_THROWS_AS(far_field_from_boundary(sol, ScattererKind::hard, 0.5, default_quad_orders(sol, 2.0), mu),
                    ConfigError);
  }
}
