#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hdsphere/convergence.hpp"
#include "hdsphere/error.hpp"
#include "reference.hpp"
#include "support.hpp"

using namespace hdsphere;
namespace ref = hdsphere::reference;

namespace {

constexpr double kPi = std::numbers::pi;

MediumConfig base() { return MediumConfig{}; }

SweepTable synthetic(const std::vector<double>& eps, double (*f)(double), Metric metric) {
  SweepTable t;
  t.eps = eps;
  t.metric = metric;
  t.config = base();
  t.x0 = {0.0, 0.0, 0.5};
  for (double e : eps) {
    t.values.push_back(f(e));
    t.log_values.push_back(std::log(f(e)));
  }
  return t;
}

// l0 in long double: y_n by upward recurrence, j_n from the series.
long double l0_oracle(int terms) {
  const long double t = 1.0L;
  std::vector<long double> y(terms + 2), j(terms + 2);
  y[0] = -std::cos(t) / t;
  y[1] = -std::cos(t) / (t * t) - std::sin(t) / t;
  for (int n = 1; n <= terms; ++n) y[n + 1] = (2.0L * n + 1.0L) / t * y[n] - y[n - 1];
  for (int n = 0; n <= terms + 1; ++n) j[n] = ref::series_j(n, t).real();
  long double sum = 0.0L;
  for (int n = 0; n < terms; ++n) {
    const long double jp = n / t * j[n] - j[n + 1];
    const long double yp = n / t * y[n] - y[n + 1];
    const long double w = 1.0L / std::sqrt(1.0L + n * (n + 1.0L));
    sum += w * 4.0L * static_cast<long double>(kPi) * (2.0L * n + 1.0L) / (jp * jp + yp * yp);
  }
  return sum;
}

}  // namespace

TEST_SUITE("convergence") {
  TEST_CASE("geometric grid") {
    const auto g = geometric_grid(1e-1, 0.25, 10);
    REQUIRE(g.size() == 10);
    CHECK(g[0] == 1e-1);
    CHECK(g[9] == doctest::Approx(1e-1 * std::pow(0.25, 9)).epsilon(1e-14));
  }

  TEST_CASE("metric names round trip") {
    for (Metric m : {Metric::farfield_sup_diff, Metric::trace_norm, Metric::interior_abs}) {
      CHECK(parse_metric(metric_name(m)) == m);
    }
    CHECK(parse_metric("trace") == Metric::trace_norm);
    CHECK(!parse_metric("speed").has_value());
    CHECK(!is_power_metric(Metric::interior_abs));
  }

  TEST_CASE("power-law fit of an exact power law") {
    const auto t = synthetic(geometric_grid(1e-1, 0.25, 8), [](double e) { return 3.0 * std::sqrt(e); },
                             Metric::farfield_sup_diff);
    const RateFit f = fit_power_rate(t);
    CHECK(std::abs(f.slope - 0.5) < 1e-12);
    CHECK(std::abs(f.prefactor() - 3.0) < 1e-12);
    CHECK(std::abs(f.r_squared - 1.0) < 1e-12);
  }

  TEST_CASE("decay fit of an exact exponential") {
    const auto t = synthetic(geometric_grid(1e-1, 0.25, 6), [](double e) { return std::exp(-5.0 / std::sqrt(e)); },
                             Metric::interior_abs);
    CHECK(std::abs(fit_exponential_decay(t).slope_vs_inv_sqrt_eps + 5.0) < 1e-10);
  }

  TEST_CASE("fits refuse degenerate input") {
    const std::vector<double> two{1e-2, 1e-3}, vals{1.0, 2.0};
    CHECK_THROWS_AS(fit_power_rate(two, vals), ConfigError);
    const std::vector<double> three{1e-2, 1e-3, 1e-4}, bad{1.0, 0.0, 2.0};
    CHECK_THROWS_AS(fit_power_rate(three, bad), ConfigError);
    SweepTable empty;
    CHECK_THROWS_AS(fit_exponential_decay(empty), ConfigError);
  }

  TEST_CASE("sweep preconditions") {
    CHECK_THROWS_AS(sweep(base(), geometric_grid(1e-2, 0.25, 2), Metric::farfield_sup_diff), ConfigError);
    CHECK_THROWS_AS(sweep(base(), geometric_grid(1e-2, 0.75, 6), Metric::farfield_sup_diff), ConfigError);
    CHECK_THROWS_AS(sweep(base(), geometric_grid(1.0, 0.25, 6), Metric::farfield_sup_diff), ConfigError);
    std::vector<double> ragged = geometric_grid(1e-2, 0.25, 6);
    ragged[3] *= 1.1;
    CHECK_THROWS_AS(sweep(base(), ragged, Metric::farfield_sup_diff), ConfigError);
    SweepOptions outside;
    outside.x0 = Vec3{0.0, 0.0, 1.5};
    CHECK_THROWS_AS(sweep(base(), geometric_grid(1e-2, 0.25, 6), Metric::interior_abs, outside), ConfigError);
  }

  TEST_CASE("far-field and trace metrics decrease with eps") {
    const auto grid = geometric_grid(1e-1, 0.1, 6);
    for (Metric m : {Metric::farfield_sup_diff, Metric::trace_norm}) {
      const auto t = sweep(base(), grid, m);
      REQUIRE(t.values.size() == 6);
      for (std::size_t i = 0; i < 6; ++i) {
        CHECK(t.values[i] > 0.0);
        if (i) CHECK(t.values[i] < t.values[i - 1]);
      }
    }
  }

  TEST_CASE("interior metric at the centre decays faster than any power") {
    SweepOptions opt;
    opt.x0 = Vec3{0.0, 0.0, 0.0};
    const auto t = sweep(base(), geometric_grid(1e-1, 0.25, 8), Metric::interior_abs, opt);
    double prev_local = -INFINITY;
    for (std::size_t i = 1; i < t.eps.size(); ++i) {
      const double local = (t.log_values[i] - t.log_values[i - 1]) / std::log(t.eps[i] / t.eps[i - 1]);
      CHECK(local > prev_local);
      prev_local = local;
    }
    CHECK(prev_local > 10.0);
  }

  TEST_CASE("rows do not depend on the number of jobs") {
    const auto grid = geometric_grid(1e-2, 0.25, 7);
    SweepOptions one, many;
    many.jobs = 3;
    const auto a = sweep(base(), grid, Metric::trace_norm, one);
    const auto b = sweep(base(), grid, Metric::trace_norm, many);
    CHECK(a.log_values == b.log_values);
  }

  TEST_CASE("observed rates on the default scenario") {
    const auto grid = geometric_grid(1e-1, 0.25, 10);
    for (Metric m : {Metric::farfield_sup_diff, Metric::trace_norm}) {
      const RateFit f = fit_power_rate(sweep(base(), grid, m), 1e-3);
      CHECK(f.slope >= 0.45);
      CHECK(f.slope <= 0.55);
      CHECK(f.r_squared >= 0.999);
    }
    const DecayFit d = fit_exponential_decay(sweep(base(), geometric_grid(1e-2, 0.25, 6), Metric::interior_abs));
    CHECK(d.slope_vs_inv_sqrt_eps <= d.guaranteed_slope);
    CHECK(std::abs(d.slope_vs_inv_sqrt_eps / d.sharp_slope - 1.0) <= 0.10);
    CHECK(d.delta0 == doctest::Approx(0.5));
  }

  TEST_CASE("l0 against a 200-term long double sum") {
    CHECK(testing::rel_err(l0_constant(base()), static_cast<double>(l0_oracle(200))) < 1e-10);
  }

  TEST_CASE("l0 is the explicit m-sum at any incidence direction") {
    std::mt19937_64 rng(31);
    const double l0 = l0_constant(base());
    for (int s = 0; s < 5; ++s) {
      const Vec3 d = testing::random_unit(rng);
      MediumConfig cfg = base();
      cfg.d = d;
      CHECK(l0_constant(cfg) == l0);
      // sum_m |Y_n^m(d)|^2 replaces (2n+1)/4pi
      long double sum = 0.0L;
      for (int n = 0; n <= 40; ++n) {
        const auto r = ref::real_bessel(n, 1.0);
        const double hp2 = std::norm(r.hp());
        double ysum = 0.0;
        for (int m = -n; m <= n; ++m) ysum += std::norm(ref::sph_harmonic(n, m, d));
        sum += (1.0 / std::sqrt(1.0 + n * (n + 1.0))) * 16.0 * kPi * kPi * ysum / hp2;
      }
      CHECK(testing::rel_err(static_cast<double>(sum), l0) < 1e-12);
    }
  }

  TEST_CASE("trace prefactor is a stable multiple of the analytic C_nu") {
    const auto t = sweep(base(), geometric_grid(1e-3, 0.25, 6), Metric::trace_norm);
    const double c_nu = analytic_c_nu(base());
    double lo = INFINITY, hi = 0.0;
    for (std::size_t i = 0; i < t.eps.size(); ++i) {
      const double r = t.values[i] / std::sqrt(t.eps[i]) / c_nu;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    MESSAGE("trace prefactor / C_nu in [" << lo << ", " << hi << "]");
    CHECK(hi / lo - 1.0 <= 0.05);
  }

  TEST_CASE("far-field prefactor settles for small eps") {
    const auto grid = geometric_grid(1e-4, 0.1, 3);
    const auto study = amplitude_prefactor_study(base(), grid);
    REQUIRE(study.ratio.size() == 3);
    CHECK(std::abs(study.ratio[2] / study.ratio[1] - 1.0) < 0.05);
    CHECK(study.c_a_series > 0.0);
    MESSAGE("sup prefactor " << study.ratio.back() << " at mu=" << study.mu_at_sup << ", C_A series "
                             << study.c_a_series);
  }
}
