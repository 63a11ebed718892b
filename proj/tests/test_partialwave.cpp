#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hdsphere/error.hpp"
#include "hdsphere/partialwave.hpp"
#include "reference.hpp"
#include "support.hpp"

using namespace hdsphere;
namespace ref = hdsphere::reference;

namespace {

const cdouble I(0.0, 1.0);

MediumConfig medium(double k, double R1, double eta0, double tau0, double eps) {
  MediumConfig c;
  c.k = k;
  c.R1 = R1;
  c.eta0 = eta0;
  c.tau0 = tau0;
  c.eps = eps;
  return c;
}

}  // namespace

TEST_SUITE("partialwave") {
  TEST_CASE("principal square root of the contrast") {
    const auto s34 = sqrt_contrast(3.0, 4.0);
    CHECK(s34.a == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(s34.b == doctest::Approx(1.0).epsilon(1e-15));

    const auto s11 = sqrt_contrast(1.0, 1.0);
    CHECK(s11.a == doctest::Approx(std::sqrt((std::sqrt(2.0) + 1.0) / 2.0)).epsilon(1e-15));
    CHECK(s11.b == doctest::Approx(std::sqrt((std::sqrt(2.0) - 1.0) / 2.0)).epsilon(1e-15));

    const auto s = sqrt_contrast(2.0, 0.5);
    const std::complex<long double> sq(s.a, s.b);
    CHECK(std::abs(sq * sq - std::complex<long double>(2.0L, 0.5L)) < 1e-12L);

    CHECK_THROWS_AS(sqrt_contrast(1.0, 0.0), ConfigError);
    CHECK_THROWS_AS(sqrt_contrast(-1.0, 1.0), ConfigError);
  }

  TEST_CASE("T_n reduces to the bare log-derivative for a matched medium") {
    const auto T = t_factor(medium(1.0, 1.0, 1.0, 1e-8, 1.0), 0);
    CHECK(std::abs(T[0] - (1.0 / std::tan(1.0) - 1.0)) < 1e-7);
  }

  TEST_CASE("T_0 scales like sqrt(eps) |a + ib|") {
    const auto T = t_factor(medium(1.0, 1.0, 1.0, 1.0, 1e-6), 0);
    const double expect = 1e-3 * std::pow(2.0, 0.25);
    CHECK(std::abs(std::abs(T[0]) / expect - 1.0) < 0.05);
  }

  TEST_CASE("T_n against the 150-digit series") {
    const MediumConfig cfg = medium(2.0, 1.0, 1.0, 1.0, 1e-4);
    const auto T = t_factor(cfg, 20);
    const cdouble z1 = cfg.z1();
    for (int n = 0; n <= 20; ++n) {
      const auto mp = ref::series_mp(n, z1);
      const cdouble expect = cfg.eps * cfg.sqrt_q0() * mp.jp / mp.j;
      CHECK(testing::rel_err(T[n], expect) < 1e-9);
    }
  }

  TEST_CASE("null scatterer has vanishing A_n") {
    const auto sol = solve_penetrable(MediumConfig::homogeneous(1.0, 1.0), 1e-12, MediumConfig::Loss::optional);
    for (const auto& a : sol.A) CHECK(std::abs(a) <= 1e-13);
    // the interior field is the incident wave: Btilde_n = j_n(kR1)
    for (int n = 0; n <= 10; ++n) {
      CHECK(std::abs(sol.Btilde[n] - ref::real_bessel(n, 1.0).j) <= 1e-14);
    }
  }

  TEST_CASE("A_n approaches the sound-hard C_n") {
    for (auto [eta0, tau0] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.3}, std::pair{0.5, 4.0}}) {
      const auto sol = solve_penetrable(medium(1.0, 1.0, eta0, tau0, 1e-8), 1e-12);
      double worst = 0.0;
      for (int n = 0; n <= sol.n_max; ++n) worst = std::max(worst, std::abs(sol.A[n] - sol.C[n]));
      CHECK(worst <= 1e-3);
    }
  }

  TEST_CASE("A_n and Btilde_n against a direct 2x2 solve per order") {
    const MediumConfig cfg = medium(1.0, 1.0, 2.0, 1.0, 1e-2);
    const auto sol = solve_penetrable(cfg, 1e-12);
    for (int n = 0; n <= sol.n_max; ++n) {
      const auto direct = ref::unreduced_order(cfg, n);
      const cdouble a = ref::to_cd(direct.a);
      const cdouble b_times_j = ref::to_cd(direct.b * ref::series_j(n, cfg.z1()));
      if (std::abs(a) > 1e-250) CHECK(testing::rel_err(sol.A[n], a) < 1e-9);
      if (std::abs(b_times_j) > 1e-250) CHECK(testing::rel_err(sol.Btilde[n], b_times_j) < 1e-9);
    }
  }

  TEST_CASE("Btilde_n = j_n(kR1) + A_n h_n(kR1)") {
    const MediumConfig cfg = medium(1.7, 1.3, 1.0, 2.0, 1e-3);
    const auto sol = solve_penetrable(cfg, 1e-12);
    for (int n = 0; n <= 8; ++n) {
      const auto r = ref::real_bessel(n, cfg.k * cfg.R1);
      CHECK(std::abs(sol.Btilde[n] - (r.j + sol.A[n] * r.h())) < 1e-13);
    }
  }

  TEST_CASE("sound-hard closed forms") {
    const auto c1 = solve_hard(medium(1.0, 1.0, 1.0, 1.0, 1e-2), 1e-12);
    const cdouble expect1 = -(std::cos(1.0) - std::sin(1.0)) / (std::exp(I) * (1.0 + I));
    CHECK(testing::rel_err(c1[0], expect1) < 1e-13);

    const double pi = std::numbers::pi;
    const auto cpi = solve_hard(medium(1.0, pi, 1.0, 1.0, 1e-2), 1e-12);
    const cdouble h0p = std::exp(I * pi) * (pi + I) / (pi * pi);
    CHECK(testing::rel_err(cpi[0], -(-1.0 / pi) / h0p) < 1e-14);
  }

  TEST_CASE("sound-hard C_n against std special functions") {
    const auto C = solve_hard(medium(2.5, 1.0, 1.0, 1.0, 1e-2), 1e-70);
    REQUIRE(C.size() > 30);
    for (int n = 0; n <= 30; ++n) {
      const auto r = ref::real_bessel(n, 2.5);
      CHECK(testing::rel_err(C[n], -r.jp / r.hp()) < 1e-10);
    }
  }

  TEST_CASE("truncation rule") {
    CHECK(select_truncation(medium(1.0, 1.0, 1.0, 1.0, 1e-2), 1e-12) <= 30);
    const int n10 = select_truncation(medium(10.0, 1.0, 1.0, 1.0, 1e-2), 1e-12);
    CHECK(n10 >= 18);
    CHECK(n10 <= 60);
    CHECK_THROWS_AS(select_truncation(medium(1.0, 1.0, 1.0, 1.0, 1e-2), 0.0), NumericError);
  }

  TEST_CASE("configuration errors name the field") {
    auto expect_field = [](MediumConfig c, const char* field) {
      try {
        c.validate();
        FAIL("expected ConfigError for " << field);
      } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find(field) != std::string::npos);
      }
    };
    MediumConfig c = medium(1.0, 1.0, 1.0, 1.0, 1e-2);
    expect_field([&] { auto x = c; x.k = 0.0; return x; }(), "k");
    expect_field([&] { auto x = c; x.R1 = -1.0; return x; }(), "R1");
    expect_field([&] { auto x = c; x.eta0 = 0.0; return x; }(), "eta0");
    expect_field([&] { auto x = c; x.tau0 = 0.0; return x; }(), "tau0");
    expect_field([&] { auto x = c; x.eps = 0.0; return x; }(), "eps");
    expect_field([&] { auto x = c; x.d = {0.0, 0.0, 2.0}; return x; }(), "d");
    CHECK_NOTHROW(MediumConfig::homogeneous(1.0, 1.0).validate(MediumConfig::Loss::optional));
    CHECK_THROWS_AS(solve_penetrable(c, 0.0), ConfigError);
    CHECK_THROWS_AS(solve_penetrable(c, 1e-2), ConfigError);
  }
}
