#pragma once

#include <vector>

#include "hdsphere/scaled_complex.hpp"

namespace hdsphere::specfun {

/// Spherical Bessel values at a single argument for orders 0..order_max.
///
/// `j`/`jp` are always filled. The second-kind families (`y`, `yp`, `h`,
/// `hp`, with h = j + i y the outgoing Hankel function) are filled only by
/// sph_bessel_real. Everything is held in scaled form so high orders and
/// large |Im z| never overflow.
struct BesselTable {
  int order_max = 0;
  cdouble argument;
  std::vector<ScaledComplex> j, jp;
  std::vector<ScaledComplex> y, yp, h, hp;

  bool has_second_kind() const { return !y.empty(); }
};

/// j, j', y, y', h, h' at a real positive argument.
BesselTable sph_bessel_real(int n_max, double t);

/// j, j' at a complex argument (Miller downward recurrence).
BesselTable sph_bessel_complex(int n_max, cdouble z);

/// D_n(z) = j_n'(z) / j_n(z) for n = 0..n_max, from a continued fraction for
/// j_{n_max+1}/j_{n_max} and downward ratio recurrence. Unscaled j_n(z) is
/// never formed. Throws NumericError naming the order when j_n(z) is
/// numerically zero.
std::vector<cdouble> log_derivative_j(int n_max, cdouble z);

/// j_n(r z) / j_n(z) in scaled form for n = 0..n_max, with r in [0, 1].
std::vector<ScaledComplex> bessel_ratios_scaled(int n_max, cdouble z, double r);

/// j_n(r z) / j_n(z) for a single order, r in [0, 1]. Returns exactly 1 at r = 1.
cdouble bessel_ratio(int n, cdouble z, double r);

/// Legendre polynomials P_0..P_{n_max} at mu in [-1, 1].
std::vector<double> legendre_p(int n_max, double mu);

/// Residual |j_{n-1} + j_{n+1} - (2n+1)/z j_n| relative to the largest of the
/// three terms, for n = 1..order_max-1. Used to audit a table.
std::vector<double> recurrence_residuals(const BesselTable& table);

}  // namespace hdsphere::specfun
