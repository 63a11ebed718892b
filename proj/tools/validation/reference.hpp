#pragma once

// Independent reference evaluations. Nothing here calls into the specfun
// kernels: complex Bessel values come from the ascending series in long
// double, real-argument values from the C++17 special math functions, and
// spherical harmonics are built explicitly per (n, m).

#include <complex>

#include "hdsphere/partialwave.hpp"

namespace hdsphere::reference {

using ldcomplex = std::complex<long double>;

/// j_n(z) from `terms` terms of the ascending series. Trustworthy for |z| <~ 15.
ldcomplex series_j(int n, ldcomplex z, int terms = 120);
/// j_n'(z), differentiating the same series term by term.
ldcomplex series_jp(int n, ldcomplex z, int terms = 120);

/// Real-argument values from std::sph_bessel / std::sph_neumann.
struct RealBessel {
  double j, jp, y, yp;
  cdouble h() const { return {j, y}; }
  cdouble hp() const { return {jp, yp}; }
};
RealBessel real_bessel(int n, double t);

/// Y_n^m at a unit direction, Condon-Shortley phase, orthonormal on the sphere.
cdouble sph_harmonic(int n, int m, const Vec3& unit);

/// P_n(mu) from the explicit power-sum form of Rodrigues' formula, long double.
long double legendre_explicit(int n, long double mu);

/// Per-order unknowns of the transmission problem, from a direct 2x2 solve of
///   b j_n(z1) - a h_n(kR1) = f j_n(kR1)
///   eps k sqrt(q0) b j_n'(z1) - k a h_n'(kR1) = f k j_n'(kR1)
/// with right-hand-side factor f = 1 (i.e. divided by i^n 4 pi conj(Y_n^m(d))).
struct OrderSolve {
  ldcomplex a;  ///< scattered coefficient / f
  ldcomplex b;  ///< interior coefficient / f (multiplies j_n(k sqrt(q0) r))
};
OrderSolve unreduced_order(const MediumConfig& cfg, int n);

inline cdouble to_cd(ldcomplex z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

}  // namespace hdsphere::reference

namespace hdsphere::reference {

/// j_n(z) and j_n'(z) from the ascending series in 150-digit arithmetic,
/// summed to convergence. For arguments where the long double series cancels.
struct MpBessel {
  cdouble j;
  cdouble jp;
};
MpBessel series_mp(int n, cdouble z);

}  // namespace hdsphere::reference
