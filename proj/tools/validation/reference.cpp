#include "reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hdsphere::reference {

namespace {

// z^n / (2n+1)!! * sum_k (-z^2/2)^k / (k! (2n+3)(2n+5)...(2n+2k+1))
template <class F>
void series_terms(int n, int terms, F&& f) {
  long double lead = 1.0L;
  for (int i = 1; i <= n; ++i) lead /= (2.0L * i + 1.0L);
  long double c = lead;
  for (int k = 0; k < terms; ++k) {
    if (k > 0) c *= -0.5L / (static_cast<long double>(k) * (2.0L * n + 2.0L * k + 1.0L));
    f(k, c);
  }
}

}  // namespace

ldcomplex series_j(int n, ldcomplex z, int terms) {
  const ldcomplex z2 = z * z;
  ldcomplex sum = 0.0L;
  ldcomplex zp = std::pow(z, n);
  series_terms(n, terms, [&](int, long double c) {
    sum += c * zp;
    zp *= z2;
  });
  return sum;
}

ldcomplex series_jp(int n, ldcomplex z, int terms) {
  const ldcomplex z2 = z * z;
  ldcomplex sum = 0.0L;
  // d/dz z^{n+2k} = (n+2k) z^{n+2k-1}
  ldcomplex zp = n > 0 ? std::pow(z, n - 1) : 1.0L / z;
  series_terms(n, terms, [&](int k, long double c) {
    sum += c * static_cast<long double>(n + 2 * k) * zp;
    zp *= z2;
  });
  return sum;
}

RealBessel real_bessel(int n, double t) {
  const unsigned un = static_cast<unsigned>(n);
  RealBessel r;
  r.j = std::sph_bessel(un, t);
  r.y = std::sph_neumann(un, t);
  r.jp = n / t * r.j - std::sph_bessel(un + 1, t);
  r.yp = n / t * r.y - std::sph_neumann(un + 1, t);
  return r;
}

cdouble sph_harmonic(int n, int m, const Vec3& unit) {
  const double theta = std::acos(std::clamp(unit[2] / norm(unit), -1.0, 1.0));
  const double phi = std::atan2(unit[1], unit[0]);
  const int am = std::abs(m);
  const cdouble y = std::sph_legendre(static_cast<unsigned>(n), static_cast<unsigned>(am), theta) *
                    std::polar(1.0, am * phi);
  if (m >= 0) return y;
  return (am % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
}

long double legendre_explicit(int n, long double mu) {
  // P_n(x) = 2^{-n} sum_k (-1)^k C(n,k) C(2n-2k, n) x^{n-2k}
  long double sum = 0.0L;
  for (int k = 0; 2 * k <= n; ++k) {
    const long double c1 = std::tgamma(n + 1.0L) / (std::tgamma(k + 1.0L) * std::tgamma(n - k + 1.0L));
    const long double c2 = std::tgamma(2.0L * n - 2.0L * k + 1.0L) /
                           (std::tgamma(n + 1.0L) * std::tgamma(n - 2.0L * k + 1.0L));
    sum += (k % 2 == 0 ? 1.0L : -1.0L) * c1 * c2 * std::pow(mu, n - 2 * k);
  }
  return sum / std::pow(2.0L, n);
}

OrderSolve unreduced_order(const MediumConfig& cfg, int n) {
  const long double k = cfg.k, R1 = cfg.R1, eps = cfg.eps;
  const ldcomplex sq = std::sqrt(ldcomplex(cfg.eta0, cfg.tau0)) / std::sqrt(eps);
  const ldcomplex z1 = k * sq * R1;
  const ldcomplex jz = series_j(n, z1);
  const ldcomplex jpz = series_jp(n, z1);
  const RealBessel rb = real_bessel(n, cfg.k * cfg.R1);
  const ldcomplex h(rb.j, rb.y), hp(rb.jp, rb.yp);
  const long double j = rb.j, jp = rb.jp;

  // [ jz        -h    ] [b]   [ j    ]
  // [ eps k sq jpz  -k hp ] [a] = [ k jp ]
  const ldcomplex m11 = jz, m12 = -h;
  const ldcomplex m21 = eps * k * sq * jpz, m22 = -k * hp;
  const ldcomplex r1 = j, r2 = k * jp;
  const ldcomplex det = m11 * m22 - m12 * m21;
  OrderSolve s;
  s.b = (r1 * m22 - m12 * r2) / det;
  s.a = (m11 * r2 - m21 * r1) / det;
  return s;
}

}  // namespace hdsphere::reference
