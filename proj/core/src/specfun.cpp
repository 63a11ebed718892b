#include "hdsphere/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hdsphere/error.hpp"

namespace hdsphere::specfun {
namespace {

constexpr cdouble kI{0.0, 1.0};
constexpr double kRescale = 1e150;
constexpr double kZeroTol = 1e-12;
constexpr double kLentzTol = 1e-14;
constexpr int kLentzMaxIter = 10000;
constexpr double kTiny = 1e-300;

// Below this |z| the ascending series is used for every order.
constexpr double kSeriesRadius = 0.5;

int miller_start(int n_top, cdouble z) {
  return n_top + static_cast<int>(std::ceil(std::abs(z))) + 40;
}

struct ScaledTrig {
  ScaledComplex sin, cos;
};

// sin z and cos z with the e^{|Im z|} growth factored out analytically.
ScaledTrig scaled_trig(cdouble z) {
  if (std::abs(z.imag()) < 1.0) {
    return {ScaledComplex::from_complex(std::sin(z)), ScaledComplex::from_complex(std::cos(z))};
  }
  if (z.imag() > 0.0) {
    const ScaledComplex e = ScaledComplex::exp_of(-kI * z);
    const cdouble e2 = std::exp(2.0 * kI * z);
    return {e * ((e2 - 1.0) / (2.0 * kI)), e * ((e2 + 1.0) / 2.0)};
  }
  const ScaledComplex e = ScaledComplex::exp_of(kI * z);
  const cdouble e2 = std::exp(-2.0 * kI * z);
  return {e * ((1.0 - e2) / (2.0 * kI)), e * ((1.0 + e2) / 2.0)};
}

// Ascending series, accurate for small |z|.
ScaledComplex series_j(int n, cdouble z) {
  if (z == cdouble(0.0, 0.0)) return n == 0 ? ScaledComplex::one() : ScaledComplex::zero();
  const cdouble w = -0.5 * z * z;
  cdouble term = 1.0;
  cdouble sum = 1.0;
  for (int k = 1; k < 40; ++k) {
    term *= w / (static_cast<double>(k) * (2.0 * n + 2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  // z^n / (2n+1)!!, in log form; (2n+1)!! = 2^{n+1} Gamma(n+3/2) / sqrt(pi)
  const double log_dfact =
      (n + 1) * std::numbers::ln2 + std::lgamma(n + 1.5) - 0.5 * std::log(std::numbers::pi);
  const ScaledComplex lead = ScaledComplex::from_polar_log(
      n * std::log(std::abs(z)) - log_dfact, n * std::arg(z));
  return lead * sum;
}

// j_0..j_{n_top} at complex z.
std::vector<ScaledComplex> j_values(int n_top, cdouble z) {
  n_top = std::max(n_top, 1);
  std::vector<ScaledComplex> out(n_top + 1);
  if (std::abs(z) < kSeriesRadius) {
    for (int n = 0; n <= n_top; ++n) out[n] = series_j(n, z);
    return out;
  }

  const int start = miller_start(n_top, z);
  cdouble upper = 0.0;
  cdouble cur = 1.0;
  double offset = 0.0;
  for (int k = start; k >= 1; --k) {
    const cdouble lower = (2.0 * k + 1.0) / z * cur - upper;
    upper = cur;
    cur = lower;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      upper /= kRescale;
      offset += std::log(kRescale);
    }
    if (k - 1 <= n_top) {
      ScaledComplex v = ScaledComplex::from_complex(cur);
      out[k - 1] = ScaledComplex::from_polar_log(v.logmag() + offset, v.phase());
    }
  }

  const ScaledTrig tr = scaled_trig(z);
  const ScaledComplex inv_z = ScaledComplex::from_complex(1.0 / z);
  const ScaledComplex j0 = tr.sin * inv_z;
  const ScaledComplex j1 = (tr.sin * inv_z - tr.cos) * inv_z;
  const ScaledComplex norm = j0.logmag() >= j1.logmag() ? j0 / out[0] : j1 / out[1];
  for (auto& v : out) v *= norm;
  return out;
}

// y_0..y_{n_top} at real t > 0, upward recurrence.
std::vector<ScaledComplex> y_values(int n_top, double t) {
  n_top = std::max(n_top, 1);
  std::vector<ScaledComplex> out(n_top + 1);
  double prev = -std::cos(t) / t;
  double cur = -std::cos(t) / (t * t) - std::sin(t) / t;
  double offset = 0.0;
  out[0] = ScaledComplex::from_complex(prev);
  out[1] = ScaledComplex::from_complex(cur);
  for (int n = 1; n < n_top; ++n) {
    const double next = (2.0 * n + 1.0) / t * cur - prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      offset += std::log(kRescale);
    }
    ScaledComplex v = ScaledComplex::from_complex(cur);
    out[n + 1] = ScaledComplex::from_polar_log(v.logmag() + offset, v.phase());
  }
  return out;
}

// f_n' from f_{n-1} and f_n (f_0' = -f_1), for any spherical Bessel family.
std::vector<ScaledComplex> derivatives(const std::vector<ScaledComplex>& f, cdouble z, int n_max) {
  std::vector<ScaledComplex> d(n_max + 1);
  d[0] = -f[1];
  for (int n = 1; n <= n_max; ++n) {
    d[n] = f[n - 1] - f[n] * ((n + 1.0) / z);
  }
  return d;
}

void require_order(int n_max) {
  if (n_max < 0) throw ConfigError("order must be non-negative, got " + std::to_string(n_max));
}

// j_{n+1}(z)/j_n(z) by modified Lentz; returns false if the cap is hit.
bool ratio_continued_fraction(int n, cdouble z, cdouble& ratio, cdouble& inverse) {
  auto b = [&](int m) { return (2.0 * n + 2.0 * m + 1.0) / z; };
  cdouble f = b(1);
  if (f == 0.0) f = kTiny;
  cdouble c = f;
  cdouble d = 0.0;
  for (int m = 2; m <= kLentzMaxIter; ++m) {
    const cdouble bm = b(m);
    d = bm - d;
    if (d == 0.0) d = kTiny;
    c = bm - 1.0 / c;
    if (c == 0.0) c = kTiny;
    d = 1.0 / d;
    const cdouble delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < kLentzTol) {
      inverse = f;
      ratio = 1.0 / f;
      return true;
    }
  }
  return false;
}

// Same ratio from the downward recurrence, started well above the turning point.
void ratio_downward(int n, cdouble z, cdouble& ratio, cdouble& inverse) {
  cdouble rho = 0.0;
  for (int k = miller_start(n, z); k >= n + 2; --k) {
    rho = 1.0 / ((2.0 * k + 1.0) / z - rho);
  }
  // rho = j_{n+2}/j_{n+1}
  inverse = (2.0 * n + 3.0) / z - rho;
  ratio = 1.0 / inverse;
}

}  // namespace

BesselTable sph_bessel_real(int n_max, double t) {
  require_order(n_max);
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw ConfigError("sph_bessel_real: argument must be finite and positive, got " + std::to_string(t));
  }
  BesselTable table;
  table.order_max = n_max;
  table.argument = t;
  const auto j = j_values(n_max + 1, t);
  const auto y = y_values(n_max + 1, t);
  const ScaledComplex i_unit = ScaledComplex::from_polar_log(0.0, std::numbers::pi / 2);
  std::vector<ScaledComplex> h(j.size());
  for (std::size_t n = 0; n < j.size(); ++n) h[n] = j[n] + i_unit * y[n];

  table.jp = derivatives(j, t, n_max);
  table.yp = derivatives(y, t, n_max);
  table.hp = derivatives(h, t, n_max);
  table.j.assign(j.begin(), j.begin() + n_max + 1);
  table.y.assign(y.begin(), y.begin() + n_max + 1);
  table.h.assign(h.begin(), h.begin() + n_max + 1);
  return table;
}

BesselTable sph_bessel_complex(int n_max, cdouble z) {
  require_order(n_max);
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw ConfigError("sph_bessel_complex: non-finite argument");
  }
  BesselTable table;
  table.order_max = n_max;
  table.argument = z;
  const auto j = j_values(n_max + 1, z);
  if (z == cdouble(0.0, 0.0)) {
    table.jp.assign(n_max + 1, ScaledComplex::zero());
    if (n_max >= 1) table.jp[1] = ScaledComplex::from_complex(1.0 / 3.0);
  } else {
    table.jp = derivatives(j, z, n_max);
  }
  table.j.assign(j.begin(), j.begin() + n_max + 1);
  return table;
}

std::vector<cdouble> log_derivative_j(int n_max, cdouble z) {
  require_order(n_max);
  if (z == cdouble(0.0, 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw ConfigError("log_derivative_j: argument must be finite and nonzero");
  }
  cdouble rho, inv;
  if (!ratio_continued_fraction(n_max, z, rho, inv)) ratio_downward(n_max, z, rho, inv);
  // inv = j_{n_max}/j_{n_max+1}
  if (std::abs(inv) < kZeroTol * (1.0 + std::abs((2.0 * n_max + 3.0) / z))) {
    throw NumericError("log_derivative_j: j_n(z) numerically zero", n_max);
  }

  std::vector<cdouble> out(n_max + 1);
  out[n_max] = static_cast<double>(n_max) / z - rho;
  for (int k = n_max; k >= 1; --k) {
    const cdouble c = (2.0 * k + 1.0) / z;
    const cdouble den = c - rho;  // j_{k-1}/j_k
    if (std::abs(den) < kZeroTol * (1.0 + std::abs(c))) {
      throw NumericError("log_derivative_j: j_n(z) numerically zero", k - 1);
    }
    rho = 1.0 / den;
    out[k - 1] = static_cast<double>(k - 1) / z - rho;
  }
  return out;
}

std::vector<ScaledComplex> bessel_ratios_scaled(int n_max, cdouble z, double r) {
  require_order(n_max);
  if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("bessel_ratio: r must lie in [0, 1]");
  if (z == cdouble(0.0, 0.0)) throw ConfigError("bessel_ratio: z must be nonzero");

  std::vector<ScaledComplex> out(n_max + 1, ScaledComplex::one());
  if (r == 1.0) return out;

  const auto den = j_values(n_max + 1, z);
  for (int n = 0; n <= n_max; ++n) {
    const double scale = n == 0 ? den[1].logmag()
                                : den[n - 1].logmag() - std::log((2.0 * n + 1.0) / std::abs(z));
    if (den[n].logmag() < std::log(kZeroTol) + scale) {
      throw NumericError("bessel_ratio: j_n(z) numerically zero", n);
    }
  }
  if (r == 0.0) {
    std::fill(out.begin(), out.end(), ScaledComplex::zero());
    out[0] = ScaledComplex::one() / den[0];
    return out;
  }
  const auto num = j_values(n_max + 1, r * z);
  for (int n = 0; n <= n_max; ++n) out[n] = num[n] / den[n];
  return out;
}

cdouble bessel_ratio(int n, cdouble z, double r) {
  return bessel_ratios_scaled(n, z, r)[n].to_complex();
}

std::vector<double> legendre_p(int n_max, double mu) {
  require_order(n_max);
  if (!(std::abs(mu) <= 1.0)) throw ConfigError("legendre_p: |mu| must not exceed 1");
  std::vector<double> p(n_max + 1);
  p[0] = 1.0;
  if (n_max >= 1) p[1] = mu;
  for (int n = 1; n < n_max; ++n) {
    p[n + 1] = ((2.0 * n + 1.0) * mu * p[n] - n * p[n - 1]) / (n + 1.0);
  }
  return p;
}

std::vector<double> recurrence_residuals(const BesselTable& table) {
  const cdouble z = table.argument;
  std::vector<double> out;
  for (int n = 0; n < table.order_max; ++n) {
    const ScaledComplex a = table.jp[n];
    const ScaledComplex b = table.j[n] * (static_cast<double>(n) / z);
    const ScaledComplex c = table.j[n + 1];
    const double scale = std::max({a.logmag(), b.logmag(), c.logmag()});
    if (scale == -std::numeric_limits<double>::infinity()) {
      out.push_back(0.0);
      continue;
    }
    const cdouble res = a.to_complex_shifted(scale) - b.to_complex_shifted(scale) + c.to_complex_shifted(scale);
    out.push_back(std::abs(res));
  }
  return out;
}

}  // namespace hdsphere::specfun
