#include "hdsphere/partialwave.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hdsphere/error.hpp"
#include "hdsphere/specfun.hpp"

namespace hdsphere {
namespace {

constexpr cdouble kI{0.0, 1.0};
const double kMinDenominatorLog = std::log(1e-30);

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string(name) + " must be finite and strictly positive, got " + std::to_string(v));
  }
}

struct Coefficients {
  std::vector<cdouble> T, A, Btilde, C, Dz1;
  std::vector<double> j_abs;  // |j_n(kR1)|
};

Coefficients compute(const MediumConfig& cfg, int n_top, bool penetrable) {
  const double t = cfg.size_parameter();
  const auto tab = specfun::sph_bessel_real(n_top, t);
  Coefficients c;
  c.C.resize(n_top + 1);
  c.j_abs.resize(n_top + 1);
  for (int n = 0; n <= n_top; ++n) {
    c.C[n] = (-(tab.jp[n] / tab.hp[n])).to_complex();
    c.j_abs[n] = std::exp(tab.j[n].logmag());
  }
  if (!penetrable) return c;

  c.Dz1 = specfun::log_derivative_j(n_top, cfg.z1());
  const cdouble scale = cfg.eps * cfg.sqrt_q0();
  c.T.resize(n_top + 1);
  c.A.resize(n_top + 1);
  c.Btilde.resize(n_top + 1);
  const ScaledComplex minus_i_over_t2 = ScaledComplex::from_complex(-kI / (t * t));
  for (int n = 0; n <= n_top; ++n) {
    c.T[n] = scale * c.Dz1[n];
    const ScaledComplex T = ScaledComplex::from_complex(c.T[n]);
    const ScaledComplex den = T * tab.h[n] - tab.hp[n];
    if (den.logmag() < kMinDenominatorLog) {
      throw NumericError("solve_penetrable: degenerate denominator T_n h_n - h_n' at order " +
                             std::to_string(n),
                         n);
    }
    c.A[n] = ((tab.jp[n] - T * tab.j[n]) / den).to_complex();
    // h_n j_n' - j_n h_n' = -i / t^2 (Wronskian), so Btilde_n = j_n + A_n h_n collapses
    c.Btilde[n] = (minus_i_over_t2 / den).to_complex();
  }
  return c;
}

// Truncation order within the computed range, or -1.
int scan(const Coefficients& c, int floor_order, double tol, bool penetrable) {
  int run = 0;
  const int n_top = static_cast<int>(c.C.size()) - 1;
  for (int n = 0; n <= n_top; ++n) {
    double mag = std::max(std::abs(c.C[n]), c.j_abs[n]);
    if (penetrable) mag = std::max(mag, std::abs(c.A[n]));
    run = mag < tol ? run + 1 : 0;
    if (n >= floor_order && run >= 3) return n;
  }
  return -1;
}

int truncation(const MediumConfig& cfg, double tol, bool penetrable, Coefficients* out) {
  if (std::isnan(tol)) throw ConfigError("tol must be a number");
  const int floor_order = static_cast<int>(std::ceil(cfg.size_parameter())) + 8;
  int n_top = std::min(std::max(64, 2 * floor_order), kTruncationCap);
  while (true) {
    Coefficients c = compute(cfg, n_top, penetrable);
    const int n = scan(c, floor_order, tol, penetrable);
    if (n >= 0) {
      if (out) *out = std::move(c);
      return n;
    }
    if (n_top == kTruncationCap) {
      throw NumericError("select_truncation: cap of " + std::to_string(kTruncationCap) +
                             " orders reached without |coefficients| < tol",
                         kTruncationCap);
    }
    n_top = std::min(2 * n_top, kTruncationCap);
  }
}

template <class T>
std::vector<T> head(const std::vector<T>& v, int n_max) {
  return {v.begin(), v.begin() + n_max + 1};
}

}  // namespace

void MediumConfig::validate(Loss loss) const {
  require_positive(k, "k");
  require_positive(R1, "R1");
  require_positive(eta0, "eta0");
  require_positive(eps, "eps");
  if (loss == Loss::required) {
    require_positive(tau0, "tau0");
  } else if (!(tau0 >= 0.0) || !std::isfinite(tau0)) {
    throw ConfigError("tau0 must be finite and non-negative, got " + std::to_string(tau0));
  }
  const double len = norm(d);
  if (!std::isfinite(len) || std::abs(len - 1.0) > 1e-12) {
    throw ConfigError("d must be a unit vector, |d| = " + std::to_string(len));
  }
}

cdouble MediumConfig::sqrt_q0() const {
  return std::sqrt(cdouble(eta0, tau0)) / std::sqrt(eps);
}

MediumConfig MediumConfig::homogeneous(double k, double R1, Vec3 d) {
  MediumConfig cfg;
  cfg.k = k;
  cfg.R1 = R1;
  cfg.eta0 = 1.0;
  cfg.tau0 = 0.0;
  cfg.eps = 1.0;
  cfg.d = d;
  return cfg;
}

SqrtContrast sqrt_contrast(double eta0, double tau0) {
  require_positive(eta0, "eta0");
  require_positive(tau0, "tau0");
  // principal root; b = tau0 / (2a) avoids cancellation in sqrt((|w| - eta0)/2)
  const double modulus = std::hypot(eta0, tau0);
  const double a = std::sqrt(0.5 * (modulus + eta0));
  return {a, tau0 / (2.0 * a)};
}

std::vector<cdouble> t_factor(const MediumConfig& cfg, int n_max) {
  cfg.validate(MediumConfig::Loss::optional);
  const auto D = specfun::log_derivative_j(n_max, cfg.z1());
  const cdouble scale = cfg.eps * cfg.sqrt_q0();
  std::vector<cdouble> T(D.size());
  std::transform(D.begin(), D.end(), T.begin(), [&](cdouble v) { return scale * v; });
  return T;
}

int select_truncation(const MediumConfig& cfg, double tol) {
  cfg.validate(MediumConfig::Loss::optional);
  return truncation(cfg, tol, true, nullptr);
}

PartialWaveSolution solve_penetrable(const MediumConfig& cfg, double tol, MediumConfig::Loss loss) {
  cfg.validate(loss);
  if (!(tol > 0.0 && tol <= 1e-4)) throw ConfigError("tol must lie in (0, 1e-4], got " + std::to_string(tol));
  Coefficients c;
  const int n_max = truncation(cfg, tol, true, &c);
  PartialWaveSolution sol;
  sol.config = cfg;
  sol.n_max = n_max;
  sol.T = head(c.T, n_max);
  sol.A = head(c.A, n_max);
  sol.Btilde = head(c.Btilde, n_max);
  sol.C = head(c.C, n_max);
  sol.Dz1 = head(c.Dz1, n_max);
  return sol;
}

std::vector<cdouble> solve_hard(const MediumConfig& cfg, double tol) {
  require_positive(cfg.k, "k");
  require_positive(cfg.R1, "R1");
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  Coefficients c;
  const int n_max = truncation(cfg, tol, false, &c);
  return head(c.C, n_max);
}

}  // namespace hdsphere
