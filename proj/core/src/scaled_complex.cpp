#include "hdsphere/scaled_complex.hpp"

#include <cmath>
#include <numbers>

namespace hdsphere {

double normalize_phase(double phase) {
  double p = std::remainder(phase, 2.0 * std::numbers::pi);
  if (p <= -std::numbers::pi) p += 2.0 * std::numbers::pi;
  return p;
}

ScaledComplex ScaledComplex::from_polar_log(double logmag, double phase) {
  ScaledComplex s;
  if (logmag == -std::numeric_limits<double>::infinity()) return s;
  s.logmag_ = logmag;
  s.phase_ = normalize_phase(phase);
  return s;
}

ScaledComplex ScaledComplex::from_complex(cdouble value) {
  if (value == cdouble(0.0, 0.0)) return {};
  // std::abs avoids spurious overflow in |value|^2
  return from_polar_log(std::log(std::abs(value)), std::arg(value));
}

ScaledComplex ScaledComplex::exp_of(cdouble w) {
  return from_polar_log(w.real(), w.imag());
}

cdouble ScaledComplex::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(logmag_), phase_);
}

cdouble ScaledComplex::to_complex_shifted(double shift) const {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(logmag_ - shift), phase_);
}

ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return ScaledComplex::from_polar_log(a.logmag_ + b.logmag_, a.phase_ + b.phase_);
}

ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b) {
  if (b.is_zero()) {
    return ScaledComplex::from_polar_log(std::numeric_limits<double>::infinity(), a.phase_);
  }
  if (a.is_zero()) return {};
  return ScaledComplex::from_polar_log(a.logmag_ - b.logmag_, a.phase_ - b.phase_);
}

ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const double m = std::max(a.logmag_, b.logmag_);
  const cdouble sum = a.to_complex_shifted(m) + b.to_complex_shifted(m);
  ScaledComplex s = ScaledComplex::from_complex(sum);
  if (!s.is_zero()) s.logmag_ += m;
  return s;
}

ScaledComplex operator-(const ScaledComplex& a) {
  if (a.is_zero()) return a;
  return ScaledComplex::from_polar_log(a.logmag_, a.phase_ + std::numbers::pi);
}

ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) { return a + (-b); }

}  // namespace hdsphere
