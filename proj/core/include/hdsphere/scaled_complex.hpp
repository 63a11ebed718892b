#pragma once

#include <complex>
#include <limits>

namespace hdsphere {

using cdouble = std::complex<double>;

/// Complex number stored as exp(logmag) * exp(i*phase).
///
/// Spherical Bessel functions of argument z grow like e^{|Im z|}; the interior
/// arguments of a dense sphere have |Im z| in the thousands, far past the
/// double range. Products and quotients are exact in logmag; sums rescale to
/// the larger operand. Zero is the one value with logmag == -inf.
class ScaledComplex {
 public:
  constexpr ScaledComplex() = default;

  static ScaledComplex from_polar_log(double logmag, double phase);
  static ScaledComplex from_complex(cdouble value);
  /// e^{w}, without forming e^{Re w}.
  static ScaledComplex exp_of(cdouble w);
  static ScaledComplex zero() { return {}; }
  static ScaledComplex one() { return from_polar_log(0.0, 0.0); }

  double logmag() const noexcept { return logmag_; }
  double phase() const noexcept { return phase_; }
  bool is_zero() const noexcept { return logmag_ == -std::numeric_limits<double>::infinity(); }

  /// Unscaled value; overflows to inf or underflows to 0 when out of range.
  cdouble to_complex() const;
  /// Value times e^{-shift}; useful to bring a family onto a common scale.
  cdouble to_complex_shifted(double shift) const;

  ScaledComplex conj() const { return from_polar_log(logmag_, -phase_); }

  friend ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b);
  friend ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b);
  friend ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b);
  friend ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b);
  friend ScaledComplex operator-(const ScaledComplex& a);

  ScaledComplex& operator*=(const ScaledComplex& o) { return *this = *this * o; }
  ScaledComplex& operator/=(const ScaledComplex& o) { return *this = *this / o; }
  ScaledComplex& operator+=(const ScaledComplex& o) { return *this = *this + o; }
  ScaledComplex& operator-=(const ScaledComplex& o) { return *this = *this - o; }

 private:
  double logmag_ = -std::numeric_limits<double>::infinity();
  double phase_ = 0.0;
};

inline ScaledComplex operator*(const ScaledComplex& a, cdouble b) {
  return a * ScaledComplex::from_complex(b);
}
inline ScaledComplex operator*(cdouble a, const ScaledComplex& b) {
  return ScaledComplex::from_complex(a) * b;
}

/// Wraps an angle into (-pi, pi].
double normalize_phase(double phase);

}  // namespace hdsphere
