#include <boost/multiprecision/cpp_complex.hpp>

#include "reference.hpp"

namespace hdsphere::reference {

MpBessel series_mp(int n, cdouble z) {
  using mp_complex = boost::multiprecision::cpp_complex<150>;
  using mp_real = mp_complex::value_type;
  const mp_complex zz(z.real(), z.imag());
  const mp_complex z2 = zz * zz;

  mp_real lead = 1;
  for (int i = 1; i <= n; ++i) lead /= 2 * i + 1;
  // j_n = z^n sum_k c_k z^{2k}; j_n' = z^{n-1} sum_k (n + 2k) c_k z^{2k}
  mp_complex term = lead, sum = 0, dsum = 0;
  mp_real peak = 0;
  const mp_real stop("1e-145");
  for (int k = 0;; ++k) {
    if (k > 0) term *= -z2 / (mp_real(2 * k) * (2 * n + 2 * k + 1));
    sum += term;
    dsum += mp_real(n + 2 * k) * term;
    const mp_real mag = abs(term);
    peak = std::max(peak, mag);
    if (k > 2 * abs(zz) + n && mag < stop * peak) break;
    if (k > 20000) break;
  }
  const mp_complex zn = pow(zz, n);
  const mp_complex j = zn * sum;
  const mp_complex jp = zn / zz * dsum;
  return {cdouble(static_cast<double>(j.real()), static_cast<double>(j.imag())),
          cdouble(static_cast<double>(jp.real()), static_cast<double>(jp.imag()))};
}

}  // namespace hdsphere::reference
