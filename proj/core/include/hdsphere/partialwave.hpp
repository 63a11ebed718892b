#pragma once

#include <cmath>
#include <vector>

#include "hdsphere/scaled_complex.hpp"
#include "hdsphere/vec3.hpp"

namespace hdsphere {

/// Physical scenario: plane wave e^{ik x.d} on a ball of radius R1 filled with
/// a medium of density 1/eps and complex index (eta0 + i tau0)/eps.
struct MediumConfig {
  double k = 1.0;
  double R1 = 1.0;
  double eta0 = 1.0;
  double tau0 = 1.0;
  double eps = 1e-2;
  Vec3 d{0.0, 0.0, 1.0};

  /// Whether tau0 = 0 is accepted. Only the homogeneous (null-scatterer)
  /// reference case needs it.
  enum class Loss { required, optional };

  /// Throws ConfigError naming the offending field.
  void validate(Loss loss = Loss::required) const;

  /// q0 = (eta0 + i tau0) / eps.
  cdouble q0() const { return cdouble(eta0, tau0) / eps; }
  /// sqrt(q0) = eps^{-1/2} (a + ib), principal branch.
  cdouble sqrt_q0() const;
  /// Interior argument k sqrt(q0) R1.
  cdouble z1() const { return k * sqrt_q0() * R1; }
  double size_parameter() const { return k * R1; }

  /// eps = 1, eta0 = 1, tau0 = 0: the sphere is indistinguishable from the
  /// background.
  static MediumConfig homogeneous(double k, double R1, Vec3 d = {0.0, 0.0, 1.0});
};

/// sqrt(eta0 + i tau0) = a + ib with a, b > 0.
struct SqrtContrast {
  double a = 0.0;
  double b = 0.0;

  double modulus() const { return std::hypot(a, b); }
};

SqrtContrast sqrt_contrast(double eta0, double tau0);

/// Per-order reduced coefficients. With Y_n^m the spherical harmonics,
///   a_n^m = i^n 4 pi conj(Y_n^m(d)) A_n          (scattered, penetrable)
///   b_n^m j_n(z1) = i^n 4 pi conj(Y_n^m(d)) Btilde_n   (interior)
///   c_n^m = i^n 4 pi conj(Y_n^m(d)) C_n          (scattered, sound-hard)
/// so every m-sum collapses to (2n+1) P_n(d.x) by the addition theorem.
struct PartialWaveSolution {
  MediumConfig config;
  int n_max = 0;
  std::vector<cdouble> T;       ///< eps sqrt(q0) D_n(z1)
  std::vector<cdouble> A;
  std::vector<cdouble> Btilde;
  std::vector<cdouble> C;
  std::vector<cdouble> Dz1;     ///< j_n'(z1)/j_n(z1)
};

/// T_n = eps sqrt(q0) j_n'(z1)/j_n(z1) for n = 0..n_max.
std::vector<cdouble> t_factor(const MediumConfig& cfg, int n_max);

/// Smallest n_max >= ceil(kR1) + 8 such that |A_n|, |C_n| and |j_n(kR1)| are
/// all below tol for three consecutive orders ending at n_max. Capped at
/// kTruncationCap; throws NumericError when the cap is reached.
int select_truncation(const MediumConfig& cfg, double tol);

inline constexpr int kTruncationCap = 512;

/// Full penetrable solve (also fills the sound-hard C_n at the same n_max).
PartialWaveSolution solve_penetrable(const MediumConfig& cfg, double tol,
                                     MediumConfig::Loss loss = MediumConfig::Loss::required);

/// C_n = -j_n'(kR1) / h_n'(kR1), truncated by the same rule restricted to C_n.
std::vector<cdouble> solve_hard(const MediumConfig& cfg, double tol);

}  // namespace hdsphere
