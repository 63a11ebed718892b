#pragma once

#include <span>
#include <vector>

#include "hdsphere/partialwave.hpp"

namespace hdsphere {

enum class ScattererKind { penetrable, hard };

/// Far-field amplitude A(mu), mu = cos(angle from d). The pattern is
/// axisymmetric about d, so mu is the only angular variable.
///
/// With u^s ~ A(x) e^{ik|x|}/|x|, the series form is
///   A(mu) = (-i/k) sum_n (2n+1) X_n P_n(mu),   X_n = A_n or C_n.
struct FarFieldPattern {
  ScattererKind kind = ScattererKind::penetrable;
  double k = 1.0;
  double eps = 0.0;                   ///< 0 for the sound-hard pattern
  std::vector<double> mu;             ///< increasing, i.e. decreasing angle
  std::vector<cdouble> values;
  std::vector<cdouble> coefficients;  ///< X_n; empty for quadrature-extracted patterns

  /// Amplitude at mu = 1; throws ConfigError if the grid lacks it.
  cdouble forward() const;
};

/// `count` Chebyshev-Lobatto points on [-1, 1], increasing, ends included.
std::vector<double> chebyshev_mu_grid(int count);

inline constexpr int kSupGridPoints = 2001;

FarFieldPattern far_field(const PartialWaveSolution& sol, ScattererKind kind, std::span<const double> mu_grid);

/// sup over mu of |A_eps(mu) - A(mu)| on a Chebyshev grid.
double far_field_sup_diff(const PartialWaveSolution& sol, int grid_points = kSupGridPoints);

enum class Region { interior, exterior };

struct FieldSample {
  Vec3 point{};
  cdouble value;             ///< may underflow to 0 deep inside a dense sphere
  double log_abs = 0.0;      ///< ln|value|, computed in scaled arithmetic
  Region region = Region::exterior;
  cdouble radial_derivative; ///< d/d|x|; exterior samples only
};

/// Total field u_eps at points with |x| < R1.
std::vector<FieldSample> interior_field(const PartialWaveSolution& sol, std::span<const Vec3> points);

/// Scattered field and its radial derivative at points with |x| > R1.
std::vector<FieldSample> exterior_scattered_field(const PartialWaveSolution& sol, std::span<const Vec3> points,
                                                  ScattererKind kind);

cdouble incident_field(const MediumConfig& cfg, const Vec3& x);
/// d/d|x| of e^{ik x.d}.
cdouble incident_radial_derivative(const MediumConfig& cfg, const Vec3& x);

/// One-sided traces on |x| = R1 in direction `unit`. For the penetrable kind
/// `inner_flux` is eps du^-/dnu; for the sound-hard kind the inner values are 0.
struct SurfaceTrace {
  cdouble inner_value;
  cdouble inner_flux;
  cdouble outer_value;  ///< total field u^+
  cdouble outer_flux;   ///< du^+/dnu (total field)
};

std::vector<SurfaceTrace> boundary_traces(const PartialWaveSolution& sol, std::span<const Vec3> unit_directions,
                                          ScattererKind kind);

/// The H^{-1/2}(dB_R1) norm of eps du^-/dnu as the weighted coefficient sum
///   eps |k sqrt(q0)| ( sum_n w_n 4pi(2n+1) |Btilde_n D_n(z1) R1|^2 )^{1/2},
///   w_n = (1 + n(n+1)/R1^2)^{-1/2}.
double trace_norm_boundary(const PartialWaveSolution& sol);

struct CrossSections {
  double scattering = 0.0;
  double extinction = 0.0;
  double absorption = 0.0;
};

/// Parseval for sigma_scat, optical theorem for sigma_ext. Requires the
/// pattern's coefficients and mu = 1 on its grid.
CrossSections cross_sections(const FarFieldPattern& pattern, double k);

struct QuadOrders {
  int polar = 0;    ///< Gauss-Legendre nodes in cos(theta)
  int azimuth = 0;  ///< trapezoid nodes in phi
};

QuadOrders default_quad_orders(const PartialWaveSolution& sol, double R);

/// Far field recovered from u^s and du^s/dnu on |y| = R through
///   A(x) = 1/(4pi) int_{|y|=R} [u^s d/dnu e^{-ik x.y} - du^s/dnu e^{-ik x.y}] ds(y).
/// Throws NumericError if the next-higher rule changes the result by more
/// than 1e-6 relative.
FarFieldPattern far_field_from_boundary(const PartialWaveSolution& sol, ScattererKind kind, double R,
                                        QuadOrders orders, std::span<const double> mu_grid);

}  // namespace hdsphere
