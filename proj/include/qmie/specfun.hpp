#pragma once

#include <complex>
#include <vector>

#include "qmie/vec3.hpp"

/// Scalar and vector special functions: spherical Bessel/Hankel functions,
/// orthonormal spherical harmonics (Condon-Shortley phase), vector spherical
/// harmonics X, V, W and Legendre polynomials.
namespace qmie::specfun {

inline constexpr int kDefaultOrderCap = 512;

/// Direction on the unit sphere. `make` clamps theta into [0, pi] and wraps
/// phi into [0, 2 pi).
struct AngularPoint {
  double theta = 0.0;
  double phi = 0.0;

  static AngularPoint make(double theta, double phi);
  /// Direction of a nonzero vector; the origin maps to (0, 0).
  static AngularPoint of(Vec3 v);
};

Vec3 unit_r(AngularPoint p);
Vec3 unit_theta(AngularPoint p);
Vec3 unit_phi(AngularPoint p);

/// Rotates local spherical components (r, theta, phi) into Cartesian ones.
CVec3 spherical_to_cartesian(const CVec3& local, AngularPoint p);
/// Inverse of spherical_to_cartesian.
CVec3 cartesian_to_spherical(const CVec3& cart, AngularPoint p);

/// j_0(x) .. j_{l_max}(x). Miller downward recurrence normalised against the
/// closed form of j_0 or j_1; upward recurrence once x exceeds l_max; a
/// three-term power series below x = 1e-6 (l_max + 1).
std::vector<double> spherical_bessel_j(int l_max, double x, int cap = kDefaultOrderCap);

/// y_0(x) .. y_{l_max}(x) by upward recurrence. Requires x > 0.
std::vector<double> spherical_bessel_y(int l_max, double x, int cap = kDefaultOrderCap);

/// h_l = j_l + i y_l (first kind).
std::vector<cplx> spherical_hankel_h1(int l_max, double x, int cap = kDefaultOrderCap);

/// Y_l^m(theta, phi), orthonormal on the sphere, Condon-Shortley phase.
cplx spherical_harmonic(int l, int m, AngularPoint p);

/// Y_l^m with its angular gradient: d_theta and (1/sin theta) d_phi, the
/// latter evaluated without dividing by sin theta.
struct HarmonicWithGradient {
  cplx value{};
  cplx d_theta{};
  cplx d_phi_over_sin{};
};

/// All harmonics and gradients for l <= l_max at one direction.
class HarmonicTable {
 public:
  HarmonicTable(int l_max, AngularPoint p);

  [[nodiscard]] const HarmonicWithGradient& at(int l, int m) const;
  [[nodiscard]] int l_max() const { return l_max_; }

 private:
  int l_max_;
  std::vector<HarmonicWithGradient> entries_;
};

/// X, V, W at one direction, components on (e_r, e_theta, e_phi).
struct VectorHarmonicTriple {
  CVec3 X;
  CVec3 V;
  CVec3 W;
};

VectorHarmonicTriple vector_spherical_harmonics(int l, int m, AngularPoint p);
/// Same, reusing a precomputed table.
VectorHarmonicTriple vector_spherical_harmonics(const HarmonicTable& table, int l, int m);

/// Legendre polynomial P_l(x), |x| <= 1, Bonnet recurrence.
double legendre_p(int l, double x);

}  // namespace qmie::specfun
