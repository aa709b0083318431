#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace qmie::quadrature {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
Rule gauss_legendre(int n);

/// Product rule on the unit sphere: Gauss-Legendre in cos(theta) times the
/// trapezoid rule in phi. Exact for band-limited integrands of degree
/// < 2 * n_theta in cos(theta) and < n_phi in phi.
struct SphereRule {
  std::vector<double> theta;
  std::vector<double> phi;
  std::vector<double> theta_weights;  // includes the d(cos theta) Jacobian
  double phi_weight = 0.0;
};

SphereRule sphere_product_rule(int n_theta, int n_phi);

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive 15-point Gauss-Kronrod on [a, b]. Throws ToleranceError if the
/// error estimate stays above `tolerance` (relative, with an absolute floor).
/// The reported error is never below 64 ulp of the value.
Estimate adaptive(const std::function<double(double)>& f, double a, double b,
                  double tolerance, unsigned max_depth = 15);

struct ComplexEstimate {
  std::complex<double> value;
  double error = 0.0;
};

/// Same driver for a complex integrand; the error is the modulus of the
/// complex Kronrod-Gauss difference.
ComplexEstimate adaptive_complex(const std::function<std::complex<double>(double)>& f, double a, double b,
                                 double tolerance, unsigned max_depth = 15);

}  // namespace qmie::quadrature
