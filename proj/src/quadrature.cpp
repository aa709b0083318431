#include "qmie/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "qmie/errors.hpp"
#include "qmie/vec3.hpp"

namespace qmie::quadrature {

Rule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p1 = 1.0;
    double p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    dp = n * (z * p1 - p2) / (z * z - 1.0);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

SphereRule sphere_product_rule(int n_theta, int n_phi) {
  if (n_phi < 1) throw DomainError("sphere_product_rule: n_phi must be >= 1");
  const Rule gl = gauss_legendre(n_theta);
  SphereRule rule;
  rule.theta.resize(n_theta);
  rule.theta_weights = gl.weights;
  for (int i = 0; i < n_theta; ++i) rule.theta[i] = std::acos(gl.nodes[i]);
  rule.phi.resize(n_phi);
  for (int j = 0; j < n_phi; ++j) rule.phi[j] = 2.0 * kPi * j / n_phi;
  rule.phi_weight = 2.0 * kPi / n_phi;
  return rule;
}

namespace {

constexpr double kRoundoffFloor = 64.0 * std::numeric_limits<double>::epsilon();

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;

template <class T>
struct Panel {
  T value;
  double error;
};

template <class T, class F>
Panel<T> kronrod_panel(const F& f, double a, double b) {
  const auto& x = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = boost::math::quadrature::gauss<double, 7>::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T f0 = f(mid);
  T kronrod = wk[0] * f0;
  T gauss = wg[0] * f0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const T fsum = f(mid + half * x[i]) + f(mid - half * x[i]);
    kronrod += wk[i] * fsum;
    if (i % 2 == 0) gauss += wg[i / 2] * fsum;
  }
  return {half * kronrod, std::abs(half * (kronrod - gauss))};
}

template <class T, class F>
Panel<T> bisect(const F& f, double a, double b, double abs_tol, unsigned depth, bool& converged) {
  const Panel<T> whole = kronrod_panel<T>(f, a, b);
  if (whole.error <= abs_tol) return whole;
  if (depth == 0) {
    converged = false;
    return whole;
  }
  const double mid = 0.5 * (a + b);
  const Panel<T> left = bisect<T>(f, a, mid, 0.5 * abs_tol, depth - 1, converged);
  const Panel<T> right = bisect<T>(f, mid, b, 0.5 * abs_tol, depth - 1, converged);
  return {left.value + right.value, left.error + right.error};
}

template <class T, class F>
Panel<T> run_adaptive(const F& f, double a, double b, double tolerance, unsigned max_depth) {
  if (!(tolerance > 0.0)) throw DomainError("adaptive quadrature: tolerance must be positive");
  // Absolute target from a coarse pass; the floor keeps identically-zero
  // integrands from recursing to max depth.
  const Panel<T> coarse = kronrod_panel<T>(f, a, b);
  const double scale = std::max(std::abs(coarse.value), 1e-300);
  bool converged = true;
  const Panel<T> result = bisect<T>(f, a, b, tolerance * scale, max_depth, converged);
  if (!std::isfinite(std::abs(result.value))) {
    throw ToleranceError("adaptive quadrature: non-finite integral");
  }
  if (!converged) {
    throw ToleranceError("adaptive quadrature: error estimate " + std::to_string(result.error) +
                         " above requested tolerance");
  }
  return {result.value, std::max(result.error, kRoundoffFloor * std::abs(result.value))};
}

}  // namespace

Estimate adaptive(const std::function<double(double)>& f, double a, double b,
                  double tolerance, unsigned max_depth) {
  const auto r = run_adaptive<double>(f, a, b, tolerance, max_depth);
  return {r.value, r.error};
}

ComplexEstimate adaptive_complex(const std::function<std::complex<double>(double)>& f, double a, double b,
                                 double tolerance, unsigned max_depth) {
  const auto r = run_adaptive<std::complex<double>>(f, a, b, tolerance, max_depth);
  return {r.value, r.error};
}

}  // namespace qmie::quadrature
