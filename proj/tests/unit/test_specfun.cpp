#include <doctest.h>

#include <boost/math/special_functions/spherical_harmonic.hpp>
#include <cmath>
#include <limits>
#include <random>

#include "mp_oracle.hpp"
#include "qmie/errors.hpp"
#include "qmie/quadrature.hpp"
#include "qmie/specfun.hpp"

using namespace qmie;
using namespace qmie::specfun;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_SUITE("specfun") {
  TEST_CASE("j at the origin and at a zero of j0") {
    const auto j0 = spherical_bessel_j(2, 0.0);
    CHECK(j0[0] == 1.0);
    CHECK(j0[1] == 0.0);
    CHECK(j0[2] == 0.0);
    CHECK(std::abs(spherical_bessel_j(0, kPi)[0]) < 1e-16);
  }

  TEST_CASE("j matches frozen high-precision values at x = 10") {
    const auto j = spherical_bessel_j(50, 10.0);
    CHECK(rel(j[0], -0.054402111088936979) < 1e-13);
    CHECK(rel(j[5], -0.055534511621452183) < 1e-13);
    CHECK(rel(j[10], 0.064605154492564265) < 1e-12);
    CHECK(rel(j[20], 2.3083719613194687e-06) < 1e-12);
    CHECK(rel(j[35], 2.0910959545559472e-17) < 1e-12);
    CHECK(rel(j[50], 2.2306960232186467e-31) < 1e-12);
  }

  TEST_CASE("j agrees with the series oracle for l <= 60, x <= 50") {
    double worst = 0.0;
    for (double x : {1e-8, 1e-3, 0.5, 1.0, 3.7, 10.0, 24.5, 50.0}) {
      const auto ref = oracle::to_double(oracle::bessel_j(60, x));
      const auto j = spherical_bessel_j(60, x);
      for (int l = 0; l <= 60; ++l) {
        if (std::abs(ref[l]) < 1e-290) continue;
        worst = std::max(worst, rel(j[l], ref[l]));
      }
    }
    CHECK(worst < 1e-12);
  }

  TEST_CASE("j rejects NaN and orders above the cap") {
    CHECK_THROWS_AS(spherical_bessel_j(3, std::numeric_limits<double>::quiet_NaN()), DomainError);
    CHECK_THROWS_AS(spherical_bessel_j(kDefaultOrderCap + 1, 1.0), ResourceError);
  }

  TEST_CASE("y closed form, domain and oracle values") {
    CHECK(std::abs(spherical_bessel_y(0, kPi / 2.0)[0]) < 1e-16);
    CHECK_THROWS_AS(spherical_bessel_y(2, 0.0), DomainError);
    CHECK_THROWS_AS(spherical_bessel_y(2, -1.0), DomainError);
    const auto y = spherical_bessel_y(25, 5.0);
    CHECK(rel(y[3], -0.015442909912994204) < 1e-13);
    CHECK(rel(y[10], -26.6561144057187) < 1e-12);
    CHECK(rel(y[25], -50682639748971.25) < 1e-12);
    const auto ref = oracle::to_double(oracle::bessel_y(25, 5.0));
    for (int l = 0; l <= 25; ++l) CHECK(rel(y[l], ref[l]) < 1e-12);
  }

  TEST_CASE("cross-product Wronskian for l <= 60 and x in [1e-3, 50]") {
    double worst = 0.0;
    for (double x : {1e-3, 0.01, 0.3, 1.0, 2.5, 7.0, 15.0, 33.0, 50.0}) {
      const auto j = spherical_bessel_j(61, x);
      const auto y = spherical_bessel_y(61, x);
      for (int l = 0; l <= 60; ++l) {
        const double w = j[l + 1] * y[l] - j[l] * y[l + 1];
        worst = std::max(worst, rel(w, 1.0 / (x * x)));
      }
    }
    CHECK(worst < 1e-11);
  }

  TEST_CASE("h1 composes j and y") {
    const double x = 1.3;
    const auto h = spherical_hankel_h1(0, x);
    const cplx expect = cplx(0.0, -1.0) * std::polar(1.0, x) / x;
    CHECK(std::abs(h[0] - expect) < 1e-15);
    const auto h10 = spherical_hankel_h1(10, 3.0);
    CHECK(rel(h10[10].real(), 3.5260038931752564e-06) < 1e-12);
    CHECK(rel(h10[10].imag(), -4699.8591888113915) < 1e-12);
    const auto j = spherical_bessel_j(10, 3.0);
    const auto y = spherical_bessel_y(10, 3.0);
    for (int l = 0; l <= 10; ++l) {
      CHECK(h10[l].real() == j[l]);
      CHECK(h10[l].imag() == y[l]);
    }
  }

  TEST_CASE("spherical harmonic values and conjugation symmetry") {
    CHECK(std::abs(spherical_harmonic(0, 0, {0.4, 2.0}) - 1.0 / std::sqrt(4.0 * kPi)) < 1e-15);
    CHECK(std::abs(spherical_harmonic(1, 0, {0.0, 0.0}) - std::sqrt(3.0 / (4.0 * kPi))) < 1e-15);
    const cplx y32 = spherical_harmonic(3, 2, {1.1, 0.7});
    CHECK(std::abs(y32 - cplx(0.062580144189414696, 0.36283239890837843)) < 1e-14);
    CHECK_THROWS_AS(spherical_harmonic(2, 3, {0.1, 0.1}), DomainError);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> th(0.0, kPi);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 20; ++trial) {
      const AngularPoint p{th(rng), ph(rng)};
      for (int l = 0; l <= 8; ++l) {
        for (int m = -l; m <= l; ++m) {
          const cplx mine = spherical_harmonic(l, m, p);
          const cplx ref = boost::math::spherical_harmonic(l, m, p.theta, p.phi);
          CHECK(std::abs(mine - ref) < 1e-13);
          const cplx neg = spherical_harmonic(l, -m, p);
          const double sign = (m % 2 == 0) ? 1.0 : -1.0;
          CHECK(std::abs(neg - sign * std::conj(mine)) <= 1e-15 * std::max(1.0, std::abs(mine)));
        }
      }
    }
  }

  TEST_CASE("angular point clamps theta and wraps phi") {
    const auto p = AngularPoint::make(4.0, -0.5);
    CHECK(p.theta == kPi);
    CHECK(p.phi == doctest::Approx(2.0 * kPi - 0.5));
  }

  TEST_CASE("X_1^0 closed form and tangential X") {
    for (double theta : {0.2, 1.0, 2.5}) {
      const auto t = vector_spherical_harmonics(1, 0, {theta, 0.9});
      const cplx expect = cplx(0.0, std::sqrt(3.0 / (8.0 * kPi)) * std::sin(theta));
      CHECK(std::abs(t.X.z - expect) < 1e-15);
      CHECK(std::abs(t.X.y) < 1e-15);
    }
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      const int l = 1 + trial % 7;
      const int m = static_cast<int>(u(rng) * (2 * l + 1)) - l;
      const auto t = vector_spherical_harmonics(l, m, {kPi * u(rng), 2.0 * kPi * u(rng)});
      CHECK(t.X.x == cplx(0.0, 0.0));
    }
    CHECK_THROWS_AS(vector_spherical_harmonics(0, 0, {0.3, 0.3}), DomainError);
  }

  TEST_CASE("vector harmonics are orthonormal on the sphere for l <= 6") {
    const int l_max = 6;
    const auto rule = quadrature::sphere_product_rule(20, 16);
    struct Key {
      int l, m, kind;
    };
    std::vector<Key> keys;
    for (int l = 1; l <= l_max; ++l)
      for (int m = -l; m <= l; ++m)
        for (int kind = 0; kind < 3; ++kind) keys.push_back({l, m, kind});
    const std::size_t n = keys.size();
    std::vector<cplx> gram(n * n);
    for (std::size_t a = 0; a < rule.theta.size(); ++a) {
      for (double phi : rule.phi) {
        const HarmonicTable table(l_max, {rule.theta[a], phi});
        std::vector<CVec3> vals(n);
        for (std::size_t i = 0; i < n; ++i) {
          const auto t = vector_spherical_harmonics(table, keys[i].l, keys[i].m);
          vals[i] = keys[i].kind == 0 ? t.X : (keys[i].kind == 1 ? t.V : t.W);
        }
        const double w = rule.theta_weights[a] * rule.phi_weight;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) gram[i * n + j] += w * hdot(vals[i], vals[j]);
      }
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(gram[i * n + j] - (i == j ? 1.0 : 0.0)));
    CHECK(worst < 1e-10);
  }

  TEST_CASE("legendre values, domain and the addition theorem") {
    for (int l = 0; l <= 20; ++l) CHECK(legendre_p(l, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(legendre_p(2, 0.0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK_THROWS_AS(legendre_p(2, 1.5), DomainError);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      const AngularPoint a{kPi * u(rng), 2.0 * kPi * u(rng)};
      const AngularPoint b{kPi * u(rng), 2.0 * kPi * u(rng)};
      const double cos_g = dot(unit_r(a), unit_r(b));
      for (int l = 0; l <= 12; ++l) {
        cplx sum{};
        for (int m = -l; m <= l; ++m) sum += std::conj(spherical_harmonic(l, m, a)) * spherical_harmonic(l, m, b);
        CHECK(std::abs(sum - (2.0 * l + 1.0) / (4.0 * kPi) * legendre_p(l, cos_g)) < 1e-12);
      }
    }
  }
}
