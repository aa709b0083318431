#include <doctest.h>

#include <cmath>

#include "mp_oracle.hpp"
#include "qmie/errors.hpp"
#include "qmie/observables.hpp"
#include "qmie/quadrature.hpp"

using namespace qmie;
using namespace qmie::obs;
using mie::Polarization;

namespace {

double rayleigh_sigma(double eps, double q, double radius) {
  const double k = q / radius;
  const double a = radius * radius * radius * (eps - 1.0) / (eps + 2.0);
  return 8.0 * kPi / 3.0 * std::pow(k, 4) * a * a;
}

}  // namespace

TEST_SUITE("observables") {
  TEST_CASE("optical theorem") {
    for (double eps : {1.5, 2.1, 6.0}) {
      for (double q : {0.05, 0.8, 2.5, 5.0}) {
        const SphereSpec spec{eps, 1.3};
        const double k = q / spec.radius;
        const double sigma = total_cross_section(spec, q).sigma;
        for (int g : {1, 2}) {
          const auto kap = PlaneModeIndex::make(g, k * specfun::unit_r({0.4, 1.9}));
          const double im = scattering_amplitude(spec, kap, kap).value.imag();
          CHECK(std::abs(4.0 * kPi / k * im - sigma) <= 1e-12 * sigma);
        }
      }
    }
  }

  TEST_CASE("Rayleigh limit of the cross sections") {
    const SphereSpec spec{2.1, 1.0};
    const double q = 0.01;
    const double k = q;
    const double ref = rayleigh_sigma(2.1, q, 1.0);
    CHECK(std::abs(total_cross_section(spec, q).sigma / ref - 1.0) < 1e-5);

    const auto kin = PlaneModeIndex::make(2, {0.0, 0.0, k});
    const double a = (2.1 - 1.0) / (2.1 + 2.0);
    for (auto d : {specfun::AngularPoint{0.3, 0.0}, specfun::AngularPoint{1.2, 0.7}, specfun::AngularPoint{2.8, 4.0}}) {
      const Vec3 n = specfun::unit_r(d);
      const double expected = std::pow(k, 4) * a * a * (1.0 - n.x * n.x);
      CHECK(std::abs(differential_cross_section(spec, kin, d) / expected - 1.0) < 1e-4);
    }
  }

  TEST_CASE("Rayleigh error shrinks with q") {
    const SphereSpec spec{2.1, 1.0};
    double previous = 1.0;
    for (double q : {0.04, 0.02, 0.01, 0.005}) {
      const double err = std::abs(total_cross_section(spec, q).sigma / rayleigh_sigma(2.1, q, 1.0) - 1.0);
      CHECK(err < previous);
      previous = err;
    }
  }

  TEST_CASE("channel and angular forms of sigma agree") {
    for (double q : {0.1, 1.0, 3.7, 5.0}) {
      const auto res = total_cross_section({2.1, 1.0}, q);
      CHECK(std::abs(res.sigma - res.sigma_angular) <= 1e-12 * res.sigma);
      double sum = 0.0;
      for (const auto& c : res.per_channel) sum += c.value;
      CHECK(sum == doctest::Approx(res.sigma).epsilon(1e-14));
      CHECK(res.l_max_used == mie::truncation_order(q));
    }
  }

  TEST_CASE("sigma matches the classical Mie oracle") {
    for (double eps : {2.1, 4.0}) {
      for (double q : {0.5, 2.0, 4.5}) {
        const int n = mie::truncation_order(q) + 6;
        const double ref = oracle::mie_sigma(q, std::sqrt(eps), q, n);
        CHECK(std::abs(total_cross_section({eps, 1.0}, q, n).sigma / ref - 1.0) < 1e-10);
      }
    }
  }

  TEST_CASE("default truncation is converged") {
    const SphereSpec spec{2.1, 1.0};
    const double q = 5.0;
    const int l = mie::truncation_order(q);
    const double a = total_cross_section(spec, q, l).sigma;
    const double b = total_cross_section(spec, q, 2 * l).sigma;
    CHECK(std::abs(a - b) < 1e-10 * b);
  }

  TEST_CASE("differential cross section integrates to sigma") {
    const SphereSpec spec{2.1, 1.0};
    for (double q : {0.5, 2.0}) {
      const int l_max = mie::truncation_order(q);
      const auto kin = PlaneModeIndex::make(1, q * specfun::unit_r({0.9, 0.2}));
      const auto rule = quadrature::sphere_product_rule(2 * l_max + 4, 4 * l_max + 4);
      double integral = 0.0;
      for (std::size_t a = 0; a < rule.theta.size(); ++a) {
        for (double phi : rule.phi) {
          integral += rule.theta_weights[a] * rule.phi_weight *
                      differential_cross_section(spec, kin, {rule.theta[a], phi}, l_max);
        }
      }
      const double sigma = total_cross_section(spec, q, l_max).sigma;
      CHECK(std::abs(integral / sigma - 1.0) < 1e-8);
    }
  }

  TEST_CASE("S matrix channels") {
    const SphereSpec spec{2.1, 1.0};
    const double q = 2.2;
    const auto table = mie::channel_table(spec, q, 10);
    for (const auto& s : s_matrix_channels(spec, q, 10)) {
      CHECK(std::abs(std::abs(s.value) - 1.0) < 1e-15);
      const auto& rec = table.at(s.channel);
      const cplx alt = 1.0 - 2.0 * cplx(0.0, 1.0) * rec.sin_phi * cplx(rec.cos_phi, -rec.sin_phi);
      CHECK(std::abs(s.value - alt) < 1e-14);
    }
    for (const auto& s : s_matrix_channels({1.0, 1.0}, q, 6)) CHECK(s.value == cplx(1.0, 0.0));
  }

  TEST_CASE("S kernel and transition amplitude") {
    const SphereSpec spec{2.1, 1.0};
    const auto a = PlaneModeIndex::make(1, {0.0, 0.0, 1.4});
    const auto b = PlaneModeIndex::make(2, {1.4, 0.0, 0.0});
    const cplx f = scattering_amplitude(spec, b, a).value;
    const cplx t = transition_amplitude_kernel(spec, b, a);
    CHECK(std::abs(t - cplx(0.0, 1.0) * f / (2.0 * kPi * 1.4)) < 1e-16);
    CHECK(s_matrix_kernel(spec, b, a) == 1.0 + t);
    CHECK(scattering_amplitude({1.0, 1.0}, b, a).value == cplx(0.0, 0.0));
  }

  TEST_CASE("inelastic amplitudes are rejected") {
    const auto a = PlaneModeIndex::make(1, {0.0, 0.0, 1.0});
    const auto b = PlaneModeIndex::make(1, {0.0, 0.0, 1.1});
    CHECK_THROWS_AS(scattering_amplitude({2.1, 1.0}, a, b), DomainError);
  }

  TEST_CASE("small particle probabilities") {
    const SphereSpec spec{2.1, 1.0};
    const double q = 0.05;
    const double tm1 = p_alpha(spec, q, {Polarization::TM, 1});
    CHECK(tm1 > 1e4 * p_alpha(spec, q, {Polarization::TE, 1}));
    CHECK(tm1 > 1e4 * p_alpha(spec, q, {Polarization::TM, 2}));
    CHECK(p_alpha({1.0, 1.0}, 3.0, {Polarization::TM, 1}) == 0.0);
  }

  TEST_CASE("g2 small-particle limit") {
    const SphereSpec spec{2.1, 1.0};
    const auto grid = g2_map(G2Config::hom_default(spec, 0.01, 32));
    CHECK_FALSE(grid.near_field_warning);
    double worst = 0.0;
    std::size_t defined = 0;
    for (std::size_t a = 0; a < grid.phi1.size(); ++a) {
      for (std::size_t b = 0; b < grid.phi2.size(); ++b) {
        if (!grid.at(a, b)) continue;
        ++defined;
        worst = std::max(worst, std::abs(*grid.at(a, b) - g2_small_particle(grid.phi1[a], grid.phi2[b])));
      }
    }
    CHECK(defined > grid.values.size() / 2);
    CHECK(worst < 1e-3);
  }

  TEST_CASE("g2 symmetry under exchange of the input photons") {
    const SphereSpec spec{2.1, 1.0};
    auto cfg = G2Config::hom_default(spec, 1.5, 12);
    const auto a = g2_map(cfg);
    std::swap(cfg.kappa1, cfg.kappa2);
    const auto b = g2_map(cfg);
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      REQUIRE(a.values[i].has_value() == b.values[i].has_value());
      if (a.values[i]) CHECK(std::abs(*a.values[i] - *b.values[i]) < 1e-12);
    }
  }

  TEST_CASE("g2 is stable against the detector distance in the far field") {
    const SphereSpec spec{2.1, 1.0};
    auto cfg = G2Config::hom_default(spec, 0.8, 10);
    const auto a = g2_map(cfg);
    cfg.r_detector = 2e3 / 0.8;
    const auto b = g2_map(cfg);
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      if (a.values[i] && b.values[i]) CHECK(std::abs(*a.values[i] - *b.values[i]) < 1e-2);
    }
    cfg.r_detector = 10.0;
    CHECK(g2_map(cfg).near_field_warning);
  }

  TEST_CASE("g2 grid bookkeeping") {
    const auto cfg = G2Config::hom_default({2.1, 1.0}, 0.5, 5);
    CHECK(cfg.phi1.size() == 5);
    CHECK(cfg.theta1 == doctest::Approx(kPi / 4));
    CHECK(cfg.theta2 == doctest::Approx(3 * kPi / 4));
    const auto grid = g2_map(cfg);
    CHECK(grid.values.size() == 25);
    for (const auto& v : grid.values)
      if (v) CHECK(std::isfinite(*v));
    CHECK_THROWS_AS(G2Config::hom_default({2.1, 1.0}, 0.5, 0), DomainError);
  }
}
