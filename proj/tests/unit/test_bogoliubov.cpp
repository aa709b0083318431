#include <doctest.h>

#include <cmath>

#include "qmie/bogoliubov.hpp"
#include "qmie/errors.hpp"

using namespace qmie;
using namespace qmie::bogo;

namespace {

double j_ext(int l, double x) {
  if (l == -1) return std::cos(x) / x;
  return specfun::spherical_bessel_j(l, x)[l];
}

// Lommel integral of r^2 j_l(a r) j_l(b r) on [0, R], a != b.
double lommel(int l, double a, double b, double radius) {
  const double num = b * j_ext(l, a * radius) * j_ext(l - 1, b * radius) -
                     a * j_ext(l - 1, a * radius) * j_ext(l, b * radius);
  return radius * radius * num / (a * a - b * b);
}

double sphere_overlap(double q_abs, double radius) {
  const double x = q_abs * radius;
  if (x == 0.0) return 4.0 * kPi * radius * radius * radius / 3.0;
  return 4.0 * kPi * radius * radius * radius * specfun::spherical_bessel_j(1, x)[1] / x;
}

const SphereSpec kSpec{2.1, 1.0};
const double kK = 0.5;
const PlaneModeIndex kKappa = PlaneModeIndex::make(1, {0.0, 0.0, kK});
const PlaneModeIndex kKappaPrime = PlaneModeIndex::make(2, 0.8 * kK * specfun::unit_r({1.0, 0.4}));

}  // namespace

TEST_SUITE("bogoliubov") {
  TEST_CASE("plane-wave overlap matches the sphere form factor") {
    for (double radius : {0.7, 1.0, 2.0}) {
      const SphereSpec spec{2.1, radius};
      const Vec3 k{0.3, -0.2, 1.1};
      for (Vec3 kp : {Vec3{0.3, -0.2, 1.1}, Vec3{1.0, 0.5, 0.2}, Vec3{-0.8, 0.0, -0.6}}) {
        const auto est = plane_wave_volume_overlap(spec, k, kp, {20, 1e-12});
        const Vec3 d{kp.x - k.x, kp.y - k.y, kp.z - k.z};
        const double ref = sphere_overlap(norm(d), radius);
        CHECK(std::abs(est.value.real() - ref) < 1e-10 * std::abs(ref) + 1e-14);
        CHECK(est.value.imag() == 0.0);
      }
    }
  }

  TEST_CASE("V at equal modes is the sphere volume") {
    const auto v = coupling_v(kSpec, kKappa, kKappa);
    const double vol = 4.0 * kPi / 3.0;
    const double expected = kK / 4.0 * (1.1 / 2.1) * vol / std::pow(2.0 * kPi, 3);
    CHECK(std::abs(v.value - cplx(expected, 0.0)) < 1e-10 * expected);
    CHECK(v.kind == KernelKind::V);
  }

  TEST_CASE("all kernels vanish without a scatterer") {
    const SphereSpec vac{1.0, 1.0};
    CHECK(coupling_v(vac, kKappa, kKappaPrime).value == cplx(0.0, 0.0));
    CHECK(b_coefficient(vac, kKappa, kKappaPrime).value == cplx(0.0, 0.0));
    CHECK(a_offdiagonal_kernel(vac, kKappa, kKappaPrime).value == cplx(0.0, 0.0));
  }

  TEST_CASE("V is Hermitian") {
    const auto a = PlaneModeIndex::make(1, {0.2, 0.7, -0.3});
    const auto b = PlaneModeIndex::make(2, {-0.5, 0.1, 0.9});
    const cplx ab = coupling_v(kSpec, a, b).value;
    const cplx ba = coupling_v(kSpec, b, a).value;
    CHECK(std::abs(ab - std::conj(ba)) < 1e-14 * std::abs(ab));
  }

  TEST_CASE("B is linear in eps - 1 near vacuum") {
    std::vector<double> xs;
    std::vector<double> ys;
    for (int i = 1; i <= 8; ++i) {
      const double d = 1e-3 * i;
      xs.push_back(d);
      ys.push_back(std::abs(b_coefficient({1.0 + d, 1.0}, kKappa, kKappaPrime).value));
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
      syy += ys[i] * ys[i];
    }
    const double cov = sxy - sx * sy / n;
    const double r2 = cov * cov / ((sxx - sx * sx / n) * (syy - sy * sy / n));
    CHECK(r2 > 0.999);
    const double slope = cov / (sxx - sx * sx / n);
    CHECK(std::abs(slope * 1e-3 - ys[0]) < 0.01 * ys[0]);
  }

  TEST_CASE("mode overlap at eps = 1 is the plane-wave overlap") {
    const SphereSpec vac{1.0, 1.0};
    const auto kp = PlaneModeIndex::make(2, {0.3, 0.1, 0.6});
    const Vec3 k{0.1, -0.4, 0.5};
    const CVec3 u = PlaneModeIndex::make(1, k).polarization();
    const auto mode = scattering_mode_overlap(vac, k, u, kp, {16, 1e-12});
    const auto plane = plane_wave_volume_overlap(vac, k, kp.kvec, {16, 1e-12});
    const cplx pol = hdot(u, kp.polarization()) / std::pow(2.0 * kPi, 3);
    CHECK(std::abs(mode.value - pol * plane.value) < 1e-11 * std::abs(pol * plane.value));
  }

  TEST_CASE("mode overlap against closed-form radial integrals") {
    const int l_max = 4;
    const Vec3 k{0.2, 0.3, -0.7};
    const auto kp = PlaneModeIndex::make(1, {0.5, -0.2, 0.4});
    const CVec3 u = PlaneModeIndex::make(2, k).polarization();
    const double a = norm(k);
    const double b = std::sqrt(kSpec.epsilon) * kp.k();
    const auto table = mie::channel_table(kSpec, kp.k() * kSpec.radius, l_max);
    const auto ca = modes::plane_wave_coefficients(k, u, l_max);
    const auto cb = modes::plane_wave_coefficients(kp, l_max);
    cplx expected{};
    for (std::size_t i = 0; i < ca.size(); ++i) {
      const auto ch = cb[i].channel;
      const auto& rec = table.at(ch);
      const cplx w = (2.0 / kPi) * std::conj(ca[i].value) * cb[i].value * rec.gamma * cplx(rec.cos_phi, -rec.sin_phi);
      const int l = ch.l;
      const double radial = ch.p == mie::Polarization::TE
                                ? lommel(l, a, b, 1.0)
                                : (l * lommel(l + 1, a, b, 1.0) + (l + 1.0) * lommel(l - 1, a, b, 1.0)) / (2.0 * l + 1.0);
      expected += w * radial;
    }
    const auto est = scattering_mode_overlap(kSpec, k, u, kp, {l_max, 1e-12});
    CHECK(std::abs(est.value - expected) < 1e-10 * std::abs(expected));
  }

  TEST_CASE("frozen B regression value") {
    const auto b = b_coefficient(kSpec, kKappa, kKappaPrime);
    const cplx ref{8.0637797216346473e-06, 0.00067924933800322398};
    CHECK(std::abs(b.value - ref) < 1e-12 * std::abs(ref));
    CHECK(b.kind == KernelKind::B);
  }

  TEST_CASE("kernel values are consistent across tolerances") {
    for (auto kernel : {&b_coefficient, &a_offdiagonal_kernel}) {
      const auto loose = kernel(kSpec, kKappa, kKappaPrime, {0, 1e-6});
      const auto tight = kernel(kSpec, kKappa, kKappaPrime, {0, 1e-12});
      CHECK(std::abs(loose.value - tight.value) <= loose.error + tight.error + 1e-6 * std::abs(tight.value));
      CHECK(tight.error <= 1e-12 * std::abs(tight.value) + 1e-300);
    }
  }

  TEST_CASE("A kernel pole handling") {
    const auto a = PlaneModeIndex::make(1, {0.0, 0.0, 1.0});
    const auto same = PlaneModeIndex::make(2, {1.0, 0.0, 0.0});
    CHECK_THROWS_AS(a_offdiagonal_kernel(kSpec, a, same), PoleError);
    CHECK_THROWS_AS(a_offdiagonal_kernel(kSpec, a, same), DomainError);
    double previous = 0.0;
    for (double d : {1e-1, 1e-2, 1e-3, 1e-4}) {
      const auto kp = PlaneModeIndex::make(2, {1.0 + d, 0.0, 0.0});
      const double residue = std::abs(a_offdiagonal_kernel(kSpec, a, kp).value) * d;
      if (previous > 0.0) CHECK(std::abs(residue / previous - 1.0) < 0.1);
      previous = residue;
    }
  }

  TEST_CASE("A kernel is anti-Hermitian at first order in eps - 1") {
    const SphereSpec weak{1.0 + 1e-7, 1.0};
    const auto a = PlaneModeIndex::make(1, {0.2, 0.1, 0.6});
    const auto b = PlaneModeIndex::make(2, {-0.3, 0.5, 0.2});
    const cplx ab = a_offdiagonal_kernel(weak, a, b).value;
    const cplx ba = a_offdiagonal_kernel(weak, b, a).value;
    CHECK(std::abs(ab + std::conj(ba)) < 1e-5 * std::abs(ab));
  }

  TEST_CASE("diagonal channel sum") {
    const double q = 1.7;
    const auto a = PlaneModeIndex::make(1, q * specfun::unit_r({0.5, 0.1}));
    const auto b = PlaneModeIndex::make(2, q * specfun::unit_r({2.0, 1.3}));
    const int l_max = mie::truncation_order(q);
    const auto table = mie::channel_table(kSpec, q, l_max);
    const auto ca = modes::plane_wave_coefficients(a, l_max);
    const auto cb = modes::plane_wave_coefficients(b, l_max);
    cplx expected{};
    for (std::size_t i = 0; i < ca.size(); ++i) {
      const cplx s = std::polar(1.0, -2.0 * table.at(ca[i].channel).phi);
      expected += std::conj(ca[i].value) * cb[i].value * (1.0 + s) / 2.0;
    }
    const cplx got = a_diagonal_channel_sum(kSpec, a, b);
    CHECK(std::abs(got - expected) < 1e-12 * std::abs(expected));
    const cplx in = a_diagonal_channel_sum(kSpec, a, b, Direction::Incoming);
    CHECK(std::abs(in - std::conj(a_diagonal_channel_sum(kSpec, b, a))) < 1e-14);
    CHECK_THROWS_AS(a_diagonal_channel_sum(kSpec, a, PlaneModeIndex::make(1, {0.0, 0.0, 2.0})), DomainError);
  }
}
