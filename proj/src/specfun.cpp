#include "qmie/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmie/errors.hpp"

namespace qmie::specfun {

namespace {

void check_order(int l_max, int cap, const char* who) {
  if (l_max < 0) throw DomainError(std::string(who) + ": negative order");
  if (l_max > cap) {
    throw ResourceError(std::string(who) + ": order " + std::to_string(l_max) +
                        " exceeds cap " + std::to_string(cap));
  }
}

// Leading three terms of x^l / (2l+1)!! (1 - x^2/(2(2l+3)) + x^4/(8(2l+3)(2l+5))).
std::vector<double> bessel_j_series(int l_max, double x) {
  std::vector<double> out(l_max + 1);
  const double x2 = x * x;
  double lead = 1.0;
  for (int l = 0; l <= l_max; ++l) {
    if (l > 0) lead *= x / (2.0 * l + 1.0);
    const double a = 2.0 * l + 3.0;
    out[l] = lead * (1.0 - x2 / (2.0 * a) + x2 * x2 / (8.0 * a * (a + 2.0)));
  }
  return out;
}

std::vector<double> bessel_j_upward(int l_max, double x) {
  std::vector<double> out(l_max + 1);
  const double s = std::sin(x);
  const double c = std::cos(x);
  out[0] = s / x;
  if (l_max >= 1) out[1] = (s / x - c) / x;
  for (int l = 1; l < l_max; ++l) out[l + 1] = (2.0 * l + 1.0) / x * out[l] - out[l - 1];
  return out;
}

std::vector<double> bessel_j_miller(int l_max, double x) {
  const double big = std::max(static_cast<double>(l_max), x);
  const int start = static_cast<int>(big) + 30 + static_cast<int>(std::ceil(std::sqrt(60.0 * big)));
  std::vector<double> out(l_max + 1, 0.0);
  double upper = 0.0;
  double current = 1e-30;
  constexpr double kRescaleAt = 1e200;
  for (int l = start; l >= 1; --l) {
    const double lower = (2.0 * l + 1.0) / x * current - upper;
    upper = current;
    current = lower;
    if (l - 1 <= l_max) out[l - 1] = current;
    if (std::abs(current) > kRescaleAt) {
      current /= kRescaleAt;
      upper /= kRescaleAt;
      for (int k = l - 1; k <= l_max; ++k) {
        if (k >= 0) out[k] /= kRescaleAt;
      }
    }
  }
  const double s = std::sin(x);
  const double c = std::cos(x);
  const double j0 = s / x;
  const double j1 = (s / x - c) / x;
  const double scale = (l_max >= 1 && std::abs(j1) > std::abs(j0)) ? j1 / out[1] : j0 / out[0];
  for (double& v : out) v *= scale;
  return out;
}

}  // namespace

AngularPoint AngularPoint::make(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) throw DomainError("AngularPoint: non-finite angle");
  AngularPoint p;
  p.theta = std::clamp(theta, 0.0, kPi);
  p.phi = std::fmod(phi, 2.0 * kPi);
  if (p.phi < 0.0) p.phi += 2.0 * kPi;
  if (p.phi >= 2.0 * kPi) p.phi = 0.0;
  return p;
}

AngularPoint AngularPoint::of(Vec3 v) {
  const double r = norm(v);
  if (r == 0.0) return {0.0, 0.0};
  return make(std::acos(std::clamp(v.z / r, -1.0, 1.0)), std::atan2(v.y, v.x));
}

Vec3 unit_r(AngularPoint p) {
  const double st = std::sin(p.theta);
  return {st * std::cos(p.phi), st * std::sin(p.phi), std::cos(p.theta)};
}

Vec3 unit_theta(AngularPoint p) {
  const double ct = std::cos(p.theta);
  return {ct * std::cos(p.phi), ct * std::sin(p.phi), -std::sin(p.theta)};
}

Vec3 unit_phi(AngularPoint p) { return {-std::sin(p.phi), std::cos(p.phi), 0.0}; }

CVec3 spherical_to_cartesian(const CVec3& local, AngularPoint p) {
  const Vec3 er = unit_r(p);
  const Vec3 et = unit_theta(p);
  const Vec3 ep = unit_phi(p);
  return {local.x * er.x + local.y * et.x + local.z * ep.x,
          local.x * er.y + local.y * et.y + local.z * ep.y,
          local.x * er.z + local.y * et.z + local.z * ep.z};
}

CVec3 cartesian_to_spherical(const CVec3& cart, AngularPoint p) {
  return {dot(cart, unit_r(p)), dot(cart, unit_theta(p)), dot(cart, unit_phi(p))};
}

std::vector<double> spherical_bessel_j(int l_max, double x, int cap) {
  check_order(l_max, cap, "spherical_bessel_j");
  if (std::isnan(x)) throw DomainError("spherical_bessel_j: NaN argument");
  if (x < 0.0) throw DomainError("spherical_bessel_j: negative argument");
  if (std::isinf(x)) throw DomainError("spherical_bessel_j: infinite argument");
  if (x == 0.0) {
    std::vector<double> out(l_max + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  if (x < 1e-6 * (l_max + 1)) return bessel_j_series(l_max, x);
  if (x > l_max && x > 1.0) return bessel_j_upward(l_max, x);
  return bessel_j_miller(l_max, x);
}

std::vector<double> spherical_bessel_y(int l_max, double x, int cap) {
  check_order(l_max, cap, "spherical_bessel_y");
  if (std::isnan(x) || !(x > 0.0) || std::isinf(x)) {
    throw DomainError("spherical_bessel_y: argument must be finite and > 0");
  }
  std::vector<double> out(l_max + 1);
  const double s = std::sin(x);
  const double c = std::cos(x);
  out[0] = -c / x;
  if (l_max >= 1) out[1] = (-c / x - s) / x;
  for (int l = 1; l < l_max; ++l) out[l + 1] = (2.0 * l + 1.0) / x * out[l] - out[l - 1];
  return out;
}

std::vector<cplx> spherical_hankel_h1(int l_max, double x, int cap) {
  const auto y = spherical_bessel_y(l_max, x, cap);
  const auto j = spherical_bessel_j(l_max, x, cap);
  std::vector<cplx> out(l_max + 1);
  for (int l = 0; l <= l_max; ++l) out[l] = {j[l], y[l]};
  return out;
}

HarmonicTable::HarmonicTable(int l_max, AngularPoint p) : l_max_(l_max) {
  if (l_max < 0) throw DomainError("HarmonicTable: negative l_max");
  const int width = 2 * l_max + 1;
  entries_.resize(static_cast<std::size_t>(l_max + 1) * width);
  const double x = std::cos(p.theta);
  const double s = std::sin(p.theta);

  // pbar[l][m]: orthonormal associated Legendre (with CS phase);
  // qbar[l][m] = pbar / sin(theta) for m >= 1, seeded with sin^(m-1).
  std::vector<double> pbar((l_max + 2) * (l_max + 2), 0.0);
  std::vector<double> qbar((l_max + 2) * (l_max + 2), 0.0);
  auto idx = [l_max](int l, int m) { return static_cast<std::size_t>(l) * (l_max + 2) + m; };

  double sectoral = 1.0 / std::sqrt(4.0 * kPi);  // c_m, without powers of sin
  double sin_pow = 1.0;                         // sin^(m-1) for m >= 1
  for (int m = 0; m <= l_max; ++m) {
    if (m > 0) {
      sectoral *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m));
      if (m > 1) sin_pow *= s;
    }
    const double q_mm = m > 0 ? sectoral * sin_pow : 0.0;
    const double p_mm = m > 0 ? q_mm * s : sectoral;
    pbar[idx(m, m)] = p_mm;
    qbar[idx(m, m)] = q_mm;
    if (m + 1 <= l_max) {
      const double f = std::sqrt(2.0 * m + 3.0) * x;
      pbar[idx(m + 1, m)] = f * p_mm;
      qbar[idx(m + 1, m)] = f * q_mm;
    }
    for (int l = m + 2; l <= l_max; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
      const double b = std::sqrt((static_cast<double>(l - 1) * (l - 1) - static_cast<double>(m) * m) /
                                 (4.0 * (l - 1) * (l - 1) - 1.0));
      pbar[idx(l, m)] = a * (x * pbar[idx(l - 1, m)] - b * pbar[idx(l - 2, m)]);
      qbar[idx(l, m)] = a * (x * qbar[idx(l - 1, m)] - b * qbar[idx(l - 2, m)]);
    }
  }
  for (int l = 0; l <= l_max; ++l) {
    for (int m = 0; m <= l; ++m) {
      double d_theta;
      if (m == 0) {
        d_theta = l == 0 ? 0.0 : std::sqrt(static_cast<double>(l) * (l + 1)) * pbar[idx(l, 1)];
      } else {
        const double lower = l - 1 >= m ? qbar[idx(l - 1, m)] : 0.0;
        const double c = std::sqrt((2.0 * l + 1.0) / (2.0 * l - 1.0) *
                                   (static_cast<double>(l) * l - static_cast<double>(m) * m));
        d_theta = l * x * qbar[idx(l, m)] - c * lower;
      }
      const double pv = pbar[idx(l, m)];
      const double qv = qbar[idx(l, m)];
      for (int sign : {1, -1}) {
        if (m == 0 && sign < 0) continue;
        const int mm = sign * m;
        const cplx phase = std::polar(1.0, mm * p.phi);
        const double parity = (sign < 0 && (m % 2 == 1)) ? -1.0 : 1.0;
        HarmonicWithGradient& e = entries_[static_cast<std::size_t>(l) * width + (mm + l_max)];
        e.value = parity * pv * phase;
        e.d_theta = parity * d_theta * phase;
        e.d_phi_over_sin = cplx(0.0, static_cast<double>(mm)) * (parity * qv) * phase;
      }
    }
  }
}

const HarmonicWithGradient& HarmonicTable::at(int l, int m) const {
  if (l < 0 || l > l_max_ || std::abs(m) > l) throw DomainError("HarmonicTable::at: index out of range");
  return entries_[static_cast<std::size_t>(l) * (2 * l_max_ + 1) + (m + l_max_)];
}

cplx spherical_harmonic(int l, int m, AngularPoint p) {
  if (l < 0 || std::abs(m) > l) throw DomainError("spherical_harmonic: require |m| <= l");
  return HarmonicTable(l, p).at(l, m).value;
}

VectorHarmonicTriple vector_spherical_harmonics(const HarmonicTable& table, int l, int m) {
  if (l < 1) throw DomainError("vector_spherical_harmonics: l = 0 harmonics vanish");
  if (std::abs(m) > l) throw DomainError("vector_spherical_harmonics: require |m| <= l");
  const HarmonicWithGradient& h = table.at(l, m);
  const double ll = static_cast<double>(l);
  const double L = std::sqrt(ll * (ll + 1.0));
  const cplx i(0.0, 1.0);
  VectorHarmonicTriple t;
  // X = (r x grad Y) / (i L); e_r x (T_theta e_theta + T_phi e_phi) = T_theta e_phi - T_phi e_theta.
  t.X = {0.0, i * h.d_phi_over_sin / L, -i * h.d_theta / L};
  const double nv = 1.0 / std::sqrt((ll + 1.0) * (2.0 * ll + 1.0));
  const double nw = 1.0 / std::sqrt(ll * (2.0 * ll + 1.0));
  t.V = {-(ll + 1.0) * nv * h.value, nv * h.d_theta, nv * h.d_phi_over_sin};
  t.W = {ll * nw * h.value, nw * h.d_theta, nw * h.d_phi_over_sin};
  return t;
}

VectorHarmonicTriple vector_spherical_harmonics(int l, int m, AngularPoint p) {
  if (l < 1) throw DomainError("vector_spherical_harmonics: l = 0 harmonics vanish");
  if (std::abs(m) > l) throw DomainError("vector_spherical_harmonics: require |m| <= l");
  return vector_spherical_harmonics(HarmonicTable(l, p), l, m);
}

double legendre_p(int l, double x) {
  if (l < 0) throw DomainError("legendre_p: negative degree");
  if (!(std::abs(x) <= 1.0)) throw DomainError("legendre_p: require |x| <= 1");
  if (l == 0) return 1.0;
  double p0 = 1.0;
  double p1 = x;
  for (int n = 1; n < l; ++n) {
    const double p2 = ((2.0 * n + 1.0) * x * p1 - n * p0) / (n + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace qmie::specfun
