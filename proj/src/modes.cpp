#include "qmie/modes.hpp"

#include <cmath>

#include "qmie/errors.hpp"

namespace qmie::modes {

namespace {

using specfun::AngularPoint;
using specfun::HarmonicTable;

constexpr cplx kI{0.0, 1.0};

double normalisation(double k) { return k * std::sqrt(2.0 / kPi); }

cplx i_pow(int l) {
  switch (l % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void check_point(Vec3 p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
    throw DomainError("field point must be finite");
  }
}

void check_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("wavenumber must be finite and > 0");
}

// z_n'(x) from z_n and z_{n+1}.
double bessel_derivative(const std::vector<double>& z, int n, double x) {
  return (n / x) * z[n] - z[n + 1];
}

// Bessel values needed to evaluate every radial function of order <= n_max
// (and its first derivative) at one radius.
class RadialSampler {
 public:
  RadialSampler(const SphereSpec& spec, double k, double r, int n_max, Branch branch, bool need_derivative)
      : r_(r), k_(k), k_in_(std::sqrt(spec.epsilon) * k) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("radius must be finite and >= 0");
    inside_ = branch == Branch::Inside || (branch == Branch::Auto && r < spec.radius);
    const int top = n_max + (need_derivative ? 1 : 0);
    if (need_derivative && r == 0.0) throw DomainError("radial derivative requested at r = 0");
    j_ = specfun::spherical_bessel_j(top, k * r, top);
    if (inside_) {
      j_in_ = specfun::spherical_bessel_j(top, k_in_ * r, top);
    } else {
      if (r == 0.0) throw DomainError("outside branch requested at r = 0");
      y_ = specfun::spherical_bessel_y(top, k * r, top);
    }
  }

  [[nodiscard]] bool inside() const { return inside_; }
  [[nodiscard]] double r() const { return r_; }

  [[nodiscard]] double vacuum(int n) const { return j_[n]; }
  [[nodiscard]] double vacuum_derivative(int n) const { return k_ * bessel_derivative(j_, n, k_ * r_); }

  [[nodiscard]] cplx value(const mie::PhaseShiftRecord& rec, Direction dir, int n) const {
    const cplx phase{rec.cos_phi, -rec.sin_phi};
    cplx out;
    if (inside_) {
      out = phase * rec.gamma * j_in_[n];
    } else if (rec.sin_phi == 0.0) {
      out = j_[n];
    } else {
      out = j_[n] - kI * rec.sin_phi * phase * cplx{j_[n], y_[n]};
    }
    return dir == Direction::Outgoing ? out : std::conj(out);
  }

  [[nodiscard]] cplx derivative(const mie::PhaseShiftRecord& rec, Direction dir, int n) const {
    const cplx phase{rec.cos_phi, -rec.sin_phi};
    cplx out;
    if (inside_) {
      out = phase * rec.gamma * k_in_ * bessel_derivative(j_in_, n, k_in_ * r_);
    } else {
      const double x = k_ * r_;
      const double dj = k_ * bessel_derivative(j_, n, x);
      const double dy = k_ * bessel_derivative(y_, n, x);
      out = dj;
      if (rec.sin_phi != 0.0) out -= kI * rec.sin_phi * phase * cplx{dj, dy};
    }
    return dir == Direction::Outgoing ? out : std::conj(out);
  }

  // f - j(kr), formed without cancellation outside the sphere.
  [[nodiscard]] cplx scattered(const mie::PhaseShiftRecord& rec, Direction dir, int n) const {
    const cplx phase{rec.cos_phi, -rec.sin_phi};
    cplx out;
    if (inside_) {
      out = phase * rec.gamma * j_in_[n] - j_[n];
    } else if (rec.sin_phi == 0.0) {
      out = 0.0;
    } else {
      out = -kI * rec.sin_phi * phase * cplx{j_[n], y_[n]};
    }
    return dir == Direction::Outgoing ? out : std::conj(out);
  }

 private:
  double r_;
  double k_;
  double k_in_;
  bool inside_ = false;
  std::vector<double> j_;
  std::vector<double> y_;
  std::vector<double> j_in_;
};

struct RadialTriple {
  cplx same{};   // f_{ll}
  cplx upper{};  // f_{l,l+1}
  cplx lower{};  // f_{l,l-1}
};

// Local spherical components of N^{-1} S for given radial functions.
CVec3 assemble(Polarization p, int l, const specfun::VectorHarmonicTriple& vsh, const RadialTriple& f) {
  if (p == Polarization::TE) return f.same * vsh.X;
  const double a = std::sqrt(l / (2.0 * l + 1.0));
  const double b = std::sqrt((l + 1.0) / (2.0 * l + 1.0));
  return (a * f.upper) * vsh.V - (b * f.lower) * vsh.W;
}

void check_mode(const SphericalModeIndex& mode) {
  if (mode.channel.l < 1) throw DomainError("mode: l must be >= 1");
  if (std::abs(mode.m) > mode.channel.l) throw DomainError("mode: |m| must be <= l");
  check_k(mode.k);
}

CVec3 eigenmode_local(const SphereSpec& spec, const SphericalModeIndex& mode, const RadialSampler& rs,
                      const specfun::VectorHarmonicTriple& vsh, bool vacuum) {
  const int l = mode.channel.l;
  const mie::PhaseShiftRecord rec = vacuum ? mie::PhaseShiftRecord{}
                                           : mie::phase_shift(spec, mode.k * spec.radius, mode.channel);
  RadialTriple f;
  if (mode.channel.p == Polarization::TE) {
    f.same = rs.value(rec, mode.direction, l);
  } else {
    f.upper = rs.value(rec, mode.direction, l + 1);
    f.lower = rs.value(rec, mode.direction, l - 1);
  }
  return normalisation(mode.k) * assemble(mode.channel.p, l, vsh, f);
}

}  // namespace

SphericalModeIndex SphericalModeIndex::make(ChannelIndex channel, int m, double k, Direction direction) {
  SphericalModeIndex mode{channel, m, k, direction};
  check_mode(mode);
  return mode;
}

PlaneModeIndex PlaneModeIndex::make(int g, Vec3 kvec) {
  if (g != 1 && g != 2) throw DomainError("plane-wave polarization g must be 1 or 2");
  if (!(norm(kvec) > 0.0) || !std::isfinite(norm(kvec))) throw DomainError("wavevector must be nonzero");
  return {g, kvec};
}

CVec3 PlaneModeIndex::polarization() const {
  const AngularPoint dir = AngularPoint::of(kvec);
  if (g == 1) return kI * to_complex(specfun::unit_phi(dir));
  return to_complex(specfun::unit_theta(dir));
}

cplx radial_function(const SphereSpec& spec, const SphericalModeIndex& mode, int l_prime, double r,
                     Branch branch) {
  check_mode(mode);
  const int l = mode.channel.l;
  const bool ok = mode.channel.p == Polarization::TE ? l_prime == l : (l_prime == l - 1 || l_prime == l + 1);
  if (!ok) throw DomainError("radial_function: l_prime not allowed for this polarization");
  const RadialSampler rs(spec, mode.k, r, l_prime, branch, false);
  return rs.value(mie::phase_shift(spec, mode.k * spec.radius, mode.channel), mode.direction, l_prime);
}

FieldSample spherical_eigenmode(const SphereSpec& spec, const SphericalModeIndex& mode, Vec3 point,
                                Branch branch) {
  check_mode(mode);
  check_point(point);
  const AngularPoint dir = AngularPoint::of(point);
  const RadialSampler rs(spec, mode.k, norm(point), mode.channel.l + 1, branch, false);
  const auto vsh = specfun::vector_spherical_harmonics(mode.channel.l, mode.m, dir);
  return {specfun::spherical_to_cartesian(eigenmode_local(spec, mode, rs, vsh, false), dir), point};
}

FieldSample spherical_eigenmode_curl(const SphereSpec& spec, const SphericalModeIndex& mode, Vec3 point,
                                     Branch branch) {
  check_mode(mode);
  check_point(point);
  const double r = norm(point);
  const int l = mode.channel.l;
  const AngularPoint dir = AngularPoint::of(point);
  const RadialSampler rs(spec, mode.k, r, l + 1, branch, true);
  const auto rec = mie::phase_shift(spec, mode.k * spec.radius, mode.channel);
  const double ll = std::sqrt(l * (l + 1.0));
  CVec3 local;
  if (mode.channel.p == Polarization::TE) {
    const auto& h = HarmonicTable(l, dir).at(l, mode.m);
    const cplx f = rs.value(rec, mode.direction, l);
    const cplx rf_prime = f + r * rs.derivative(rec, mode.direction, l);
    const cplx pre = kI / ll;
    local = {pre * (l * (l + 1.0)) * (f / r) * h.value, pre * (rf_prime / r) * h.d_theta,
             pre * (rf_prime / r) * h.d_phi_over_sin};
  } else {
    const cplx fu = rs.value(rec, mode.direction, l + 1);
    const cplx fl = rs.value(rec, mode.direction, l - 1);
    const cplx dfu = rs.derivative(rec, mode.direction, l + 1);
    const cplx dfl = rs.derivative(rec, mode.direction, l - 1);
    const double cu = std::sqrt(l / (l + 1.0)) / (2.0 * l + 1.0);
    const double cl = std::sqrt((l + 1.0) / l) / (2.0 * l + 1.0);
    const cplx a_r = -(ll / (2.0 * l + 1.0)) * (fu + fl);
    const cplx b = cu * fu - cl * fl;
    const cplx rb_prime = b + r * (cu * dfu - cl * dfl);
    local = (kI * ll * (rb_prime - a_r) / r) * specfun::vector_spherical_harmonics(l, mode.m, dir).X;
  }
  return {specfun::spherical_to_cartesian(normalisation(mode.k) * local, dir), point};
}

FieldSample vacuum_eigenmode(const SphericalModeIndex& mode, Vec3 point) {
  return spherical_eigenmode(SphereSpec{}, mode, point);
}

FieldSample scattered_part(const SphereSpec& spec, const SphericalModeIndex& mode, Vec3 point) {
  check_mode(mode);
  check_point(point);
  const int l = mode.channel.l;
  const AngularPoint dir = AngularPoint::of(point);
  const RadialSampler rs(spec, mode.k, norm(point), l + 1, Branch::Auto, false);
  const auto rec = mie::phase_shift(spec, mode.k * spec.radius, mode.channel);
  RadialTriple f;
  if (mode.channel.p == Polarization::TE) {
    f.same = rs.scattered(rec, mode.direction, l);
  } else {
    f.upper = rs.scattered(rec, mode.direction, l + 1);
    f.lower = rs.scattered(rec, mode.direction, l - 1);
  }
  const auto vsh = specfun::vector_spherical_harmonics(l, mode.m, dir);
  const CVec3 local = normalisation(mode.k) * assemble(mode.channel.p, l, vsh, f);
  return {specfun::spherical_to_cartesian(local, dir), point};
}

FieldSample plane_wave_mode(const PlaneModeIndex& kappa, Vec3 point) {
  check_point(point);
  const double phase = dot(kappa.kvec, point);
  const cplx amp = std::polar(std::pow(2.0 * kPi, -1.5), phase);
  return {amp * kappa.polarization(), point};
}

std::vector<PlaneWaveCoefficient> plane_wave_coefficients(Vec3 kvec, const CVec3& u, int l_max) {
  if (l_max < 1) throw DomainError("plane_wave_coefficients: l_max must be >= 1");
  if (l_max > specfun::kDefaultOrderCap) throw ResourceError("plane_wave_coefficients: l_max exceeds cap");
  if (!(norm(kvec) > 0.0)) throw DomainError("plane_wave_coefficients: zero wavevector");
  const AngularPoint dir = AngularPoint::of(kvec);
  const CVec3 khat = to_complex((1.0 / norm(kvec)) * kvec);
  const CVec3 u_tm = cross(khat, u);
  const HarmonicTable table(l_max, dir);
  std::vector<PlaneWaveCoefficient> out;
  out.reserve(2 * static_cast<std::size_t>((l_max + 1) * (l_max + 1) - 1));
  for (int l = 1; l <= l_max; ++l) {
    const cplx il = i_pow(l);
    for (int m = -l; m <= l; ++m) {
      const CVec3 x = conj(specfun::spherical_to_cartesian(specfun::vector_spherical_harmonics(table, l, m).X, dir));
      out.push_back({{Polarization::TE, l}, m, 0, il * dot(x, u)});
      out.push_back({{Polarization::TM, l}, m, 0, il * dot(x, u_tm)});
    }
  }
  return out;
}

std::vector<PlaneWaveCoefficient> plane_wave_coefficients(const PlaneModeIndex& kappa, int l_max) {
  auto out = plane_wave_coefficients(kappa.kvec, kappa.polarization(), l_max);
  for (auto& c : out) c.g = kappa.g;
  return out;
}

ScatteringEigenmode::ScatteringEigenmode(const SphereSpec& spec, const PlaneModeIndex& kappa,
                                         Direction direction, int l_max)
    : spec_(spec), kappa_(kappa), direction_(direction), l_max_(l_max) {
  if (l_max < 1) throw DomainError("ScatteringEigenmode: l_max must be >= 1");
  if (l_max > specfun::kDefaultOrderCap) throw ResourceError("ScatteringEigenmode: l_max exceeds cap");
  table_ = mie::channel_table(spec, kappa.k() * spec.radius, l_max);
  coeffs_ = plane_wave_coefficients(kappa, l_max);
}

CVec3 ScatteringEigenmode::sum(Vec3 point, Part part) const {
  check_point(point);
  const double k = kappa_.k();
  const AngularPoint dir = AngularPoint::of(point);
  const RadialSampler rs(spec_, k, norm(point), l_max_ + 1, Branch::Auto, false);
  const HarmonicTable harmonics(l_max_, dir);
  CVec3 total;
  std::size_t idx = 0;
  for (int l = 1; l <= l_max_; ++l) {
    CVec3 sx, sv, sw;
    for (int m = -l; m <= l; ++m, idx += 2) {
      const auto vsh = specfun::vector_spherical_harmonics(harmonics, l, m);
      sx += coeffs_[idx].value * vsh.X;
      sv += coeffs_[idx + 1].value * vsh.V;
      sw += coeffs_[idx + 1].value * vsh.W;
    }
    auto radial = [&](const mie::PhaseShiftRecord& rec, int n) -> cplx {
      switch (part) {
        case Part::Full: return rs.value(rec, direction_, n);
        case Part::Vacuum: return rs.vacuum(n);
        default: return rs.scattered(rec, direction_, n);
      }
    };
    const auto& te = table_.te[l];
    const auto& tm = table_.tm[l];
    const double a = std::sqrt(l / (2.0 * l + 1.0));
    const double b = std::sqrt((l + 1.0) / (2.0 * l + 1.0));
    total += radial(te, l) * sx;
    total += (a * radial(tm, l + 1)) * sv;
    total -= (b * radial(tm, l - 1)) * sw;
  }
  const CVec3 local = (normalisation(k) / k) * total;
  return specfun::spherical_to_cartesian(local, dir);
}

CVec3 ScatteringEigenmode::full(Vec3 point) const { return sum(point, Part::Full); }
CVec3 ScatteringEigenmode::vacuum(Vec3 point) const { return sum(point, Part::Vacuum); }
CVec3 ScatteringEigenmode::scattered(Vec3 point) const { return sum(point, Part::Scattered); }

CVec3 ScatteringEigenmode::mie_form(Vec3 point) const {
  return plane_wave_mode(kappa_, point).value + scattered(point);
}

FieldSample scattering_eigenmode(const SphereSpec& spec, const PlaneModeIndex& kappa, Direction direction,
                                 Vec3 point, int l_max) {
  return {ScatteringEigenmode(spec, kappa, direction, l_max).full(point), point};
}

FieldSample scattering_eigenmode_mie_form(const SphereSpec& spec, const PlaneModeIndex& kappa,
                                          Direction direction, Vec3 point, int l_max) {
  return {ScatteringEigenmode(spec, kappa, direction, l_max).mie_form(point), point};
}

int field_truncation_order(const SphereSpec& spec, double k, double r_max) {
  check_k(k);
  if (!(r_max >= 0.0) || !std::isfinite(r_max)) throw DomainError("r_max must be finite and >= 0");
  const double n = mie::truncation_order(k * spec.radius, mie::kDefaultTruncationMargin, 1 << 30) +
                   std::ceil(k * r_max);
  if (n > specfun::kDefaultOrderCap) throw ResourceError("field truncation order exceeds cap");
  return static_cast<int>(n);
}

FieldSample dipole_limit_field(const SphereSpec& spec, const PlaneModeIndex& kappa, Vec3 point) {
  check_point(point);
  const double r = norm(point);
  if (r < spec.radius) throw DomainError("dipole_limit_field: point inside the sphere");
  const double k = kappa.k();
  const CVec3 e0 = std::pow(2.0 * kPi, -1.5) * kappa.polarization();
  const double strength = k * k * 4.0 * kPi * std::pow(spec.radius, 3) * (spec.epsilon - 1.0) /
                          (spec.epsilon + 2.0);
  const double kr = k * r;
  const cplx outgoing = std::polar(1.0 / (4.0 * kPi * r), kr);
  const cplx c_iso = 1.0 + kI / kr - 1.0 / (kr * kr);
  const cplx c_rad = -1.0 - 3.0 * kI / kr + 3.0 / (kr * kr);
  const Vec3 rhat = (1.0 / r) * point;
  const cplx proj = dot(e0, rhat);
  const CVec3 scattered = (strength * outgoing) * (c_iso * e0 + (c_rad * proj) * to_complex(rhat));
  return {plane_wave_mode(kappa, point).value + scattered, point};
}

std::vector<double> field_intensity_map(const SphereSpec& spec, const SphericalModeIndex& mode,
                                        const std::vector<Vec3>& points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const Vec3& p : points) out.push_back(norm2(spherical_eigenmode(spec, mode, p).value) / (mode.k * mode.k));
  return out;
}

}  // namespace qmie::modes
