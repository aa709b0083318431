#include "qmie/miecore.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "qmie/errors.hpp"

namespace qmie::mie {

namespace {

void check_q(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("size parameter q must be finite and > 0");
}

struct BesselSet {
  std::vector<double> j_q;
  std::vector<double> y_q;
  std::vector<double> j_qp;
};

BesselSet bessel_set(const SizeParams& s, int l_max) {
  return {specfun::spherical_bessel_j(l_max + 1, s.q, specfun::kDefaultOrderCap + 1),
          specfun::spherical_bessel_y(l_max + 1, s.q, specfun::kDefaultOrderCap + 1),
          specfun::spherical_bessel_j(l_max + 1, s.q_prime, specfun::kDefaultOrderCap + 1)};
}

BoundaryCoefficients coefficients_from(const BesselSet& b, const SphereSpec& spec, const SizeParams& s,
                                       ChannelIndex c) {
  BoundaryCoefficients out;
  if (spec.epsilon == 1.0) return out;
  const int l = c.l;
  const double q = s.q;
  const double qp = s.q_prime;
  if (c.p == Polarization::TE) {
    out.alpha = q * qp * b.j_qp[l + 1] * b.y_q[l] - q * q * b.j_qp[l] * b.y_q[l + 1];
    out.beta = q * q * b.j_qp[l] * b.j_q[l + 1] - q * qp * b.j_qp[l + 1] * b.j_q[l];
  } else {
    const double mix = qp * ((spec.epsilon - 1.0) / spec.epsilon) * (l + 1.0);
    out.alpha = q * q * b.j_qp[l + 1] * b.y_q[l] - q * qp * b.j_qp[l] * b.y_q[l + 1] +
                mix * b.j_qp[l] * b.y_q[l];
    out.beta = q * qp * b.j_qp[l] * b.j_q[l + 1] - q * q * b.j_qp[l + 1] * b.j_q[l] -
               mix * b.j_qp[l] * b.j_q[l];
  }
  // Non-finite Bessel products at very high order: a non-scattering channel.
  if (!std::isfinite(out.alpha) || !std::isfinite(out.beta)) out = {1.0, 0.0};
  return out;
}

PhaseShiftRecord record_from(BoundaryCoefficients bc) {
  if (bc.alpha == 0.0 && bc.beta == 0.0) {
    throw DegenerateChannelError("phase_shift: alpha = beta = 0");
  }
  PhaseShiftRecord r;
  r.alpha = bc.alpha;
  r.beta = bc.beta;
  r.gamma = 1.0 / std::hypot(bc.alpha, bc.beta);
  r.cos_phi = r.gamma * bc.alpha;
  r.sin_phi = r.gamma * bc.beta;
  r.phi = std::atan2(bc.beta, bc.alpha);
  return r;
}

}  // namespace

SphereSpec SphereSpec::make(double epsilon, double radius) {
  if (!std::isfinite(epsilon) || epsilon < 1.0) throw DomainError("SphereSpec: epsilon must be >= 1");
  if (!std::isfinite(radius) || !(radius > 0.0)) throw DomainError("SphereSpec: radius must be > 0");
  return {epsilon, radius};
}

std::string to_string(Polarization p) { return p == Polarization::TE ? "TE" : "TM"; }

Polarization parse_polarization(const std::string& s) {
  std::string u = s;
  std::transform(u.begin(), u.end(), u.begin(), [](unsigned char ch) { return std::toupper(ch); });
  if (u == "TE") return Polarization::TE;
  if (u == "TM") return Polarization::TM;
  throw DomainError("unknown polarization '" + s + "' (expected TE or TM)");
}

ChannelIndex ChannelIndex::make(Polarization p, int l) {
  if (l < 1) throw DomainError("ChannelIndex: l must be >= 1");
  return {p, l};
}

SizeParams SizeParams::make(const SphereSpec& spec, double q) {
  check_q(q);
  return {q, std::sqrt(spec.epsilon) * q};
}

BoundaryCoefficients mie_boundary_coefficients(const SphereSpec& spec, double q, ChannelIndex channel) {
  check_q(q);
  if (channel.l < 1) throw DomainError("mie_boundary_coefficients: l must be >= 1");
  const SizeParams s = SizeParams::make(spec, q);
  return coefficients_from(bessel_set(s, channel.l), spec, s, channel);
}

PhaseShiftRecord phase_shift(const SphereSpec& spec, double q, ChannelIndex channel) {
  return record_from(mie_boundary_coefficients(spec, q, channel));
}

const PhaseShiftRecord& ChannelTable::at(ChannelIndex c) const {
  if (c.l < 1 || c.l > l_max) throw DomainError("ChannelTable::at: l out of range");
  return c.p == Polarization::TE ? te[c.l] : tm[c.l];
}

ChannelTable channel_table(const SphereSpec& spec, double q, int l_max) {
  check_q(q);
  if (l_max < 1) throw DomainError("channel_table: l_max must be >= 1");
  if (l_max > specfun::kDefaultOrderCap) throw ResourceError("channel_table: l_max exceeds cap");
  const SizeParams s = SizeParams::make(spec, q);
  const BesselSet b = bessel_set(s, l_max);
  ChannelTable t;
  t.q = q;
  t.l_max = l_max;
  t.te.resize(l_max + 1);
  t.tm.resize(l_max + 1);
  for (int l = 1; l <= l_max; ++l) {
    t.te[l] = record_from(coefficients_from(b, spec, s, {Polarization::TE, l}));
    t.tm[l] = record_from(coefficients_from(b, spec, s, {Polarization::TM, l}));
  }
  return t;
}

SmallParticleEstimate small_particle_sin_phi(const SphereSpec& spec, double q, ChannelIndex channel) {
  SmallParticleEstimate e;
  e.beyond_validity = q > 0.3;
  if (channel.p == Polarization::TM && channel.l == 1) {
    e.value = -(2.0 / 3.0) * q * q * q * (spec.epsilon - 1.0) / (spec.epsilon + 2.0);
    return e;
  }
  e.order_estimate_only = true;
  if (spec.epsilon == 1.0) return e;
  const int power = channel.p == Polarization::TE ? 2 * channel.l + 3 : 2 * channel.l + 1;
  e.value = std::pow(q, power);
  return e;
}

int truncation_order(double q, int margin, int cap) {
  if (!(q >= 0.0) || !std::isfinite(q)) throw DomainError("truncation_order: q must be finite and >= 0");
  const double base = std::ceil(q + 4.0 * std::cbrt(q) + 2.0);
  const double n = base + margin;
  if (n > cap) return cap;
  return std::max(4, static_cast<int>(n));
}

}  // namespace qmie::mie
