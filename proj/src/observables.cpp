#include "qmie/observables.hpp"

#include <algorithm>
#include <cmath>

#include "qmie/errors.hpp"
#include "qmie/quadrature.hpp"

namespace qmie::obs {

namespace {

constexpr cplx kI{0.0, 1.0};

int resolve_l_max(double q, int l_max) { return l_max > 0 ? l_max : mie::truncation_order(q); }

double wavenumber(const SphereSpec& spec, double q) { return q / spec.radius; }

void check_elastic(const PlaneModeIndex& a, const PlaneModeIndex& b) {
  const double ka = a.k();
  const double kb = b.k();
  if (std::abs(ka - kb) > 1e-12 * std::max(ka, kb)) {
    throw DomainError("elastic process required: |k_out| must equal |k_in|");
  }
}

cplx phase_factor(const mie::PhaseShiftRecord& r) { return r.sin_phi * cplx{r.cos_phi, -r.sin_phi}; }

}  // namespace

double p_alpha(const SphereSpec& spec, double q, ChannelIndex channel) {
  const double s = mie::phase_shift(spec, q, channel).sin_phi;
  return s * s;
}

double p_alpha_far_field(const SphereSpec& spec, double q, ChannelIndex channel, int m, double kr_far) {
  const double k = wavenumber(spec, q);
  const double r = kr_far / k;
  const auto mode = modes::SphericalModeIndex::make(channel, m, k);
  const int l = channel.l;
  const auto rule = quadrature::sphere_product_rule(l + 8, 2 * l + 8);
  double sum = 0.0;
  for (std::size_t a = 0; a < rule.theta.size(); ++a) {
    for (double phi : rule.phi) {
      const Vec3 p = r * specfun::unit_r({rule.theta[a], phi});
      sum += rule.theta_weights[a] * rule.phi_weight * norm2(modes::scattered_part(spec, mode, p).value);
    }
  }
  return 0.5 * kPi * r * r * sum;
}

ScatteringAmplitude scattering_amplitude(const SphereSpec& spec, const PlaneModeIndex& kappa_out,
                                         const PlaneModeIndex& kappa_in, int l_max) {
  check_elastic(kappa_out, kappa_in);
  const double k = kappa_in.k();
  const double q = k * spec.radius;
  l_max = resolve_l_max(q, l_max);
  const auto table = mie::channel_table(spec, q, l_max);
  const auto c_out = modes::plane_wave_coefficients(kappa_out, l_max);
  const auto c_in = modes::plane_wave_coefficients(kappa_in, l_max);
  cplx sum{};
  for (std::size_t i = 0; i < c_in.size(); ++i) {
    const auto& rec = table.at(c_in[i].channel);
    sum += std::conj(c_out[i].value) * c_in[i].value * phase_factor(rec);
  }
  return {-(4.0 * kPi / k) * sum, kappa_out, kappa_in};
}

std::vector<SMatrixChannel> s_matrix_channels(const SphereSpec& spec, double q, int l_max) {
  l_max = resolve_l_max(q, l_max);
  const auto table = mie::channel_table(spec, q, l_max);
  std::vector<SMatrixChannel> out;
  for (int l = 1; l <= l_max; ++l) {
    for (auto p : {mie::Polarization::TE, mie::Polarization::TM}) {
      const double phi = table.at({p, l}).phi;
      out.push_back({{p, l}, std::polar(1.0, -2.0 * phi)});
    }
  }
  return out;
}

cplx transition_amplitude_kernel(const SphereSpec& spec, const PlaneModeIndex& kappa_out,
                                 const PlaneModeIndex& kappa_in, int l_max) {
  const cplx f = scattering_amplitude(spec, kappa_out, kappa_in, l_max).value;
  return kI * f / (2.0 * kPi * kappa_in.k());
}

cplx s_matrix_kernel(const SphereSpec& spec, const PlaneModeIndex& kappa_out, const PlaneModeIndex& kappa_in,
                     int l_max) {
  return 1.0 + transition_amplitude_kernel(spec, kappa_out, kappa_in, l_max);
}

CrossSectionResult total_cross_section(const SphereSpec& spec, double q, int l_max) {
  l_max = resolve_l_max(q, l_max);
  const double k = wavenumber(spec, q);
  const auto table = mie::channel_table(spec, q, l_max);
  CrossSectionResult res;
  res.l_max_used = l_max;
  for (int l = 1; l <= l_max; ++l) {
    for (auto p : {mie::Polarization::TE, mie::Polarization::TM}) {
      const double s = table.at({p, l}).sin_phi;
      const double contribution = (2.0 * kPi / (k * k)) * (2.0 * l + 1.0) * s * s;
      res.per_channel.push_back({{p, l}, contribution});
      res.sigma += contribution;
    }
  }
  const double theta = 0.7;
  const double phi = 0.3;
  const auto kappa = PlaneModeIndex::make(1, k * specfun::unit_r({theta, phi}));
  double angular = 0.0;
  for (const auto& c : modes::plane_wave_coefficients(kappa, l_max)) {
    angular += std::norm(c.value * table.at(c.channel).sin_phi);
  }
  res.sigma_angular = (16.0 * kPi * kPi / (k * k)) * angular;
  const double scale = std::max(std::abs(res.sigma), std::abs(res.sigma_angular));
  if (std::abs(res.sigma - res.sigma_angular) > 1e-9 * scale) {
    throw ConsistencyError("total_cross_section: angular and channel forms disagree");
  }
  return res;
}

double differential_cross_section(const SphereSpec& spec, const PlaneModeIndex& kappa_in,
                                  specfun::AngularPoint direction, int l_max) {
  const Vec3 k_out = kappa_in.k() * specfun::unit_r(direction);
  double total = 0.0;
  for (int g : {1, 2}) {
    total += std::norm(scattering_amplitude(spec, PlaneModeIndex::make(g, k_out), kappa_in, l_max).value);
  }
  return total;
}

G2Config G2Config::hom_default(const SphereSpec& spec, double q, int n) {
  if (n < 1) throw DomainError("g2 grid needs at least one point");
  const double k = wavenumber(spec, q);
  G2Config c;
  c.spec = spec;
  c.kappa1 = PlaneModeIndex::make(1, {k, 0.0, 0.0});
  c.kappa2 = PlaneModeIndex::make(1, {0.0, k, 0.0});
  c.theta1 = kPi / 4.0;
  c.theta2 = 3.0 * kPi / 4.0;
  for (int i = 0; i < n; ++i) {
    c.phi1.push_back(2.0 * kPi * i / n);
  }
  c.phi2 = c.phi1;
  return c;
}

CorrelationGrid g2_map(const G2Config& config) {
  const double k1 = config.kappa1.k();
  const double k2 = config.kappa2.k();
  const double k = std::max(k1, k2);
  const double r = config.r_detector > 0.0 ? config.r_detector : 1e3 / k;
  const double q_max = k * config.spec.radius;
  const int l_max = resolve_l_max(q_max, config.l_max);
  const modes::ScatteringEigenmode f1(config.spec, config.kappa1, modes::Direction::Outgoing, l_max);
  const modes::ScatteringEigenmode f2(config.spec, config.kappa2, modes::Direction::Outgoing, l_max);

  struct Projection {
    cplx first;
    cplx second;
  };
  auto project = [&](double theta, const std::vector<double>& phis, Vec3 pol) {
    std::vector<Projection> out;
    out.reserve(phis.size());
    for (double phi : phis) {
      const Vec3 p = r * specfun::unit_r({theta, phi});
      out.push_back({dot(f1.mie_form(p), pol), dot(f2.mie_form(p), pol)});
    }
    return out;
  };
  const auto d1 = project(config.theta1, config.phi1, config.pol_i);
  const auto d2 = project(config.theta2, config.phi2, config.pol_j);

  CorrelationGrid grid;
  grid.phi1 = config.phi1;
  grid.phi2 = config.phi2;
  grid.theta1 = config.theta1;
  grid.theta2 = config.theta2;
  grid.pol_i = config.pol_i;
  grid.pol_j = config.pol_j;
  grid.near_field_warning = k * r < 1e3 * (1.0 - 1e-12);
  grid.values.reserve(d1.size() * d2.size());

  std::vector<double> denominators;
  denominators.reserve(d1.size() * d2.size());
  double largest = 0.0;
  for (const auto& a : d1) {
    for (const auto& b : d2) {
      const double den = (k1 * std::norm(a.first) + k2 * std::norm(a.second)) *
                         (k1 * std::norm(b.first) + k2 * std::norm(b.second));
      denominators.push_back(den);
      largest = std::max(largest, den);
    }
  }
  std::size_t idx = 0;
  for (const auto& a : d1) {
    for (const auto& b : d2) {
      const double den = denominators[idx++];
      if (!(den > 1e-24 * largest)) {
        grid.values.emplace_back(std::nullopt);
        continue;
      }
      const double num = k1 * k2 * std::norm(a.first * b.second + a.second * b.first);
      grid.values.emplace_back(num / den);
    }
  }
  return grid;
}

double g2_small_particle(double phi1, double phi2) {
  const double s = std::sin(phi1 + phi2);
  return s * s;
}

}  // namespace qmie::obs
