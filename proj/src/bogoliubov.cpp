#include "qmie/bogoliubov.hpp"

#include <algorithm>
#include <cmath>

#include "qmie/errors.hpp"

namespace qmie::bogo {

namespace {

int resolve_l_max(const SphereSpec& spec, double k, double k_prime, int l_max) {
  if (l_max > 0) return l_max;
  return mie::truncation_order(std::max(k, k_prime) * spec.radius);
}

void check_k(Vec3 k) {
  if (!(norm(k) > 0.0) || !std::isfinite(norm(k))) throw DomainError("wavevector must be finite and nonzero");
}

void check_elastic(const PlaneModeIndex& a, const PlaneModeIndex& b) {
  if (std::abs(a.k() - b.k()) > 1e-12 * std::max(a.k(), b.k())) {
    throw DomainError("a_diagonal_channel_sum: |k| must equal |k'|");
  }
}

cplx channel_phase(const mie::PhaseShiftRecord& rec, Direction direction) {
  const cplx out{rec.cos_phi, -rec.sin_phi};
  return direction == Direction::Outgoing ? out : std::conj(out);
}

}  // namespace

ComplexEstimate plane_wave_volume_overlap(const SphereSpec& spec, Vec3 k, Vec3 k_prime,
                                          const KernelOptions& options) {
  check_k(k);
  check_k(k_prime);
  const double ka = norm(k);
  const double kb = norm(k_prime);
  const int l_max = resolve_l_max(spec, ka, kb, options.l_max);
  const double cos_gamma = std::clamp(dot(k, k_prime) / (ka * kb), -1.0, 1.0);
  std::vector<double> weight(l_max + 1);
  for (int l = 0; l <= l_max; ++l) weight[l] = 4.0 * kPi * (2.0 * l + 1.0) * specfun::legendre_p(l, cos_gamma);
  auto integrand = [&](double r) {
    const auto ja = specfun::spherical_bessel_j(l_max, ka * r);
    const auto jb = specfun::spherical_bessel_j(l_max, kb * r);
    double s = 0.0;
    for (int l = 0; l <= l_max; ++l) s += weight[l] * ja[l] * jb[l];
    return r * r * s;
  };
  const auto est = quadrature::adaptive(integrand, 0.0, spec.radius, options.tolerance);
  return {est.value, est.error};
}

ComplexEstimate scattering_mode_overlap(const SphereSpec& spec, Vec3 k, const CVec3& u,
                                        const PlaneModeIndex& kappa_prime, const KernelOptions& options) {
  check_k(k);
  const double ka = norm(k);
  const double kb = kappa_prime.k();
  const double kb_in = std::sqrt(spec.epsilon) * kb;
  const int l_max = resolve_l_max(spec, ka, kb, options.l_max);
  const auto table = mie::channel_table(spec, kb * spec.radius, l_max);
  const auto ca = modes::plane_wave_coefficients(k, u, l_max);
  const auto cb = modes::plane_wave_coefficients(kappa_prime, l_max);

  // Angular orthonormality leaves, per channel, sum_m c_a* c_b times the
  // inside radial amplitude; N N' / (|k||k'|) = 2 / pi.
  std::vector<cplx> te(l_max + 1);
  std::vector<cplx> tm(l_max + 1);
  for (std::size_t i = 0; i < cb.size(); ++i) {
    const auto& ch = cb[i].channel;
    const auto& rec = table.at(ch);
    const cplx w = (2.0 / kPi) * std::conj(ca[i].value) * cb[i].value * rec.gamma *
                   channel_phase(rec, options.direction);
    (ch.p == mie::Polarization::TE ? te : tm)[ch.l] += w;
  }
  auto integrand = [&](double r) {
    const auto ja = specfun::spherical_bessel_j(l_max + 1, ka * r);
    const auto jb = specfun::spherical_bessel_j(l_max + 1, kb_in * r);
    cplx s{};
    for (int l = 1; l <= l_max; ++l) {
      const double upper = l / (2.0 * l + 1.0) * ja[l + 1] * jb[l + 1];
      const double lower = (l + 1.0) / (2.0 * l + 1.0) * ja[l - 1] * jb[l - 1];
      s += te[l] * (ja[l] * jb[l]) + tm[l] * (upper + lower);
    }
    return r * r * s;
  };
  return quadrature::adaptive_complex(integrand, 0.0, spec.radius, options.tolerance);
}

CouplingKernel coupling_v(const SphereSpec& spec, const PlaneModeIndex& kappa, const PlaneModeIndex& kappa_prime,
                          const KernelOptions& options) {
  const auto overlap = plane_wave_volume_overlap(spec, kappa.kvec, kappa_prime.kvec, options);
  const cplx pol = hdot(kappa.polarization(), kappa_prime.polarization());
  const double pre = std::sqrt(kappa.k() * kappa_prime.k()) / 4.0 * ((spec.epsilon - 1.0) / spec.epsilon) /
                     std::pow(2.0 * kPi, 3);
  return {kappa, kappa_prime, pre * pol * overlap.value, std::abs(pre * pol) * overlap.error, KernelKind::V};
}

CouplingKernel b_coefficient(const SphereSpec& spec, const PlaneModeIndex& kappa,
                             const PlaneModeIndex& kappa_prime, const KernelOptions& options) {
  // G*_kappa is the plane wave with wavevector -k and polarisation e_g*, so
  // \int G* . F* = conj(\int H* . F) with H = G*_kappa.
  const auto overlap =
      scattering_mode_overlap(spec, -1.0 * kappa.kvec, conj(kappa.polarization()), kappa_prime, options);
  const double ka = kappa.k();
  const double kb = kappa_prime.k();
  const double pre = -0.5 * (spec.epsilon - 1.0) * std::sqrt(ka * kb) / (ka + kb);
  return {kappa, kappa_prime, pre * std::conj(overlap.value), std::abs(pre) * overlap.error, KernelKind::B};
}

CouplingKernel a_offdiagonal_kernel(const SphereSpec& spec, const PlaneModeIndex& kappa,
                                    const PlaneModeIndex& kappa_prime, const KernelOptions& options) {
  const double ka = kappa.k();
  const double kb = kappa_prime.k();
  if (ka == kb) throw PoleError("a_offdiagonal_kernel: |k| == |k'| lies on the excluded pole");
  const auto overlap = scattering_mode_overlap(spec, kappa.kvec, kappa.polarization(), kappa_prime, options);
  const double pre = 0.5 * (spec.epsilon - 1.0) * std::sqrt(ka * kb) / (ka - kb);
  return {kappa, kappa_prime, pre * overlap.value, std::abs(pre) * overlap.error, KernelKind::AOffDiagonal};
}

cplx a_diagonal_channel_sum(const SphereSpec& spec, const PlaneModeIndex& kappa,
                            const PlaneModeIndex& kappa_prime, Direction direction, int l_max) {
  check_elastic(kappa, kappa_prime);
  const double q = kappa.k() * spec.radius;
  l_max = l_max > 0 ? l_max : mie::truncation_order(q);
  const auto table = mie::channel_table(spec, q, l_max);
  const auto ca = modes::plane_wave_coefficients(kappa, l_max);
  const auto cb = modes::plane_wave_coefficients(kappa_prime, l_max);
  cplx sum{};
  for (std::size_t i = 0; i < ca.size(); ++i) {
    const auto& rec = table.at(ca[i].channel);
    sum += std::conj(ca[i].value) * cb[i].value * channel_phase(rec, direction) * rec.cos_phi;
  }
  return sum;
}

}  // namespace qmie::bogo
