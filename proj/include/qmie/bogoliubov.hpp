#pragma once

#include "qmie/miecore.hpp"
#include "qmie/modes.hpp"
#include "qmie/quadrature.hpp"

/// Kernels of the canonical transformation between plane-wave and
/// scattering-eigenmode operators. Volume integrals over the sphere are
/// reduced by multipole expansion: angular parts analytically, radial parts
/// by adaptive Gauss-Kronrod quadrature on [0, R].
namespace qmie::bogo {

using mie::SphereSpec;
using modes::Direction;
using modes::PlaneModeIndex;

enum class KernelKind { V, B, AOffDiagonal };

struct CouplingKernel {
  PlaneModeIndex kappa;
  PlaneModeIndex kappa_prime;
  cplx value{};
  double error = 0.0;  // absolute quadrature error estimate on `value`
  KernelKind kind = KernelKind::V;
};

struct KernelOptions {
  int l_max = 0;            // <= 0 selects truncation_order(max(|k|, |k'|) R)
  double tolerance = 1e-10; // relative tolerance of every radial integral
  Direction direction = Direction::Outgoing;
};

using ComplexEstimate = quadrature::ComplexEstimate;

/// \int_V exp(i (k' - k).r) d^3r through sum_l 4 pi (2l+1) P_l(khat.khat')
/// \int_0^R r^2 j_l(kr) j_l(k'r) dr.
ComplexEstimate plane_wave_volume_overlap(const SphereSpec& spec, Vec3 k, Vec3 k_prime,
                                          const KernelOptions& options = {});

/// \int_V W*(r) . F_kappa'(r) d^3r for W = exp(i k.r) u / (2 pi)^(3/2).
ComplexEstimate scattering_mode_overlap(const SphereSpec& spec, Vec3 k, const CVec3& u,
                                        const PlaneModeIndex& kappa_prime, const KernelOptions& options = {});

/// V = sqrt(w w') / 4 * ((eps-1)/eps) \int_V G*_kappa . G_kappa', with w = |k| (c = 1).
CouplingKernel coupling_v(const SphereSpec& spec, const PlaneModeIndex& kappa, const PlaneModeIndex& kappa_prime,
                          const KernelOptions& options = {});

/// B = -((eps-1)/2) sqrt(|k||k'|)/(|k|+|k'|) \int_V G*_kappa . F*_kappa'.
CouplingKernel b_coefficient(const SphereSpec& spec, const PlaneModeIndex& kappa,
                             const PlaneModeIndex& kappa_prime, const KernelOptions& options = {});

/// ((eps-1)/2) sqrt(|k||k'|)/(|k|-|k'|) \int_V G*_kappa . F_kappa'.
/// Throws PoleError when |k| == |k'|.
CouplingKernel a_offdiagonal_kernel(const SphereSpec& spec, const PlaneModeIndex& kappa,
                                    const PlaneModeIndex& kappa_prime, const KernelOptions& options = {});

/// sum_{plm} c*_{lmg}(kappa) c_{lmg'}(kappa') exp(-+ i phi) cos phi, the weight of
/// the delta(|k|-|k'|)/|k|^2 term of A. Requires |k| == |k'|.
cplx a_diagonal_channel_sum(const SphereSpec& spec, const PlaneModeIndex& kappa,
                            const PlaneModeIndex& kappa_prime, Direction direction = Direction::Outgoing,
                            int l_max = 0);

}  // namespace qmie::bogo
