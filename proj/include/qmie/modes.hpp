#pragma once

#include <vector>

#include "qmie/miecore.hpp"
#include "qmie/specfun.hpp"
#include "qmie/vec3.hpp"

/// Field modes of the sphere problem: spherical eigenmodes S, their vacuum
/// limits S0 and scattered parts, plane waves G and scattering eigenmodes F.
/// All returned field values are Cartesian.
namespace qmie::modes {

using mie::ChannelIndex;
using mie::Polarization;
using mie::SphereSpec;

enum class Direction { Incoming, Outgoing };

/// Selects which closed form is used for the radial functions. `Auto` picks
/// the inside form for r < R and the outside form for r >= R; the other two
/// force a branch, which is how interface conditions are checked at r = R.
enum class Branch { Auto, Inside, Outside };

struct SphericalModeIndex {
  ChannelIndex channel;
  int m = 0;
  double k = 1.0;
  Direction direction = Direction::Outgoing;

  static SphericalModeIndex make(ChannelIndex channel, int m, double k,
                                 Direction direction = Direction::Outgoing);
};

/// Plane-wave label (g, kvec). e_1 = i e_phi(theta_k, phi_k), e_2 = e_theta(theta_k, phi_k).
struct PlaneModeIndex {
  int g = 1;
  Vec3 kvec{0.0, 0.0, 1.0};

  static PlaneModeIndex make(int g, Vec3 kvec);
  [[nodiscard]] double k() const { return norm(kvec); }
  [[nodiscard]] CVec3 polarization() const;
};

struct FieldSample {
  CVec3 value;
  Vec3 point;
};

struct PlaneWaveCoefficient {
  ChannelIndex channel;
  int m = 0;
  int g = 1;
  cplx value{};
};

/// f_{l l'}(k; r) for the channel of `mode`; l_prime must be l (TE) or l +- 1 (TM).
cplx radial_function(const SphereSpec& spec, const SphericalModeIndex& mode, int l_prime, double r,
                     Branch branch = Branch::Auto);

/// S_alpha(r), normalisation sqrt(2 k^2 / pi).
FieldSample spherical_eigenmode(const SphereSpec& spec, const SphericalModeIndex& mode, Vec3 point,
                                Branch branch = Branch::Auto);

/// curl S_alpha(r), from Bessel derivative recurrences. Requires r > 0.
FieldSample spherical_eigenmode_curl(const SphereSpec& spec, const SphericalModeIndex& mode, Vec3 point,
                                     Branch branch = Branch::Auto);

/// S0_alpha(r): the same mode with epsilon = 1.
FieldSample vacuum_eigenmode(const SphericalModeIndex& mode, Vec3 point);

/// S_alpha(r) - S0_alpha(r).
FieldSample scattered_part(const SphereSpec& spec, const SphericalModeIndex& mode, Vec3 point);

/// G_kappa(r) = exp(i k.r) e_g / (2 pi)^(3/2).
FieldSample plane_wave_mode(const PlaneModeIndex& kappa, Vec3 point);

/// c_{lmg}^p for l = 1..l_max, ordered by l, then m = -l..l, then TE before TM.
std::vector<PlaneWaveCoefficient> plane_wave_coefficients(const PlaneModeIndex& kappa, int l_max);

/// Expansion coefficients of exp(i k.r) u / (2 pi)^(3/2) for an arbitrary
/// complex transverse vector u, same ordering (g is reported as 0).
std::vector<PlaneWaveCoefficient> plane_wave_coefficients(Vec3 kvec, const CVec3& u, int l_max);

/// Precomputes phase shifts and c coefficients for one scattering eigenmode
/// F_kappa with its coefficients and channel table cached across points.
class ScatteringEigenmode {
 public:
  ScatteringEigenmode(const SphereSpec& spec, const PlaneModeIndex& kappa, Direction direction, int l_max);

  /// (1/|k|) sum_{plm} c S, truncated at l_max.
  [[nodiscard]] CVec3 full(Vec3 point) const;
  /// (1/|k|) sum_{plm} c S0, the truncated plane wave.
  [[nodiscard]] CVec3 vacuum(Vec3 point) const;
  /// (1/|k|) sum_{plm} c (S - S0).
  [[nodiscard]] CVec3 scattered(Vec3 point) const;
  /// Exact plane wave plus the truncated scattered sum.
  [[nodiscard]] CVec3 mie_form(Vec3 point) const;

  [[nodiscard]] int l_max() const { return l_max_; }
  [[nodiscard]] const PlaneModeIndex& kappa() const { return kappa_; }

 private:
  enum class Part { Full, Vacuum, Scattered };
  [[nodiscard]] CVec3 sum(Vec3 point, Part part) const;

  SphereSpec spec_;
  PlaneModeIndex kappa_;
  Direction direction_;
  int l_max_;
  mie::ChannelTable table_;
  std::vector<PlaneWaveCoefficient> coeffs_;
};

/// F_kappa(r) truncated at l_max.
FieldSample scattering_eigenmode(const SphereSpec& spec, const PlaneModeIndex& kappa, Direction direction,
                                 Vec3 point, int l_max);

/// G_kappa(r) + (1/|k|) sum c S_sc, scattered sum truncated at l_max.
FieldSample scattering_eigenmode_mie_form(const SphereSpec& spec, const PlaneModeIndex& kappa,
                                          Direction direction, Vec3 point, int l_max);

/// truncation_order(q) + ceil(k r_max): enough orders to rebuild the plane
/// wave out to radius r_max.
int field_truncation_order(const SphereSpec& spec, double k, double r_max);

/// Point-dipole approximation of the outgoing F_kappa outside the sphere:
/// G + k^2 (3 V (eps-1)/(eps+2)) G0(r) . G(0), G0 the free-space Green's tensor.
FieldSample dipole_limit_field(const SphereSpec& spec, const PlaneModeIndex& kappa, Vec3 point);

/// |S_alpha(r) / k|^2 at every point.
std::vector<double> field_intensity_map(const SphereSpec& spec, const SphericalModeIndex& mode,
                                        const std::vector<Vec3>& points);

}  // namespace qmie::modes
