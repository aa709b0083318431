#pragma once

#include <optional>
#include <vector>

#include "qmie/miecore.hpp"
#include "qmie/modes.hpp"

/// Single-photon scattering observables and two-photon correlation maps.
/// Dirac factors are never materialised: every elastic quantity is returned
/// as its finite kernel.
namespace qmie::obs {

using mie::ChannelIndex;
using mie::SphereSpec;
using modes::PlaneModeIndex;

struct ScatteringAmplitude {
  cplx value{};
  PlaneModeIndex kappa_out;
  PlaneModeIndex kappa_in;
};

struct ChannelContribution {
  ChannelIndex channel;
  double value = 0.0;
};

struct CrossSectionResult {
  double sigma = 0.0;          // (2 pi / k^2) sum (2l+1) sin^2 phi
  double sigma_angular = 0.0;  // (16 pi^2 / k^2) sum |c sin phi|^2
  std::vector<ChannelContribution> per_channel;
  int l_max_used = 0;
};

struct SMatrixChannel {
  ChannelIndex channel;
  cplx value{};  // exp(-2 i phi)
};

/// sin^2 phi of the channel.
double p_alpha(const SphereSpec& spec, double q, ChannelIndex channel);

/// P_alpha from (pi/2) r^2 \int |S_sc|^2 dOmega on a sphere of radius kr = kr_far.
double p_alpha_far_field(const SphereSpec& spec, double q, ChannelIndex channel, int m = 0,
                         double kr_far = 1e3);

/// l_max <= 0 selects truncation_order(kR).
ScatteringAmplitude scattering_amplitude(const SphereSpec& spec, const PlaneModeIndex& kappa_out,
                                         const PlaneModeIndex& kappa_in, int l_max = 0);

std::vector<SMatrixChannel> s_matrix_channels(const SphereSpec& spec, double q, int l_max = 0);

/// 1 + i f / (2 pi |k|), the S kernel with its delta factor removed.
cplx s_matrix_kernel(const SphereSpec& spec, const PlaneModeIndex& kappa_out, const PlaneModeIndex& kappa_in,
                     int l_max = 0);

/// i f / (2 pi |k|).
cplx transition_amplitude_kernel(const SphereSpec& spec, const PlaneModeIndex& kappa_out,
                                 const PlaneModeIndex& kappa_in, int l_max = 0);

/// Both forms of sigma; throws ConsistencyError if they differ by more than 1e-9 relative.
/// The angular form is evaluated for a fixed oblique incident wavevector.
CrossSectionResult total_cross_section(const SphereSpec& spec, double q, int l_max = 0);

/// sum_g |f(kappa_out(g), kappa_in)|^2 with kappa_out along `direction`.
double differential_cross_section(const SphereSpec& spec, const PlaneModeIndex& kappa_in,
                                  specfun::AngularPoint direction, int l_max = 0);

struct G2Config {
  SphereSpec spec;
  PlaneModeIndex kappa1;
  PlaneModeIndex kappa2;
  Vec3 pol_i{0.0, 0.0, 1.0};
  Vec3 pol_j{0.0, 0.0, 1.0};
  double theta1 = 0.0;
  double theta2 = 0.0;
  std::vector<double> phi1;
  std::vector<double> phi2;
  double r_detector = 0.0;  // <= 0 selects k r = 1e3
  int l_max = 0;            // <= 0 selects truncation_order(kR)

  /// Two-photon configuration of equal-frequency modes travelling along +x
  /// and +y (g = 1), z-polarised detection at theta1 = pi/4, theta2 = 3 pi/4,
  /// n x n uniform azimuth grid on [0, 2 pi).
  static G2Config hom_default(const SphereSpec& spec, double q, int n);
};

/// values[a * phi2.size() + b] is g2 at (phi1[a], phi2[b]); std::nullopt marks
/// points where neither photon produces a signal at one of the detectors.
struct CorrelationGrid {
  std::vector<double> phi1;
  std::vector<double> phi2;
  std::vector<std::optional<double>> values;
  double theta1 = 0.0;
  double theta2 = 0.0;
  Vec3 pol_i;
  Vec3 pol_j;
  bool near_field_warning = false;  // k r_detector < 1e3

  [[nodiscard]] const std::optional<double>& at(std::size_t a, std::size_t b) const {
    return values[a * phi2.size() + b];
  }
};

CorrelationGrid g2_map(const G2Config& config);

/// sin^2(phi1 + phi2).
double g2_small_particle(double phi1, double phi2);

}  // namespace qmie::obs
