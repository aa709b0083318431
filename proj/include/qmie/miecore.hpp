#pragma once

#include <string>
#include <vector>

#include "qmie/specfun.hpp"

/// Mie channel coefficients and phase shifts of a lossless dielectric sphere.
namespace qmie::mie {

/// Relative permittivity (epsilon >= 1) and radius (> 0) of the sphere.
/// Lengths are in whatever unit the caller uses consistently.
struct SphereSpec {
  double epsilon = 1.0;
  double radius = 1.0;

  /// Validating constructor; throws DomainError on epsilon < 1 or radius <= 0.
  static SphereSpec make(double epsilon, double radius);
};

enum class Polarization { TE, TM };

std::string to_string(Polarization p);
/// Accepts "TE"/"TM" (case-insensitive); throws DomainError otherwise.
Polarization parse_polarization(const std::string& s);

/// Mie channel (p, l), l >= 1.
struct ChannelIndex {
  Polarization p = Polarization::TM;
  int l = 1;

  static ChannelIndex make(Polarization p, int l);
  friend bool operator==(const ChannelIndex&, const ChannelIndex&) = default;
};

/// q = kR and q' = sqrt(epsilon) kR.
struct SizeParams {
  double q = 0.0;
  double q_prime = 0.0;

  static SizeParams make(const SphereSpec& spec, double q);
};

struct BoundaryCoefficients {
  double alpha = 1.0;
  double beta = 0.0;
};

struct PhaseShiftRecord {
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 1.0;
  double cos_phi = 1.0;
  double sin_phi = 0.0;
  double phi = 0.0;  // atan2(beta, alpha)
};

BoundaryCoefficients mie_boundary_coefficients(const SphereSpec& spec, double q, ChannelIndex channel);

PhaseShiftRecord phase_shift(const SphereSpec& spec, double q, ChannelIndex channel);

/// Phase shifts for both polarizations, l = 1..l_max, sharing one Bessel
/// evaluation. Index 0 is unused (l = 0 channels do not exist).
struct ChannelTable {
  double q = 0.0;
  int l_max = 0;
  std::vector<PhaseShiftRecord> te;
  std::vector<PhaseShiftRecord> tm;

  [[nodiscard]] const PhaseShiftRecord& at(ChannelIndex c) const;
};

ChannelTable channel_table(const SphereSpec& spec, double q, int l_max);

/// Small-particle estimate of sin(phi). For (TM, 1) the value is the leading
/// term -(2/3) q^3 (eps-1)/(eps+2); for every other channel only the scaling
/// envelope q^(2l+3) (TE) or q^(2l+1) (TM) is returned and `order_estimate_only`
/// is set. `beyond_validity` flags q > 0.3.
struct SmallParticleEstimate {
  double value = 0.0;
  bool order_estimate_only = false;
  bool beyond_validity = false;
};

SmallParticleEstimate small_particle_sin_phi(const SphereSpec& spec, double q, ChannelIndex channel);

inline constexpr int kDefaultTruncationMargin = 4;

/// ceil(q + 4 q^(1/3) + 2) + margin, clamped to [4, cap].
int truncation_order(double q, int margin = kDefaultTruncationMargin,
                     int cap = specfun::kDefaultOrderCap);

}  // namespace qmie::mie
