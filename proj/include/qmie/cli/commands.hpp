#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qmie/cli/output.hpp"
#include "qmie/vec3.hpp"

namespace qmie::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kToleranceError = 3, kIoError = 4 };

/// Invalid or inconsistent configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  double epsilon = 2.1;
  double radius = 1.0;
  std::optional<double> q;
  std::optional<double> k;
  std::optional<int> l_max;
  std::string output;  // empty: standard output
  std::string format = "csv";

  // palpha-scan
  double q_min = 0.01;
  double q_max = 5.0;
  int q_steps = 500;
  std::vector<std::string> modes{"TM1", "TE1", "TM2", "TE2", "TM3"};

  // field-map: square grid in the x-z plane, half-width in wavelengths
  std::string mode = "TM1";
  int m = 0;
  double extent = 1.0;
  int grid = 101;

  // diff-cross-section: incident plane wave along +z
  int g = 2;
  int n_theta = 37;
  int n_phi = 72;

  // g2-map
  int n_azimuth = 64;
  double theta1 = kPi / 4.0;
  double theta2 = 3.0 * kPi / 4.0;
  double kr_detector = 1e3;

  // bogoliubov: kappa = (g, k e_z), kappa' = (g_prime, ratio k n(theta', phi'))
  std::string kernel = "B";
  int g_prime = 1;
  double theta_prime = kPi / 2.0;
  double phi_prime = 0.0;
  double ratio_min = 0.5;
  double ratio_max = 1.5;
  int ratio_steps = 11;
  double tolerance = 1e-10;
  std::string direction = "out";

  /// q = kR from whichever of --q / --k was given; ConfigError unless exactly one.
  [[nodiscard]] double resolved_q() const;
};

/// Parses "TM1", "te2", ... into (polarization, l).
struct ModeLabel {
  std::string text;
  bool tm = true;
  int l = 1;
};
ModeLabel parse_mode_label(const std::string& s);

Document cmd_phase_shifts(const RunConfig& config);
Document cmd_palpha_scan(const RunConfig& config);
Document cmd_field_map(const RunConfig& config);
Document cmd_cross_section(const RunConfig& config);
Document cmd_diff_cross_section(const RunConfig& config);
Document cmd_g2_map(const RunConfig& config);
Document cmd_bogoliubov(const RunConfig& config);

/// Dispatches config.command, renders and writes the result. Returns an ExitCode.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line entry point (argv[0] is the program name).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qmie::cli
