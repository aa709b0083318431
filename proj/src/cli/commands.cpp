#include "qmie/cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>

#include "qmie/bogoliubov.hpp"
#include "qmie/errors.hpp"
#include "qmie/miecore.hpp"
#include "qmie/modes.hpp"
#include "qmie/observables.hpp"

namespace qmie::cli {

namespace {

using mie::Polarization;

std::string fmt(double v) { return format_double(v); }
std::string fmt(int v) { return std::to_string(v); }

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ';';
    out += items[i];
  }
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

mie::SphereSpec sphere(const RunConfig& c) {
  require(std::isfinite(c.epsilon) && c.epsilon >= 1.0, "epsilon: must be finite and >= 1");
  require(std::isfinite(c.radius) && c.radius > 0.0, "radius: must be finite and > 0");
  return mie::SphereSpec::make(c.epsilon, c.radius);
}

KeyValues common_echo(const RunConfig& c, bool with_size) {
  KeyValues kv{{"epsilon", fmt(c.epsilon)}, {"radius", fmt(c.radius)}};
  if (with_size) {
    const double q = c.resolved_q();
    kv.emplace_back("q", fmt(q));
    kv.emplace_back("k", fmt(q / c.radius));
  }
  kv.emplace_back("l_max", c.l_max ? fmt(*c.l_max) : "auto");
  kv.emplace_back("format", c.format);
  return kv;
}

int l_max_or(const RunConfig& c, int fallback) {
  if (!c.l_max) return fallback;
  require(*c.l_max >= 1, "l-max: must be >= 1");
  return *c.l_max;
}

Value num(int v) { return static_cast<std::int64_t>(v); }

}  // namespace

double RunConfig::resolved_q() const {
  require(q.has_value() != k.has_value(), "exactly one of --q or --k must be given");
  if (q) {
    require(std::isfinite(*q) && *q > 0.0, "q: must be finite and > 0");
    return *q;
  }
  require(std::isfinite(*k) && *k > 0.0, "k: must be finite and > 0");
  require(std::isfinite(radius) && radius > 0.0, "radius: must be finite and > 0");
  return *k * radius;
}

ModeLabel parse_mode_label(const std::string& s) {
  std::string u = s;
  std::transform(u.begin(), u.end(), u.begin(), [](unsigned char ch) { return std::toupper(ch); });
  require(u.size() >= 3 && (u.rfind("TE", 0) == 0 || u.rfind("TM", 0) == 0),
          "mode: '" + s + "' is not of the form TE<l> or TM<l>");
  const std::string digits = u.substr(2);
  require(std::all_of(digits.begin(), digits.end(), [](unsigned char ch) { return std::isdigit(ch); }),
          "mode: '" + s + "' has a non-numeric order");
  const int l = std::stoi(digits);
  require(l >= 1, "mode: order must be >= 1 in '" + s + "'");
  return {u, u[1] == 'M', l};
}

Document cmd_phase_shifts(const RunConfig& c) {
  const auto spec = sphere(c);
  const double q = c.resolved_q();
  const int l_max = l_max_or(c, mie::truncation_order(q));
  const auto table = mie::channel_table(spec, q, l_max);
  Document doc{"phase-shifts", common_echo(c, true), {}, {"l", "p", "alpha", "beta", "gamma", "sin_phi", "cos_phi", "phi"}, {}};
  for (int l = 1; l <= l_max; ++l) {
    for (auto p : {Polarization::TE, Polarization::TM}) {
      const auto& r = table.at({p, l});
      doc.rows.push_back({num(l), mie::to_string(p), r.alpha, r.beta, r.gamma, r.sin_phi, r.cos_phi, r.phi});
    }
  }
  return doc;
}

Document cmd_palpha_scan(const RunConfig& c) {
  const auto spec = sphere(c);
  require(std::isfinite(c.q_min) && c.q_min > 0.0, "q-min: must be > 0");
  require(std::isfinite(c.q_max) && c.q_max > c.q_min, "q-max: must exceed q-min (empty range)");
  require(c.q_steps >= 2, "q-steps: must be >= 2");
  require(!c.modes.empty(), "modes: at least one mode is required");
  std::vector<ModeLabel> labels;
  for (const auto& m : c.modes) labels.push_back(parse_mode_label(m));

  KeyValues echo{{"epsilon", fmt(c.epsilon)}, {"q_min", fmt(c.q_min)}, {"q_max", fmt(c.q_max)},
                 {"q_steps", fmt(c.q_steps)}, {"modes", join(c.modes)}, {"format", c.format}};
  Document doc{"palpha-scan", echo, {}, {"q", "mode", "p_alpha"}, {}};
  for (const auto& label : labels) {
    const mie::ChannelIndex ch{label.tm ? Polarization::TM : Polarization::TE, label.l};
    double best_q = 0.0;
    double best = -1.0;
    for (int i = 0; i < c.q_steps; ++i) {
      const double q = c.q_min + (c.q_max - c.q_min) * i / (c.q_steps - 1);
      const double p = obs::p_alpha(spec, q, ch);
      if (p > best) {
        best = p;
        best_q = q;
      }
      doc.rows.push_back({q, label.text, p});
    }
    doc.summary.emplace_back("argmax_" + label.text, fmt(best_q));
  }
  return doc;
}

Document cmd_field_map(const RunConfig& c) {
  const auto spec = sphere(c);
  const double q = c.resolved_q();
  const double k = q / spec.radius;
  const auto label = parse_mode_label(c.mode);
  require(std::abs(c.m) <= label.l, "m: |m| must not exceed the mode order");
  require(c.grid >= 2, "grid: must be >= 2");
  require(std::isfinite(c.extent) && c.extent > 0.0, "extent: must be > 0");
  const auto mode = modes::SphericalModeIndex::make({label.tm ? Polarization::TM : Polarization::TE, label.l},
                                                    c.m, k);
  const double half = c.extent * 2.0 * kPi / k;
  std::vector<Vec3> points;
  for (int i = 0; i < c.grid; ++i) {
    for (int j = 0; j < c.grid; ++j) {
      const double x = -half + 2.0 * half * j / (c.grid - 1);
      const double z = -half + 2.0 * half * i / (c.grid - 1);
      points.push_back({x, 0.0, z});
    }
  }
  const auto values = modes::field_intensity_map(spec, mode, points);
  KeyValues echo = common_echo(c, true);
  echo.emplace_back("mode", label.text);
  echo.emplace_back("m", fmt(c.m));
  echo.emplace_back("extent_wavelengths", fmt(c.extent));
  echo.emplace_back("grid", fmt(c.grid));
  Document doc{"field-map", echo, {}, {"x", "y", "z", "value"}, {}};
  for (std::size_t i = 0; i < points.size(); ++i) {
    doc.rows.push_back({points[i].x, points[i].y, points[i].z, values[i]});
  }
  return doc;
}

Document cmd_cross_section(const RunConfig& c) {
  const auto spec = sphere(c);
  const double q = c.resolved_q();
  const int l_max = l_max_or(c, mie::truncation_order(q));
  const auto res = obs::total_cross_section(spec, q, l_max);
  Document doc{"cross-section", common_echo(c, true), {}, {"q", "k", "sigma", "sigma_angular", "l_max_used"}, {}};
  doc.rows.push_back({q, q / spec.radius, res.sigma, res.sigma_angular, num(res.l_max_used)});
  return doc;
}

Document cmd_diff_cross_section(const RunConfig& c) {
  const auto spec = sphere(c);
  const double q = c.resolved_q();
  const double k = q / spec.radius;
  const int l_max = l_max_or(c, mie::truncation_order(q));
  require(c.g == 1 || c.g == 2, "g: must be 1 or 2");
  require(c.n_theta >= 2, "n-theta: must be >= 2");
  require(c.n_phi >= 1, "n-phi: must be >= 1");
  const auto kin = modes::PlaneModeIndex::make(c.g, {0.0, 0.0, k});
  KeyValues echo = common_echo(c, true);
  echo.emplace_back("g", fmt(c.g));
  echo.emplace_back("n_theta", fmt(c.n_theta));
  echo.emplace_back("n_phi", fmt(c.n_phi));
  Document doc{"diff-cross-section", echo, {}, {"theta", "phi", "dsigma_domega"}, {}};
  for (int i = 0; i < c.n_theta; ++i) {
    const double theta = kPi * i / (c.n_theta - 1);
    for (int j = 0; j < c.n_phi; ++j) {
      const double phi = 2.0 * kPi * j / c.n_phi;
      doc.rows.push_back({theta, phi, obs::differential_cross_section(spec, kin, {theta, phi}, l_max)});
    }
  }
  doc.summary.emplace_back("sigma", fmt(obs::total_cross_section(spec, q, l_max).sigma));
  return doc;
}

Document cmd_g2_map(const RunConfig& c) {
  const auto spec = sphere(c);
  const double q = c.resolved_q();
  const double k = q / spec.radius;
  require(c.n_azimuth >= 1, "n-azimuth: must be >= 1");
  require(std::isfinite(c.kr_detector) && c.kr_detector > 0.0, "kr-detector: must be > 0");
  auto cfg = obs::G2Config::hom_default(spec, q, c.n_azimuth);
  cfg.theta1 = c.theta1;
  cfg.theta2 = c.theta2;
  cfg.r_detector = c.kr_detector / k;
  cfg.l_max = l_max_or(c, 0);
  const auto grid = obs::g2_map(cfg);
  KeyValues echo = common_echo(c, true);
  echo.emplace_back("n_azimuth", fmt(c.n_azimuth));
  echo.emplace_back("theta1", fmt(c.theta1));
  echo.emplace_back("theta2", fmt(c.theta2));
  echo.emplace_back("kr_detector", fmt(c.kr_detector));
  echo.emplace_back("kappa1", "g=1 along +x");
  echo.emplace_back("kappa2", "g=1 along +y");
  echo.emplace_back("detector_polarization", "z");
  Document doc{"g2-map", echo, {}, {"phi1", "phi2", "g2", "g2_small_particle"}, {}};
  int undefined = 0;
  double deviation = 0.0;
  for (std::size_t a = 0; a < grid.phi1.size(); ++a) {
    for (std::size_t b = 0; b < grid.phi2.size(); ++b) {
      const double ref = obs::g2_small_particle(grid.phi1[a], grid.phi2[b]);
      const auto& v = grid.at(a, b);
      if (!v) {
        ++undefined;
        doc.rows.push_back({grid.phi1[a], grid.phi2[b], Value{}, ref});
        continue;
      }
      deviation = std::max(deviation, std::abs(*v - ref));
      doc.rows.push_back({grid.phi1[a], grid.phi2[b], *v, ref});
    }
  }
  doc.summary.emplace_back("undefined_points", fmt(undefined));
  doc.summary.emplace_back("max_abs_deviation_from_small_particle", fmt(deviation));
  doc.summary.emplace_back("near_field_warning", grid.near_field_warning ? "true" : "false");
  return doc;
}

Document cmd_bogoliubov(const RunConfig& c) {
  const auto spec = sphere(c);
  const double q = c.resolved_q();
  const double k = q / spec.radius;
  require(c.kernel == "V" || c.kernel == "B" || c.kernel == "A", "kernel: must be V, B or A");
  require(c.g == 1 || c.g == 2, "g: must be 1 or 2");
  require(c.g_prime == 1 || c.g_prime == 2, "g-prime: must be 1 or 2");
  require(c.direction == "out" || c.direction == "in", "direction: must be 'out' or 'in'");
  require(c.ratio_steps >= 1, "ratio-steps: must be >= 1");
  require(std::isfinite(c.ratio_min) && c.ratio_min > 0.0 && c.ratio_max >= c.ratio_min,
          "ratio-min/ratio-max: need 0 < ratio-min <= ratio-max");
  require(std::isfinite(c.tolerance) && c.tolerance > 0.0, "tolerance: must be > 0");
  bogo::KernelOptions opts;
  opts.l_max = l_max_or(c, 0);
  opts.tolerance = c.tolerance;
  opts.direction = c.direction == "out" ? modes::Direction::Outgoing : modes::Direction::Incoming;
  const auto kappa = modes::PlaneModeIndex::make(c.g, {0.0, 0.0, k});
  const Vec3 dir = specfun::unit_r({c.theta_prime, c.phi_prime});

  KeyValues echo = common_echo(c, true);
  for (const auto& kv : KeyValues{{"kernel", c.kernel},
                                  {"g", fmt(c.g)},
                                  {"g_prime", fmt(c.g_prime)},
                                  {"theta_prime", fmt(c.theta_prime)},
                                  {"phi_prime", fmt(c.phi_prime)},
                                  {"ratio_min", fmt(c.ratio_min)},
                                  {"ratio_max", fmt(c.ratio_max)},
                                  {"ratio_steps", fmt(c.ratio_steps)},
                                  {"tolerance", fmt(c.tolerance)},
                                  {"direction", c.direction}}) {
    echo.push_back(kv);
  }
  Document doc{"bogoliubov", echo, {}, {"ratio", "k_prime", "re", "im", "error"}, {}};
  int excluded = 0;
  for (int i = 0; i < c.ratio_steps; ++i) {
    const double ratio =
        c.ratio_steps == 1 ? c.ratio_min : c.ratio_min + (c.ratio_max - c.ratio_min) * i / (c.ratio_steps - 1);
    const double kp = ratio * k;
    const auto kappa_p = modes::PlaneModeIndex::make(c.g_prime, kp * dir);
    bogo::CouplingKernel kernel;
    if (c.kernel == "V") {
      kernel = bogo::coupling_v(spec, kappa, kappa_p, opts);
    } else if (c.kernel == "B") {
      kernel = bogo::b_coefficient(spec, kappa, kappa_p, opts);
    } else {
      if (kappa.k() == kappa_p.k()) {
        ++excluded;
        continue;
      }
      kernel = bogo::a_offdiagonal_kernel(spec, kappa, kappa_p, opts);
    }
    doc.rows.push_back({ratio, kp, kernel.value.real(), kernel.value.imag(), kernel.error});
  }
  doc.summary.emplace_back("pole_points_excluded", fmt(excluded));
  return doc;
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    require(config.format == "csv" || config.format == "json", "format: must be 'csv' or 'json'");
    Document doc;
    if (config.command == "phase-shifts") {
      doc = cmd_phase_shifts(config);
    } else if (config.command == "palpha-scan") {
      doc = cmd_palpha_scan(config);
    } else if (config.command == "field-map") {
      doc = cmd_field_map(config);
    } else if (config.command == "cross-section") {
      doc = cmd_cross_section(config);
    } else if (config.command == "diff-cross-section") {
      doc = cmd_diff_cross_section(config);
    } else if (config.command == "g2-map") {
      doc = cmd_g2_map(config);
    } else if (config.command == "bogoliubov") {
      doc = cmd_bogoliubov(config);
    } else {
      throw ConfigError("unknown command '" + config.command + "'");
    }
    const std::string text = config.format == "json" ? render_json(doc) : render_csv(doc);
    if (config.output.empty()) {
      out << text;
    } else {
      write_atomic(config.output, text);
    }
    return kOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ResourceError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ToleranceError& e) {
    err << "numerical tolerance failure: " << e.what() << '\n';
    return kToleranceError;
  } catch (const ConsistencyError& e) {
    err << "numerical tolerance failure: " << e.what() << '\n';
    return kToleranceError;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoError;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Quantized Lorenz-Mie scattering off a dielectric sphere", "qmie"};
  app.set_config("--config", "", "TOML or INI file with option values; flags given on the command line win");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--epsilon", c.epsilon, "Relative permittivity (>= 1)")->capture_default_str();
  app.add_option("--radius", c.radius, "Sphere radius")->capture_default_str();
  auto* opt_q = app.add_option("--q", c.q, "Size parameter kR");
  auto* opt_k = app.add_option("--k", c.k, "Wavenumber (q = k * radius)");
  opt_q->excludes(opt_k);
  app.add_option("--l-max", c.l_max, "Multipole truncation order (default: automatic)");
  app.add_option("-o,--output", c.output, "Output file (default: standard output)");
  app.add_option("--format", c.format, "csv or json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));

  auto* phase = app.add_subcommand("phase-shifts", "Table of alpha, beta, gamma and phi per channel");
  auto* scan = app.add_subcommand("palpha-scan", "P_alpha = sin^2 phi over a q range, with argmax per mode");
  scan->add_option("--q-min", c.q_min)->capture_default_str();
  scan->add_option("--q-max", c.q_max)->capture_default_str();
  scan->add_option("--q-steps", c.q_steps)->capture_default_str();
  scan->add_option("--modes", c.modes, "Mode labels such as TM1 TE2")->capture_default_str();
  auto* field = app.add_subcommand("field-map", "|S/k|^2 on a square grid in the x-z plane");
  field->add_option("--mode", c.mode)->capture_default_str();
  field->add_option("--m", c.m)->capture_default_str();
  field->add_option("--extent", c.extent, "Half-width in wavelengths")->capture_default_str();
  field->add_option("--grid", c.grid, "Points per side")->capture_default_str();
  auto* cross = app.add_subcommand("cross-section", "Total scattering cross section");
  auto* diff = app.add_subcommand("diff-cross-section", "Differential cross section for a +z incident wave");
  diff->add_option("--g", c.g)->capture_default_str();
  diff->add_option("--n-theta", c.n_theta)->capture_default_str();
  diff->add_option("--n-phi", c.n_phi)->capture_default_str();
  auto* g2 = app.add_subcommand("g2-map", "Two-photon g2 over detector azimuths");
  g2->add_option("--n-azimuth", c.n_azimuth)->capture_default_str();
  g2->add_option("--theta1", c.theta1)->capture_default_str();
  g2->add_option("--theta2", c.theta2)->capture_default_str();
  g2->add_option("--kr-detector", c.kr_detector)->capture_default_str();
  auto* bog = app.add_subcommand("bogoliubov", "Bogoliubov kernel scan over |k'|/|k|");
  bog->add_option("--kernel", c.kernel, "V, B or A")->capture_default_str();
  bog->add_option("--g", c.g)->capture_default_str();
  bog->add_option("--g-prime", c.g_prime)->capture_default_str();
  bog->add_option("--theta-prime", c.theta_prime)->capture_default_str();
  bog->add_option("--phi-prime", c.phi_prime)->capture_default_str();
  bog->add_option("--ratio-min", c.ratio_min)->capture_default_str();
  bog->add_option("--ratio-max", c.ratio_max)->capture_default_str();
  bog->add_option("--ratio-steps", c.ratio_steps)->capture_default_str();
  bog->add_option("--tolerance", c.tolerance)->capture_default_str();
  bog->add_option("--direction", c.direction, "out or in")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }
  for (auto* sub : {phase, scan, field, cross, diff, g2, bog}) {
    if (sub->parsed()) c.command = sub->get_name();
  }
  return execute(c, out, err);
}

}  // namespace qmie::cli
