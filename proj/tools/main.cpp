#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "atomdiode/config.hpp"
#include "atomdiode/diode.hpp"
#include "atomdiode/solver.hpp"
#include "atomdiode/sweep.hpp"

namespace {

using namespace atomdiode;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

const double kDeg = M_PI / 180.0;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::FullReflection:
      return "full-reflection";
    case Verdict::FullTransmission:
      return "full-transmission";
    case Verdict::FullAbsorption:
      return "full-absorption";
    case Verdict::Other:
      return "other";
    case Verdict::Undefined:
      return "undefined";
  }
  return "undefined";
}

struct ConfigSource {
  std::string config_path;
  std::string preset;

  RunConfig load() const {
    if (!config_path.empty() && !preset.empty())
      throw ConfigError("give either --config or --preset, not both");
    if (!config_path.empty()) return load_config(config_path);
    if (!preset.empty()) return load_preset(preset);
    throw ConfigError("one of --config or --preset is required");
  }
};

void add_source(CLI::App* cmd, ConfigSource& src) {
  cmd->add_option("--config", src.config_path, "run configuration file");
  cmd->add_option("--preset", src.preset, "named preset configuration");
}

std::vector<std::string> echo_lines(const RunConfig& cfg) {
  std::vector<std::string> lines;
  std::istringstream in(emit_config(cfg));
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

int cmd_solve(const RunConfig& cfg, double w_cm, double theta_deg,
              double threshold) {
  const Incidence inc{w_cm * 1e-2, theta_deg * kDeg, 0};
  const ChannelSet ch = build_channels(cfg.scheme, inc);
  const PotentialMatrix pot = build_potential(cfg.scheme, inc);
  const SolverGrid grid =
      SolverGrid::make(pot, ch, cfg.sweep.phase_step, cfg.sweep.pts_per_sigma);
  ScatteringResult res = solve_scattering(pot, ch, inc, grid);
  res = verify_convergence(res, pot, ch, inc);
  const Classification cl =
      classify(res, inc.channel, cfg.scheme.target_channel(), threshold);

  std::cout << "w_cm_s=" << num(w_cm) << "\n";
  std::cout << "theta_deg=" << num(theta_deg) << "\n";
  std::cout << "channels=" << cfg.scheme.channel_count() << "\n";
  std::cout << "kx_incident=" << num(ch.kx_incident) << "\n";
  for (int j = 0; j < cfg.scheme.channel_count(); ++j) {
    std::cout << "kx_" << j << "_re=" << num(ch.kx(j).real()) << "\n";
    std::cout << "kx_" << j << "_im=" << num(ch.kx(j).imag()) << "\n";
  }
  for (int j = 0; j < res.p_refl.size(); ++j)
    std::cout << "pr_" << j << "=" << num(res.p_refl(j)) << "\n";
  for (int j = 0; j < res.p_trans.size(); ++j)
    std::cout << "pt_" << j << "=" << num(res.p_trans(j)) << "\n";
  std::cout << "reflected=" << num(res.reflected()) << "\n";
  std::cout << "transmitted=" << num(res.transmitted()) << "\n";
  std::cout << "absorption=" << num(res.absorption) << "\n";
  std::cout << "estimated_error=" << num(res.estimated_error) << "\n";
  std::cout << "grid_steps=" << res.grid.n_steps << "\n";
  std::cout << "verdict=" << verdict_name(cl.verdict) << "\n";
  std::cout << "budget=" << num(cl.budget) << "\n";
  std::cout << "target_channel=" << cl.target << "\n";
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, const std::string& out_flag, int jobs,
              double threshold) {
  if (!cfg.has_sweep)
    throw ConfigError("sweep: configuration has no [sweep] section");
  RunConfig run = cfg;
  run.sweep.threshold = threshold;
  const std::string out = !out_flag.empty()
                              ? out_flag
                              : (!cfg.output_path.empty() ? cfg.output_path
                                                          : "diagram.tsv");
  int last_pct = -1;
  PhaseDiagram d = run_sweep(run.scheme, run.sweep, jobs,
                             [&](int done, int total) {
                               const int pct = done * 100 / total;
                               if (pct != last_pct) {
                                 std::cerr << "\rsweep: " << done << "/"
                                           << total << " cells (" << pct
                                           << "%)" << std::flush;
                                 last_pct = pct;
                               }
                             });
  std::cerr << "\n";
  d.config_echo = echo_lines(run);
  write_diagram(d, out);

  int failed = 0;
  for (const auto& c : d.cells)
    if (c.code == 'X') ++failed;
  if (failed > 0)
    std::cerr << "sweep: " << failed << " of " << d.cells.size()
              << " cells failed\n";
  std::cerr << "sweep: wrote " << out << "\n";
  if (failed * 10 > int(d.cells.size())) return kExitNumerical;
  return kExitOk;
}

int cmd_boundaries(const RunConfig& cfg, const std::string& out_flag) {
  const std::string out = !out_flag.empty() ? out_flag : "boundaries.tsv";
  std::ofstream f(out);
  if (!f) throw ConfigError("boundaries: cannot open " + out);

  double t_min = -85.0 * kDeg, t_max = 85.0 * kDeg;
  int count = 171;
  if (cfg.has_sweep) {
    t_min = cfg.sweep.theta_min;
    t_max = cfg.sweep.theta_max;
    count = std::max(cfg.sweep.theta_count, 2);
  }
  const bool two_level = cfg.scheme.kind == SchemeKind::TwoLevelQuench;
  const double v_l = two_level ? cfg.scheme.pump.recoil_velocity
                               : cfg.scheme.pump.recoil_velocity -
                                     cfg.scheme.stokes.recoil_velocity;
  const double dv = two_level ? cfg.scheme.pump.detuning_velocity
                              : cfg.scheme.pump.detuning_velocity -
                                    cfg.scheme.stokes.detuning_velocity;

  f << "theta_deg\tv_rbound_cm_s\tv_lbound_cm_s\n";
  for (int i = 0; i < count; ++i) {
    const double theta = t_min + (t_max - t_min) * double(i) / double(count - 1);
    const double rb = boundary_full_reflection(
        theta, cfg.scheme.mirror_ground.peak, cfg.scheme.atom);
    const BoundaryRoots roots = two_level
                                    ? boundary_left_two_level(theta, v_l, dv)
                                    : boundary_left_three_level(theta, v_l, dv);
    const double lb = boundary_curve_value(roots);
    f << num(theta / kDeg) << '\t' << num(rb * 100.0) << '\t'
      << num(lb * 100.0) << '\n';
  }
  if (!f) throw std::runtime_error("boundaries: write failure");
  std::cerr << "boundaries: wrote " << out << "\n";
  return kExitOk;
}

int cmd_reduce(const RunConfig& cfg, const std::string& out_flag) {
  RunConfig reduced = cfg;
  reduced.scheme = reduce_three_to_two(cfg.scheme);
  std::cerr << "reduce: validity ratio max(Omega)/|2 Delta_P| = "
            << num(reduction_validity_ratio(cfg.scheme)) << "\n";
  const std::string text = emit_config(reduced);
  if (out_flag.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_flag);
    if (!f) throw ConfigError("reduce: cannot open " + out_flag);
    f << text;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multichannel atom-diode scattering and phase-diagram tool"};
  app.require_subcommand(1);

  ConfigSource solve_src, sweep_src, bounds_src, reduce_src;
  double w_cm = 0.0, theta_deg = 0.0;
  double solve_threshold = kDefaultThreshold;
  double sweep_threshold = kDefaultThreshold;
  std::string sweep_out, bounds_out, reduce_out;
  int jobs = std::max(1u, std::thread::hardware_concurrency());

  CLI::App* solve = app.add_subcommand(
      "solve", "single-incidence scattering probabilities and verdict");
  add_source(solve, solve_src);
  solve->add_option("--w", w_cm, "signed speed, cm/s (negative: from the right)")
      ->required();
  solve->add_option("--theta", theta_deg, "incidence angle, degrees")
      ->required();
  solve->add_option("--threshold", solve_threshold,
                    "classification probability threshold");

  CLI::App* sweep =
      app.add_subcommand("sweep", "phase-diagram sweep over (w, theta)");
  add_source(sweep, sweep_src);
  sweep->add_option("--out", sweep_out, "output diagram path");
  sweep->add_option("--jobs", jobs, "worker thread count");
  sweep->add_option("--threshold", sweep_threshold,
                    "classification probability threshold");

  CLI::App* bounds = app.add_subcommand(
      "boundaries", "analytic reflection/transmission boundary curves");
  add_source(bounds, bounds_src);
  bounds->add_option("--out", bounds_out, "output curve path");

  CLI::App* reduce = app.add_subcommand(
      "reduce", "large-detuning reduction of a three-level config");
  add_source(reduce, reduce_src);
  reduce->add_option("--out", reduce_out, "output config path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve->parsed())
      return cmd_solve(solve_src.load(), w_cm, theta_deg, solve_threshold);
    if (sweep->parsed())
      return cmd_sweep(sweep_src.load(), sweep_out, jobs, sweep_threshold);
    if (bounds->parsed()) return cmd_boundaries(bounds_src.load(), bounds_out);
    if (reduce->parsed()) return cmd_reduce(reduce_src.load(), reduce_out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
