#include "atomdiode/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace atomdiode {

namespace {

constexpr double kGrazingSpeed = 5e-4;  // m/s along x, below which cells are U

const char* mode_name(SweepMode m) {
  switch (m) {
    case SweepMode::Classify:
      return "classify";
    case SweepMode::QuenchOnly:
      return "quench-only";
    case SweepMode::Combined:
      return "combined";
    case SweepMode::CombinedMonolithic:
      return "combined-monolithic";
  }
  return "classify";
}

SweepMode mode_from_name(const std::string& s) {
  if (s == "classify") return SweepMode::Classify;
  if (s == "quench-only") return SweepMode::QuenchOnly;
  if (s == "combined") return SweepMode::Combined;
  if (s == "combined-monolithic") return SweepMode::CombinedMonolithic;
  throw std::runtime_error("unknown sweep mode: " + s);
}

char verdict_code(Verdict v) {
  switch (v) {
    case Verdict::FullReflection:
      return 'R';
    case Verdict::FullTransmission:
      return 'T';
    case Verdict::FullAbsorption:
      return 'A';
    case Verdict::Other:
      return 'O';
    case Verdict::Undefined:
      return 'U';
  }
  return 'U';
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == '\t' || c == '\n' || c == '\r' || c == ';') c = ' ';
  return s;
}

void eval_cell(const SchemeConfig& cfg, const SweepSpec& spec, CellResult& cell) {
  const int n = cfg.channel_count();
  cell.p_refl = Eigen::VectorXd::Zero(n);
  cell.p_trans = Eigen::VectorXd::Zero(n);
  cell.absorption = 0.0;
  cell.budget = 0.0;
  cell.flags.clear();

  if (std::abs(cell.w) * std::cos(cell.theta) < kGrazingSpeed) {
    cell.code = 'U';
    cell.flags = "grazing";
    return;
  }

  try {
    if (spec.mode == SweepMode::Combined ||
        spec.mode == SweepMode::CombinedMonolithic) {
      const Incidence inc{cell.w, cell.theta, 0};
      const CombinedVerdict v = classify_combined(
          cfg, inc, spec.threshold, spec.mode == SweepMode::CombinedMonolithic,
          spec.phase_step, spec.pts_per_sigma);
      if (v.works) {
        cell.code = 'D';
        cell.budget = std::max(v.stage1.budget, v.stage2.budget);
      } else {
        cell.code = 'O';
        switch (v.reason) {
          case BreakdownReason::RegionA:
            cell.flags = "reason=A";
            cell.budget = v.stage1.budget;
            break;
          case BreakdownReason::RegionC:
            cell.flags = "reason=C";
            cell.budget = v.stage1.budget;
            break;
          case BreakdownReason::RegionB:
            cell.flags = "reason=B";
            cell.budget = v.stage2.budget;
            break;
          case BreakdownReason::None:
            break;
        }
      }
      return;
    }

    SchemeConfig run = cfg;
    Incidence inc{cell.w, cell.theta, 0};
    if (spec.mode == SweepMode::QuenchOnly) {
      run.pump_enabled = false;
      inc.channel = cfg.target_channel();
    }
    const ChannelSet ch = build_channels(run, inc);
    const PotentialMatrix pot = build_potential(run, inc);
    const SolverGrid grid =
        SolverGrid::make(pot, ch, spec.phase_step, spec.pts_per_sigma);
    const ScatteringResult res = solve_scattering(pot, ch, inc, grid);
    const Classification cl =
        classify(res, inc.channel, run.target_channel(), spec.threshold);
    cell.code = verdict_code(cl.verdict);
    cell.budget = cl.budget;
    cell.p_refl = res.p_refl;
    cell.p_trans = res.p_trans;
    cell.absorption = res.absorption;
    if (res.ill_conditioned) cell.flags = "ill-conditioned";
  } catch (const ClosedIncidentChannel&) {
    cell.code = 'O';
    cell.flags = "closed-incident";
  } catch (const std::exception& e) {
    cell.code = 'X';
    cell.flags = "error=" + sanitize(e.what());
  }
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void SweepSpec::validate() const {
  if (w_count < 1 || theta_count < 1)
    throw std::invalid_argument("sweep: grid counts must be >= 1");
  if (!(std::isfinite(w_min) && std::isfinite(w_max) &&
        std::isfinite(theta_min) && std::isfinite(theta_max)))
    throw std::invalid_argument("sweep: non-finite grid bounds");
  if (w_count > 1 && !(w_max > w_min))
    throw std::invalid_argument("sweep: w_max must exceed w_min");
  if (theta_count > 1 && !(theta_max > theta_min))
    throw std::invalid_argument("sweep: theta_max must exceed theta_min");
  if (std::abs(theta_min) >= M_PI / 2.0 || std::abs(theta_max) >= M_PI / 2.0)
    throw std::invalid_argument("sweep: |theta| must stay below pi/2");
  if (!(threshold > 0.0) || !(phase_step > 0.0) || !(pts_per_sigma > 0.0))
    throw std::invalid_argument("sweep: tolerances must be positive");
}

double SweepSpec::w_at(int iw) const {
  if (w_count == 1) return w_min;
  return w_min + (w_max - w_min) * double(iw) / double(w_count - 1);
}

double SweepSpec::theta_at(int it) const {
  if (theta_count == 1) return theta_min;
  return theta_min + (theta_max - theta_min) * double(it) / double(theta_count - 1);
}

PhaseDiagram run_sweep(const SchemeConfig& cfg, const SweepSpec& spec,
                       int parallelism, SweepProgress progress) {
  spec.validate();
  PhaseDiagram d;
  d.spec = spec;
  d.channels = cfg.channel_count();
  const int total = spec.w_count * spec.theta_count;
  d.cells.resize(total);
  for (int it = 0; it < spec.theta_count; ++it)
    for (int iw = 0; iw < spec.w_count; ++iw) {
      CellResult& c = d.cells[size_t(it) * spec.w_count + iw];
      c.w = spec.w_at(iw);
      c.theta = spec.theta_at(it);
    }

  std::atomic<int> next{0};
  std::atomic<int> done{0};
  std::mutex progress_mu;
  auto worker = [&] {
    for (;;) {
      const int idx = next.fetch_add(1);
      if (idx >= total) return;
      eval_cell(cfg, spec, d.cells[idx]);
      const int n = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_mu);
        progress(n, total);
      }
    }
  };

  const int nthreads = std::max(1, std::min(parallelism, total));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return d;
}

std::vector<BoundaryPoint> extract_boundary(const PhaseDiagram& diagram,
                                            char code, ScanDirection dir) {
  std::vector<BoundaryPoint> pts;
  const int nw = diagram.spec.w_count;
  for (int it = 0; it < diagram.spec.theta_count; ++it) {
    bool matched = false;
    for (int k = 0; k < nw; ++k) {
      const int iw = dir == ScanDirection::Ascending ? k : nw - 1 - k;
      const CellResult& c = diagram.at(it, iw);
      if (c.code == code) {
        matched = true;
      } else if (matched) {
        pts.push_back({c.theta, c.w});
        break;
      }
    }
  }
  return pts;
}

void write_diagram(const PhaseDiagram& d, std::ostream& out) {
  if (d.cells.empty() ||
      d.cells.size() != size_t(d.spec.w_count) * d.spec.theta_count)
    throw std::invalid_argument("write_diagram: inconsistent or empty diagram");
  out << "# atomdiode-diagram v1\n";
  out << "# grid\t" << fmt(d.spec.w_min) << '\t' << fmt(d.spec.w_max) << '\t'
      << d.spec.w_count << '\t' << fmt(d.spec.theta_min) << '\t'
      << fmt(d.spec.theta_max) << '\t' << d.spec.theta_count << '\n';
  out << "# mode\t" << mode_name(d.spec.mode) << '\t' << fmt(d.spec.threshold)
      << '\t' << fmt(d.spec.phase_step) << '\t' << fmt(d.spec.pts_per_sigma)
      << '\n';
  out << "# channels\t" << d.channels << '\n';
  for (const auto& line : d.config_echo) out << "# config\t" << line << '\n';
  out << "# columns\tit\tiw\ttheta\tw\tcode\tbudget\tabsorption";
  for (int j = 0; j < d.channels; ++j) out << "\tpr" << j;
  for (int j = 0; j < d.channels; ++j) out << "\tpt" << j;
  out << "\tflags\n";
  for (int it = 0; it < d.spec.theta_count; ++it)
    for (int iw = 0; iw < d.spec.w_count; ++iw) {
      const CellResult& c = d.at(it, iw);
      out << it << '\t' << iw << '\t' << fmt(c.theta) << '\t' << fmt(c.w)
          << '\t' << c.code << '\t' << fmt(c.budget) << '\t'
          << fmt(c.absorption);
      for (int j = 0; j < d.channels; ++j)
        out << '\t' << fmt(j < c.p_refl.size() ? c.p_refl(j) : 0.0);
      for (int j = 0; j < d.channels; ++j)
        out << '\t' << fmt(j < c.p_trans.size() ? c.p_trans(j) : 0.0);
      out << '\t' << (c.flags.empty() ? "-" : c.flags) << '\n';
    }
  if (!out) throw std::runtime_error("write_diagram: stream failure");
}

void write_diagram(const PhaseDiagram& d, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_diagram: cannot open " + path);
  write_diagram(d, f);
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    const size_t pos = line.find('\t', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double to_double(const std::string& s) {
  size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::runtime_error("bad number field: " + s);
  return v;
}

}  // namespace

PhaseDiagram read_diagram(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "# atomdiode-diagram v1")
    throw std::runtime_error("read_diagram: missing or unsupported version line");

  PhaseDiagram d;
  bool have_grid = false, have_mode = false, have_channels = false;
  while (in.peek() == '#') {
    std::getline(in, line);
    const auto f = split_tabs(line);
    if (f[0] == "# grid" && f.size() == 7) {
      d.spec.w_min = to_double(f[1]);
      d.spec.w_max = to_double(f[2]);
      d.spec.w_count = std::stoi(f[3]);
      d.spec.theta_min = to_double(f[4]);
      d.spec.theta_max = to_double(f[5]);
      d.spec.theta_count = std::stoi(f[6]);
      have_grid = true;
    } else if (f[0] == "# mode" && f.size() == 5) {
      d.spec.mode = mode_from_name(f[1]);
      d.spec.threshold = to_double(f[2]);
      d.spec.phase_step = to_double(f[3]);
      d.spec.pts_per_sigma = to_double(f[4]);
      have_mode = true;
    } else if (f[0] == "# channels" && f.size() == 2) {
      d.channels = std::stoi(f[1]);
      have_channels = true;
    } else if (f[0] == "# config" && f.size() >= 2) {
      d.config_echo.push_back(line.substr(9));
    } else if (f[0] == "# columns") {
      // informational only
    } else {
      throw std::runtime_error("read_diagram: unrecognized header: " + line);
    }
  }
  if (!have_grid || !have_mode || !have_channels)
    throw std::runtime_error("read_diagram: incomplete header");

  const size_t total = size_t(d.spec.w_count) * d.spec.theta_count;
  d.cells.resize(total);
  const size_t ncols = 7 + 2 * size_t(d.channels) + 1;
  size_t seen = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_tabs(line);
    if (f.size() != ncols)
      throw std::runtime_error("read_diagram: bad row width");
    const int it = std::stoi(f[0]);
    const int iw = std::stoi(f[1]);
    if (it < 0 || it >= d.spec.theta_count || iw < 0 || iw >= d.spec.w_count)
      throw std::runtime_error("read_diagram: cell index out of range");
    CellResult& c = d.cells[size_t(it) * d.spec.w_count + iw];
    c.theta = to_double(f[2]);
    c.w = to_double(f[3]);
    if (f[4].size() != 1) throw std::runtime_error("read_diagram: bad code");
    c.code = f[4][0];
    c.budget = to_double(f[5]);
    c.absorption = to_double(f[6]);
    c.p_refl.resize(d.channels);
    c.p_trans.resize(d.channels);
    for (int j = 0; j < d.channels; ++j) c.p_refl(j) = to_double(f[7 + j]);
    for (int j = 0; j < d.channels; ++j)
      c.p_trans(j) = to_double(f[7 + d.channels + j]);
    c.flags = f.back() == "-" ? std::string() : f.back();
    ++seen;
  }
  if (seen != total)
    throw std::runtime_error("read_diagram: missing cells");
  return d;
}

PhaseDiagram read_diagram(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("read_diagram: cannot open " + path);
  return read_diagram(f);
}

}  // namespace atomdiode
