#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "atomdiode/diode.hpp"
#include "atomdiode/scheme.hpp"

namespace atomdiode {

enum class SweepMode {
  Classify,            // reflect/transmit classification, quench per config
  QuenchOnly,          // quench stage alone, target state incident
  Combined,            // two-stage diode + quench verdict
  CombinedMonolithic,  // cross-check: single all-on solve
};

struct SweepSpec {
  double w_min = 0.0, w_max = 0.0;  // m/s, signed
  int w_count = 0;
  double theta_min = 0.0, theta_max = 0.0;  // rad
  int theta_count = 0;
  SweepMode mode = SweepMode::Classify;
  double threshold = kDefaultThreshold;
  double phase_step = 0.1;
  double pts_per_sigma = 50.0;

  void validate() const;  // throws std::invalid_argument
  double w_at(int iw) const;
  double theta_at(int it) const;
};

/// Verdict codes: R full reflection, T full transmission, A full
/// absorption, D diode works, O other, X failed, U undefined.
struct CellResult {
  double w = 0.0;      // m/s
  double theta = 0.0;  // rad
  char code = 'U';
  double budget = 0.0;
  Eigen::VectorXd p_refl;
  Eigen::VectorXd p_trans;
  double absorption = 0.0;
  std::string flags;  // semicolon-separated tokens, empty if none
};

struct PhaseDiagram {
  SweepSpec spec;
  int channels = 0;
  std::vector<std::string> config_echo;  // header echo lines
  std::vector<CellResult> cells;         // theta-major, w-minor

  const CellResult& at(int it, int iw) const {
    return cells[static_cast<size_t>(it) * spec.w_count + iw];
  }
};

using SweepProgress = std::function<void(int done, int total)>;

/// Evaluate every (speed, angle) cell. Deterministic: the result is
/// independent of the parallelism degree and of evaluation order.
/// Per-cell failures are recorded in the cell (code X), never aborting
/// the sweep.
PhaseDiagram run_sweep(const SchemeConfig& cfg, const SweepSpec& spec,
                       int parallelism = 1, SweepProgress progress = {});

enum class ScanDirection { Ascending, Descending };

struct BoundaryPoint {
  double theta = 0.0;  // rad
  double w = 0.0;      // m/s, first speed where the verdict changes
};

/// Per angle column: scanning speeds in the given direction, the first
/// speed at which the verdict stops matching `code` (after matching at
/// least once). Columns without a transition yield no entry.
std::vector<BoundaryPoint> extract_boundary(const PhaseDiagram& diagram,
                                            char code, ScanDirection dir);

/// Versioned tab-separated text format; lossless round trip.
void write_diagram(const PhaseDiagram& diagram, std::ostream& out);
void write_diagram(const PhaseDiagram& diagram, const std::string& path);
PhaseDiagram read_diagram(std::istream& in);
PhaseDiagram read_diagram(const std::string& path);

}  // namespace atomdiode
