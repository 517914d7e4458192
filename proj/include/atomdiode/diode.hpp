#pragma once

#include <array>

#include "atomdiode/params.hpp"
#include "atomdiode/scheme.hpp"
#include "atomdiode/solver.hpp"

namespace atomdiode {

enum class Verdict {
  FullReflection,
  FullTransmission,
  FullAbsorption,
  Other,
  Undefined
};

/// Diodic classification of a converged scattering result. budget is the
/// left-hand side of the matched criterion (for Other: the smallest of the
/// three budgets).
struct Classification {
  Verdict verdict = Verdict::Other;
  int target = -1;  // transmission target channel (0-based)
  double budget = 1.0;
  double threshold = 0.01;
};

constexpr double kDefaultThreshold = 0.01;

/// Classify against the full-reflection / full-transmission(target) /
/// full-absorption criteria with the given probability threshold.
/// Near-threshold-flagged results yield Undefined.
Classification classify(const ScatteringResult& result, int incident,
                        int target, double threshold = kDefaultThreshold);

/// Full-reflection velocity bound v <= sqrt(hbar W1^ / m) / cos(theta).
double boundary_full_reflection(double theta, double w1_peak,
                                const Atom& atom);

/// Roots of the transmission-boundary quadratic
///   v^2 cos^2(theta) - 2 v_l v sin(theta) + 2 c dv - v_l^2 = 0
/// (0, 1 or 2 real roots, ascending). The feasible region is where the
/// quadratic is >= 0.
struct BoundaryRoots {
  int count = 0;
  std::array<double, 2> v{0.0, 0.0};
};

BoundaryRoots boundary_left_two_level(double theta, double v_p0, double dv_p);

/// Three-level analog with v_ps = v_P0 - v_S0 and the detuning term taken
/// as 2 c dv_ps (dimensional consistency with the channel wavenumbers).
BoundaryRoots boundary_left_three_level(double theta, double v_ps,
                                        double dv_ps);

bool transmission_feasible(const BoundaryRoots& roots, double theta,
                           double v_l, double two_c_dv, double v);

/// The boundary curve plotted in the figures: smallest nonnegative root,
/// or 0 when the whole speed axis is feasible.
double boundary_curve_value(const BoundaryRoots& roots);

enum class BreakdownReason {
  None,
  RegionA,  // full reflection instead of transmission
  RegionB,  // quench failure
  RegionC   // pump/STIRAP failure
};

struct CombinedVerdict {
  bool works = false;
  BreakdownReason reason = BreakdownReason::None;
  Classification stage1;  // diode without quenching, incident ground state
  Classification stage2;  // quenching alone, incident target state
};

/// The paper's two-stage combined analysis: a no-quench solve (incident
/// channel 1 from the left) followed by a quench-only solve with the
/// target state incident at its channel wavenumber. diodeWorks iff the
/// first yields FullTransmission and the second FullAbsorption. Reason
/// precedence A > C > B. With monolithic=true a single all-lasers-on solve
/// is used instead (cross-check mode; works iff FullAbsorption).
CombinedVerdict classify_combined(const SchemeConfig& cfg,
                                  const Incidence& inc,
                                  double threshold = kDefaultThreshold,
                                  bool monolithic = false,
                                  double phase_step = 0.1,
                                  double pts_per_sigma = 50.0);

}  // namespace atomdiode
