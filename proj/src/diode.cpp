#include "atomdiode/diode.hpp"

#include <algorithm>
#include <cmath>

namespace atomdiode {

Classification classify(const ScatteringResult& result, int incident,
                        int target, double threshold) {
  const double sum_r = result.p_refl.sum();
  const double sum_t = result.p_trans.sum();

  const double budget_r = (1.0 - result.p_refl(incident)) +
                          (sum_r - result.p_refl(incident)) + sum_t;
  const double budget_t =
      sum_r + (sum_t - result.p_trans(target)) + (1.0 - result.p_trans(target));
  const double budget_a = sum_r + sum_t;

  Classification c;
  c.target = target;
  c.threshold = threshold;
  c.budget = std::min({budget_r, budget_t, budget_a});
  if (!result.near_threshold.empty()) {
    c.verdict = Verdict::Undefined;
    return c;
  }
  if (c.budget >= threshold) {
    c.verdict = Verdict::Other;
  } else if (budget_r == c.budget) {
    c.verdict = Verdict::FullReflection;
  } else if (budget_t == c.budget) {
    c.verdict = Verdict::FullTransmission;
  } else {
    c.verdict = Verdict::FullAbsorption;
  }
  return c;
}

double boundary_full_reflection(double theta, double w1_peak,
                                const Atom& atom) {
  const double ct = std::cos(theta);
  if (!(ct > 0.0)) return std::numeric_limits<double>::infinity();
  return std::sqrt(constants::hbar * w1_peak / atom.mass) / ct;
}

namespace {

// v^2 cos^2(t) - 2 v_l v sin(t) + (2 c dv - v_l^2), ascending real roots.
BoundaryRoots quadratic_roots(double theta, double v_l, double dv) {
  const double a = std::cos(theta) * std::cos(theta);
  const double b = -2.0 * v_l * std::sin(theta);
  const double c = 2.0 * constants::c * dv - v_l * v_l;
  BoundaryRoots r;
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0 || a == 0.0) return r;
  const double s = std::sqrt(disc);
  r.count = disc == 0.0 ? 1 : 2;
  r.v[0] = (-b - s) / (2.0 * a);
  r.v[1] = (-b + s) / (2.0 * a);
  return r;
}

}  // namespace

BoundaryRoots boundary_left_two_level(double theta, double v_p0, double dv_p) {
  return quadratic_roots(theta, v_p0, dv_p);
}

BoundaryRoots boundary_left_three_level(double theta, double v_ps,
                                        double dv_ps) {
  return quadratic_roots(theta, v_ps, dv_ps);
}

bool transmission_feasible(const BoundaryRoots& roots, double theta,
                           double v_l, double two_c_dv, double v) {
  (void)roots;
  const double q = v * v * std::cos(theta) * std::cos(theta) -
                   2.0 * v_l * v * std::sin(theta) + two_c_dv - v_l * v_l;
  return q >= 0.0;
}

double boundary_curve_value(const BoundaryRoots& roots) {
  for (int i = 0; i < roots.count; ++i)
    if (roots.v[i] >= 0.0) return roots.v[i];
  return 0.0;
}

namespace {

Classification classify_stage(const SchemeConfig& cfg, const Incidence& inc,
                              double threshold, double phase_step,
                              double pts_per_sigma) {
  const ChannelSet ch = build_channels(cfg, inc);
  const PotentialMatrix pot = build_potential(cfg, inc);
  const SolverGrid grid = SolverGrid::make(pot, ch, phase_step, pts_per_sigma);
  const ScatteringResult res = solve_scattering(pot, ch, inc, grid);
  return classify(res, inc.channel, cfg.target_channel(), threshold);
}

}  // namespace

CombinedVerdict classify_combined(const SchemeConfig& cfg, const Incidence& inc,
                                  double threshold, bool monolithic,
                                  double phase_step, double pts_per_sigma) {
  CombinedVerdict v;
  if (monolithic) {
    v.stage1 = classify_stage(cfg, inc, threshold, phase_step, pts_per_sigma);
    v.works = v.stage1.verdict == Verdict::FullAbsorption;
    return v;
  }

  SchemeConfig stage1 = cfg;
  stage1.quench_enabled = false;
  v.stage1 = classify_stage(stage1, inc, threshold, phase_step, pts_per_sigma);
  if (v.stage1.verdict == Verdict::FullReflection) {
    v.reason = BreakdownReason::RegionA;
    return v;
  }
  if (v.stage1.verdict != Verdict::FullTransmission) {
    v.reason = BreakdownReason::RegionC;
    return v;
  }

  SchemeConfig stage2 = cfg;
  stage2.pump_enabled = false;
  Incidence inc2 = inc;
  inc2.channel = cfg.target_channel();
  try {
    v.stage2 = classify_stage(stage2, inc2, threshold, phase_step,
                              pts_per_sigma);
  } catch (const ClosedIncidentChannel&) {
    v.reason = BreakdownReason::RegionB;
    return v;
  }
  if (v.stage2.verdict != Verdict::FullAbsorption) {
    v.reason = BreakdownReason::RegionB;
    return v;
  }
  v.works = true;
  return v;
}

}  // namespace atomdiode
