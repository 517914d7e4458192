#include "atomdiode/fields.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "atomdiode/scheme.hpp"

namespace atomdiode {

void PotentialMatrix::finalize() {
  double lo = 0.0, hi = 0.0, wmin = 0.0;
  bool any = false;
  auto take = [&](const GaussianProfile& g) {
    if (!g.active()) return;
    const double r = GaussianProfile::cutoff_sigmas * g.width;
    if (!any) {
      lo = g.center - r;
      hi = g.center + r;
      wmin = g.width;
      any = true;
    } else {
      lo = std::min(lo, g.center - r);
      hi = std::max(hi, g.center + r);
      wmin = std::min(wmin, g.width);
    }
  };
  for (const auto& list : diag_profiles)
    for (const auto& g : list) take(g);
  for (const auto& g : couplings) take(g);
  if (any) {
    x_min = lo;
    x_max = hi;
    min_width = wmin;
  }
}

PotentialMatrix PotentialMatrix::mirrored() const {
  PotentialMatrix out = *this;
  for (auto& list : out.diag_profiles)
    for (auto& g : list) g.center = -g.center;
  for (auto& g : out.couplings) g.center = -g.center;
  out.x_min = -x_max;
  out.x_max = -x_min;
  return out;
}

Eigen::MatrixXcd PotentialMatrix::operator()(double x) const {
  Eigen::MatrixXcd m(n, n);
  evaluate(x, m);
  return m;
}

GaussianProfile mirror_from_detuned_laser(const GaussianProfile& omega,
                                          double delta) {
  if (delta == 0.0)
    throw std::invalid_argument(
        "mirror_from_detuned_laser: adiabatic elimination needs Delta != 0");
  return GaussianProfile{omega.peak * omega.peak / (2.0 * delta), omega.center,
                         omega.width / std::sqrt(2.0)};
}

ComplexQuenchPotential quench_effective(const GaussianProfile& omega_q,
                                        double delta3d3, double gamma) {
  if (gamma < 0.0)
    throw std::invalid_argument("quench_effective: gamma must be >= 0");
  return ComplexQuenchPotential{omega_q, delta3d3, gamma};
}

bool absorption_condition(double omega_q_peak, double gamma, double delta3d3,
                          double sigma, double vx, double beta) {
  const double denom = 4.0 * delta3d3 * delta3d3 + gamma * gamma;
  return gamma * omega_q_peak * omega_q_peak / denom * sigma / vx > beta;
}

namespace {

GaussianProfile off() { return GaussianProfile{0.0, 0.0, 1e-5}; }

}  // namespace

PotentialMatrix assemble_two_level(const SchemeConfig& cfg,
                                   const std::array<double, 2>& delta3d) {
  PotentialMatrix pot;
  pot.n = 3;
  const double g = cfg.quench_enabled ? cfg.gamma : 0.0;
  pot.diag_const.resize(3);
  pot.diag_const << 0.0, complexd(-2.0 * delta3d[0], 0.0),
      complexd(-2.0 * (delta3d[0] + delta3d[1]), -g);
  pot.diag_profiles.assign(3, {});
  if (cfg.pump_enabled) {
    pot.diag_profiles[0].push_back(cfg.mirror_ground);
    pot.diag_profiles[1].push_back(cfg.mirror_excited);
  }
  pot.couplings = {cfg.pump_enabled ? cfg.pump.profile : off(),
                   cfg.quench_enabled ? cfg.quench.profile : off()};
  pot.finalize();
  return pot;
}

PotentialMatrix assemble_three_level(const SchemeConfig& cfg,
                                     const std::array<double, 3>& delta3d) {
  PotentialMatrix pot;
  pot.n = 4;
  const double g = cfg.quench_enabled ? cfg.gamma : 0.0;
  const double d2 = delta3d[0], d3 = delta3d[1], d4 = delta3d[2];
  pot.diag_const.resize(4);
  pot.diag_const << 0.0, complexd(-2.0 * d2, 0.0),
      complexd(-2.0 * (d2 + d3), 0.0), complexd(-2.0 * (d2 + d3 + d4), -g);
  pot.diag_profiles.assign(4, {});
  if (cfg.pump_enabled) pot.diag_profiles[0].push_back(cfg.mirror_ground);
  pot.couplings = {cfg.pump_enabled ? cfg.pump.profile : off(),
                   cfg.pump_enabled ? cfg.stokes.profile : off(),
                   cfg.quench_enabled ? cfg.quench.profile : off()};
  pot.finalize();
  return pot;
}

SchemeConfig reduce_three_to_two(const SchemeConfig& cfg) {
  if (cfg.kind != SchemeKind::ThreeLevelQuench)
    throw std::invalid_argument("reduce_three_to_two: three-level config required");
  const double delta_p = cfg.pump.detuning(cfg.atom);
  if (delta_p == 0.0)
    throw std::invalid_argument("reduce_three_to_two: Delta_P = 0");
  if (cfg.mirror_ground.active())
    throw std::invalid_argument(
        "reduce_three_to_two: mirror potential must be absent (W = 0)");

  const GaussianProfile& op = cfg.pump.profile;
  const GaussianProfile& os = cfg.stokes.profile;

  SchemeConfig out;
  out.kind = SchemeKind::TwoLevelQuench;
  out.atom = cfg.atom;
  out.gamma = cfg.gamma;
  out.pump_enabled = cfg.pump_enabled;
  out.quench_enabled = cfg.quench_enabled;
  out.quench = cfg.quench;

  // W1~ = Op^2/2Dp and W3~ = Os^2/2Dp: squared Gaussians, width sigma/sqrt(2).
  out.mirror_ground = mirror_from_detuned_laser(op, delta_p);
  out.mirror_excited = mirror_from_detuned_laser(os, delta_p);

  // O~ = Op Os / 2Dp: a product of Gaussians is a Gaussian again.
  const double sa2 = op.width * op.width, sb2 = os.width * os.width;
  const double sep = op.center - os.center;
  GaussianProfile prod;
  prod.center = (sb2 * op.center + sa2 * os.center) / (sa2 + sb2);
  prod.width = std::sqrt(sa2 * sb2 / (sa2 + sb2));
  prod.peak = op.peak * os.peak / (2.0 * delta_p) *
              std::exp(-0.5 * sep * sep / (sa2 + sb2));
  out.pump.profile = prod;

  // k~ = kP - kS and D~ = Dp - Ds, stated in velocity units.
  const double v_eff = cfg.pump.recoil_velocity - cfg.stokes.recoil_velocity;
  out.pump.recoil_velocity = std::abs(v_eff);
  out.pump.detuning_velocity =
      cfg.pump.detuning_velocity - cfg.stokes.detuning_velocity;
  out.pump.direction = v_eff >= 0.0 ? +1 : -1;
  return out;
}

double reduction_validity_ratio(const SchemeConfig& cfg) {
  const double delta_p = cfg.pump.detuning(cfg.atom);
  if (delta_p == 0.0)
    throw std::invalid_argument("reduction_validity_ratio: Delta_P = 0");
  return std::max(cfg.pump.profile.peak, cfg.stokes.profile.peak) /
         std::abs(2.0 * delta_p);
}

}  // namespace atomdiode
