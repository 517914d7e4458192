#pragma once

#include <random>

#include "atomdiode/scheme.hpp"

namespace atomdiode::testing {

// Two-level diode of the detuned-pump figure: mirrors at +-50 um,
// pump at 0, quench at 150 um, all sigma = 15 um.
inline SchemeConfig two_level_diode(double dv_p = 1.8e-11,
                                    double dv_q = 0.0) {
  SchemeConfig c;
  c.kind = SchemeKind::TwoLevelQuench;
  c.mirror_ground = {4e7, 50e-6, 15e-6};
  c.mirror_excited = {4e7, -50e-6, 15e-6};
  c.pump.profile = {1e6, 0.0, 15e-6};
  c.pump.recoil_velocity = 0.03;
  c.pump.detuning_velocity = dv_p;
  c.quench.profile = {2e6, 150e-6, 15e-6};
  c.quench.recoil_velocity = 0.03;
  c.quench.detuning_velocity = dv_q;
  c.gamma = 3e5;
  return c;
}

// Three-level STIRAP diode: Stokes at -20 um, pump at +20 um, mirror at
// 85 um, quench at 150 um.
inline SchemeConfig three_level_diode(double dv_ps = 0.6e-11) {
  SchemeConfig c;
  c.kind = SchemeKind::ThreeLevelQuench;
  c.mirror_ground = {4e7, 85e-6, 15e-6};
  c.pump.profile = {6e6, 20e-6, 15e-6};
  c.pump.recoil_velocity = 0.03;
  c.pump.detuning_velocity = dv_ps;
  c.stokes.profile = {6e6, -20e-6, 15e-6};
  c.stokes.recoil_velocity = 0.02;
  c.stokes.direction = -1;
  c.quench.profile = {2e6, 150e-6, 15e-6};
  c.quench.recoil_velocity = 0.03;
  c.gamma = 3e5;
  return c;
}

}  // namespace atomdiode::testing
