#pragma once

#include <array>

#include <Eigen/Core>

#include "atomdiode/fields.hpp"
#include "atomdiode/params.hpp"

namespace atomdiode {

enum class SchemeKind {
  TwoLevelQuench,   // channels |1>,|2>,|3>
  ThreeLevelQuench  // channels |1>..|4>
};

/// One flat laser sheet: Gaussian Rabi profile plus the velocity-unit
/// kinematics of the paper, v0 = hbar k0 / m and dv = hbar Delta / (m c).
struct LaserField {
  GaussianProfile profile;
  double recoil_velocity = 0.0;    // v0, m/s
  double detuning_velocity = 0.0;  // dv, m/s (may be negative)
  int direction = +1;              // propagation sign along y

  /// Wave vector modulus k = k0 + Delta/c = (m/hbar)(v0 + dv).
  double wavenumber(const Atom& atom) const {
    return wavenumber_from_velocity(recoil_velocity + detuning_velocity, atom);
  }
  double detuning(const Atom& atom) const {
    return detuning_from_velocity(detuning_velocity, atom);
  }
};

struct SchemeConfig {
  SchemeKind kind = SchemeKind::TwoLevelQuench;
  Atom atom{kNeonMass};

  GaussianProfile mirror_ground;   // W1 (two-level) / W (three-level)
  GaussianProfile mirror_excited;  // W2 (two-level only)
  LaserField pump;
  LaserField stokes;  // three-level only, propagates along -y
  LaserField quench;
  double gamma = 0.0;  // decay rate of the quenched level, rad/s

  bool pump_enabled = true;    // false: quenching-laser-alone study
  bool quench_enabled = true;  // false: diode without quenching

  int channel_count() const {
    return kind == SchemeKind::TwoLevelQuench ? 3 : 4;
  }
  /// Channel index (0-based) of the full-transmission target state:
  /// |2> for the two-level scheme, |3> for the three-level scheme.
  int target_channel() const {
    return kind == SchemeKind::TwoLevelQuench ? 1 : 2;
  }
};

/// Incidence on the laser sheets. w is the signed speed: w > 0 from the
/// left, w < 0 from the right (paper convention). theta in radians,
/// |theta| < pi/2. channel is the 0-based incident internal state.
struct Incidence {
  double w = 0.0;      // m/s, signed
  double theta = 0.0;  // rad
  int channel = 0;
};

/// Two-level effective 3D detunings (Doppler + recoil shifted):
///   d2 = Dp - (hbar/2m)(2 ky kP + kP^2)
///   d3 = Dq - (hbar/2m)(2 (ky+kP) kQ + kQ^2)
std::array<double, 2> effective_detunings_two_level(const SchemeConfig& cfg,
                                                    const Incidence& inc);

/// Three-level analog; the Stokes laser counter-propagates (-y):
///   d3 = -Ds - (hbar/2m)(-2 (ky+kP) kS + kS^2)
std::array<double, 3> effective_detunings_three_level(const SchemeConfig& cfg,
                                                      const Incidence& inc);

/// Per-internal-state kinematics of the effective 1D scattering problem.
struct ChannelSet {
  Atom atom{kNeonMass};
  Eigen::VectorXd ky;       // transverse wavenumber per channel, 1/m
  Eigen::VectorXd delta3d;  // effective 3D detuning per channel (entry 0 = 0)
  Eigen::VectorXcd diag;    // asymptotic diagonal of M(x), rad/s
  Eigen::VectorXcd kx;      // complex longitudinal wavenumber per channel
  double kx_incident = 0.0;  // m v cos(theta) / hbar of the ground channel
  int incident = 0;          // incident channel index (0-based)
};

/// kx_j = sqrt(kx^2 - (m/hbar) diag_j), branch Im >= 0 (and Re >= 0 when
/// Im = 0). A channel with diag_j = 0 returns kx_incident exactly.
Eigen::VectorXcd channel_wavenumbers(double kx_incident,
                                     const Eigen::VectorXcd& diag,
                                     const Atom& atom);

ChannelSet build_channels(const SchemeConfig& cfg, const Incidence& inc);

/// Assembled coupling matrix for the scheme at the given incidence.
PotentialMatrix build_potential(const SchemeConfig& cfg, const Incidence& inc);

}  // namespace atomdiode
