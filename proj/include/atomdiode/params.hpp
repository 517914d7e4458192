#pragma once

namespace atomdiode {

/// Physical constants (SI). All internal computation is in SI units;
/// the cm/s and um of the figure captions appear only at config/output
/// boundaries.
namespace constants {
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double c = 2.99792458e8;        // m/s
}  // namespace constants

struct Atom {
  double mass;  // kg
};

/// Default atomic mass (20Ne); overridable in config.
inline constexpr double kNeonMass = 3.3199e-26;

/// k = m v0 / hbar, the wavenumber encoded by a recoil velocity v0.
inline double wavenumber_from_velocity(double v0, const Atom& atom) {
  return atom.mass * v0 / constants::hbar;
}

inline double velocity_from_wavenumber(double k, const Atom& atom) {
  return constants::hbar * k / atom.mass;
}

/// Delta = m c dv / hbar, the detuning encoded by a detuning velocity dv.
inline double detuning_from_velocity(double dv, const Atom& atom) {
  return atom.mass * constants::c * dv / constants::hbar;
}

inline double velocity_from_detuning(double delta, const Atom& atom) {
  return constants::hbar * delta / (atom.mass * constants::c);
}

}  // namespace atomdiode
