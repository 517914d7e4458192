#include "atomdiode/scheme.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace atomdiode {

namespace {

// Signed wave vector component along y: direction * (k0 + Delta/c).
double signed_wavenumber(const LaserField& f, const Atom& atom) {
  return f.direction * f.wavenumber(atom);
}

}  // namespace

std::array<double, 2> effective_detunings_two_level(const SchemeConfig& cfg,
                                                    const Incidence& inc) {
  const Atom& a = cfg.atom;
  const double v = std::abs(inc.w);
  const double ky = wavenumber_from_velocity(v * std::sin(inc.theta), a);
  const double r = constants::hbar / (2.0 * a.mass);

  const double kp = signed_wavenumber(cfg.pump, a);
  const double kq = signed_wavenumber(cfg.quench, a);
  const double d2 = cfg.pump.detuning(a) - r * (2.0 * ky * kp + kp * kp);
  const double ky2 = ky + kp;
  const double d3 = cfg.quench.detuning(a) - r * (2.0 * ky2 * kq + kq * kq);
  return {d2, d3};
}

std::array<double, 3> effective_detunings_three_level(const SchemeConfig& cfg,
                                                      const Incidence& inc) {
  const Atom& a = cfg.atom;
  const double v = std::abs(inc.w);
  const double ky = wavenumber_from_velocity(v * std::sin(inc.theta), a);
  const double r = constants::hbar / (2.0 * a.mass);

  const double kp = signed_wavenumber(cfg.pump, a);
  const double ks = signed_wavenumber(cfg.stokes, a);  // -y propagation
  const double kq = signed_wavenumber(cfg.quench, a);

  const double d2 = cfg.pump.detuning(a) - r * (2.0 * ky * kp + kp * kp);
  const double ky2 = ky + kp;
  // Stokes step is an emission: -Delta_S.
  const double d3 = -cfg.stokes.detuning(a) - r * (2.0 * ky2 * ks + ks * ks);
  const double ky3 = ky2 + ks;
  const double d4 = cfg.quench.detuning(a) - r * (2.0 * ky3 * kq + kq * kq);
  return {d2, d3, d4};
}

Eigen::VectorXcd channel_wavenumbers(double kx_incident,
                                     const Eigen::VectorXcd& diag,
                                     const Atom& atom) {
  const double moh = atom.mass / constants::hbar;
  Eigen::VectorXcd out(diag.size());
  for (Eigen::Index j = 0; j < diag.size(); ++j) {
    if (diag(j) == 0.0) {
      out(j) = kx_incident;
      continue;
    }
    complexd k = std::sqrt(kx_incident * kx_incident - moh * diag(j));
    // Branch: decay for x -> +inf. Principal sqrt gives Re >= 0; flip if
    // the imaginary part came out negative.
    if (k.imag() < 0.0 || (k.imag() == 0.0 && k.real() < 0.0)) k = -k;
    out(j) = k;
  }
  return out;
}

ChannelSet build_channels(const SchemeConfig& cfg, const Incidence& inc) {
  const Atom& a = cfg.atom;
  const double v = std::abs(inc.w);
  const double kx = wavenumber_from_velocity(v * std::cos(inc.theta), a);
  const double ky = wavenumber_from_velocity(v * std::sin(inc.theta), a);
  if (!(kx > 0.0))
    throw std::invalid_argument(
        "build_channels: longitudinal speed |w| cos(theta) must be positive");

  const int n = cfg.channel_count();
  ChannelSet ch;
  ch.atom = a;
  ch.kx_incident = kx;
  ch.incident = inc.channel;
  ch.ky.resize(n);
  ch.delta3d.resize(n);
  ch.diag.resize(n);
  ch.ky(0) = ky;
  ch.delta3d(0) = 0.0;
  ch.diag(0) = 0.0;

  const double g = cfg.quench_enabled ? cfg.gamma : 0.0;
  if (cfg.kind == SchemeKind::TwoLevelQuench) {
    const auto d = effective_detunings_two_level(cfg, inc);
    ch.ky(1) = ky + signed_wavenumber(cfg.pump, a);
    ch.ky(2) = ch.ky(1) + signed_wavenumber(cfg.quench, a);
    ch.delta3d(1) = d[0];
    ch.delta3d(2) = d[1];
    ch.diag(1) = -2.0 * d[0];
    ch.diag(2) = complexd(-2.0 * (d[0] + d[1]), -g);
  } else {
    const auto d = effective_detunings_three_level(cfg, inc);
    ch.ky(1) = ky + signed_wavenumber(cfg.pump, a);
    ch.ky(2) = ch.ky(1) + signed_wavenumber(cfg.stokes, a);
    ch.ky(3) = ch.ky(2) + signed_wavenumber(cfg.quench, a);
    ch.delta3d(1) = d[0];
    ch.delta3d(2) = d[1];
    ch.delta3d(3) = d[2];
    ch.diag(1) = -2.0 * d[0];
    ch.diag(2) = -2.0 * (d[0] + d[1]);
    ch.diag(3) = complexd(-2.0 * (d[0] + d[1] + d[2]), -g);
  }
  if (inc.channel < 0 || inc.channel >= n)
    throw std::invalid_argument("build_channels: incident channel out of range");
  ch.kx = channel_wavenumbers(kx, ch.diag, a);
  return ch;
}

PotentialMatrix build_potential(const SchemeConfig& cfg, const Incidence& inc) {
  if (cfg.kind == SchemeKind::TwoLevelQuench)
    return assemble_two_level(cfg, effective_detunings_two_level(cfg, inc));
  return assemble_three_level(cfg, effective_detunings_three_level(cfg, inc));
}

}  // namespace atomdiode
