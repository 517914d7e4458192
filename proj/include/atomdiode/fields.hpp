#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Core>

#include "atomdiode/params.hpp"

namespace atomdiode {

using complexd = std::complex<double>;

/// Gaussian envelope peak * exp(-(x-x0)^2 / (2 sigma^2)).
/// Treated as exactly zero beyond cutoff_sigmas from the center
/// (exp(-32) ~ 1e-14, below solver tolerance); the interaction box
/// of a potential is the union of these supports.
struct GaussianProfile {
  double peak = 0.0;    // rad/s
  double center = 0.0;  // m
  double width = 1e-5;  // sigma, m

  static constexpr double cutoff_sigmas = 8.0;

  double value(double x) const {
    if (peak == 0.0) return 0.0;
    const double u = (x - center) / width;
    if (std::abs(u) > cutoff_sigmas) return 0.0;
    return peak * std::exp(-0.5 * u * u);
  }
  bool active() const { return peak != 0.0; }
};

/// Position-dependent coupling matrix M(x) (rad/s) of the effective 1D
/// equation (hbar^2 kx^2 / 2m) phi = [px^2/2m + (hbar/2) M(x)] phi.
/// Off-diagonal entries are real symmetric Rabi couplings on the first
/// off-diagonal; the anti-Hermitian part is confined to diagonal decay
/// terms. M(x) equals diag_const outside the interaction box.
struct PotentialMatrix {
  int n = 0;
  Eigen::VectorXcd diag_const;  // asymptotic diagonal (rad/s)
  std::vector<std::vector<GaussianProfile>> diag_profiles;
  std::vector<GaussianProfile> couplings;  // entry i sits at (i, i+1)

  double x_min = -5e-5;
  double x_max = 5e-5;
  double min_width = 1e-5;  // smallest active sigma

  /// Recompute the interaction box and min_width from active profiles.
  void finalize();

  /// The x -> -x reflected potential (used for right incidence).
  PotentialMatrix mirrored() const;

  template <class Mat>
  void evaluate(double x, Mat& out) const {
    out.setZero();
    for (int i = 0; i < n; ++i) {
      complexd d = diag_const(i);
      for (const auto& g : diag_profiles[i]) d += g.value(x);
      out(i, i) = d;
    }
    for (int i = 0; i + 1 < n; ++i) {
      const double cpl = couplings[i].value(x);
      out(i, i + 1) = cpl;
      out(i + 1, i) = cpl;
    }
  }

  Eigen::MatrixXcd operator()(double x) const;
};

/// Complex potential W_eff(x) hbar/2 from adiabatic elimination of the
/// quenched level: W_eff = 2 d3 Oq^2/(4 d3^2 + g^2) - i g Oq^2/(4 d3^2 + g^2).
struct ComplexQuenchPotential {
  GaussianProfile omega_q;
  double delta3 = 0.0;  // effective 3D detuning of the quenched level, rad/s
  double gamma = 0.0;   // decay rate, rad/s

  complexd value(double x) const {
    const double o = omega_q.value(x);
    const double denom = 4.0 * delta3 * delta3 + gamma * gamma;
    return complexd(2.0 * delta3 * o * o / denom, -gamma * o * o / denom);
  }
  double gamma_eff(double x) const { return -value(x).imag(); }
};

/// Effective mirror potential W(x) = Omega(x)^2 / (2 Delta) of a far
/// detuned laser; the square of a Gaussian is a Gaussian of width
/// sigma/sqrt(2). Throws std::invalid_argument for Delta = 0.
GaussianProfile mirror_from_detuned_laser(const GaussianProfile& omega,
                                          double delta);

ComplexQuenchPotential quench_effective(const GaussianProfile& omega_q,
                                        double delta3d3, double gamma);

/// Crossing-time absorption criterion
///   gamma Oq^2/(4 d3^2 + g^2) * sigma / vx > beta  (beta ~ 3).
bool absorption_condition(double omega_q_peak, double gamma, double delta3d3,
                          double sigma, double vx, double beta);

struct SchemeConfig;

/// 3x3 matrix of the two-level-plus-quench scheme:
/// diag (W1, W2 - 2 d2, -2(d2+d3) - i gamma), couplings (Omega_P, Omega_Q).
PotentialMatrix assemble_two_level(const SchemeConfig& cfg,
                                   const std::array<double, 2>& delta3d);

/// 4x4 matrix of the three-level-plus-quench scheme.
PotentialMatrix assemble_three_level(const SchemeConfig& cfg,
                                     const std::array<double, 3>& delta3d);

/// Large-detuning reduction of the three-level scheme (mirror absent) to an
/// effective two-level configuration: W1~ = Op^2/2Dp, W3~ = Os^2/2Dp,
/// O~ = Op Os/2Dp, k~ = kP - kS, D~ = Dp - Ds. Throws for Delta_P = 0 or a
/// nonzero mirror.
SchemeConfig reduce_three_to_two(const SchemeConfig& cfg);

/// Diagnostic validity ratio max(Op, Os) / |2 Delta_P| of the reduction.
double reduction_validity_ratio(const SchemeConfig& cfg);

}  // namespace atomdiode
