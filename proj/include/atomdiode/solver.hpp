#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "atomdiode/fields.hpp"
#include "atomdiode/scheme.hpp"

namespace atomdiode {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ClosedIncidentChannel : public SolverError {
 public:
  using SolverError::SolverError;
};

class NonConvergence : public SolverError {
 public:
  using SolverError::SolverError;
};

/// Uniform mesh over the interaction box. Invariants: h > 0,
/// h * max_j |Re kx_j| <= 0.1 (>= ~60 points per shortest wavelength),
/// n_steps >= 100.
struct SolverGrid {
  double x_min = 0.0;
  double x_max = 0.0;
  double h = 0.0;
  long n_steps = 0;

  /// Default mesh: h = min(phase_step / max|Re kx_j|, sigma_min / pts_per_sigma).
  static SolverGrid make(const PotentialMatrix& pot, const ChannelSet& channels,
                         double phase_step = 0.1, double pts_per_sigma = 50.0);
  SolverGrid refined() const;
};

/// Complex reflection/transmission amplitudes for the fixed incident
/// channel, flux-normalized probabilities Re(kx_b)/kx_a |amp|^2, and the
/// absorption deficit A = 1 - sum(PR) - sum(PT).
struct ScatteringResult {
  Eigen::VectorXcd refl;
  Eigen::VectorXcd trans;
  Eigen::VectorXd p_refl;
  Eigen::VectorXd p_trans;
  double absorption = 0.0;

  bool ill_conditioned = false;
  std::vector<int> near_threshold;  // channels with 0 < |Re kx| sigma < 1e-3
  double estimated_error = std::numeric_limits<double>::quiet_NaN();
  SolverGrid grid;

  double reflected() const { return p_refl.sum(); }
  double transmitted() const { return p_trans.sum(); }
};

/// Solve the two-sided coupled-channel boundary-value problem: unit flux
/// incoming in channels.incident from the incidence side, purely outgoing
/// or decaying waves elsewhere. Right incidence (w < 0) is handled by the
/// x -> -x mirrored problem. Log-derivative propagation of Y = phi' phi^-1
/// with piecewise-constant midpoint reference, matched to the asymptotic
/// exponential basis at both box edges.
ScatteringResult solve_scattering(const PotentialMatrix& pot,
                                  const ChannelSet& channels,
                                  const Incidence& inc, const SolverGrid& grid);

/// Same, on the default grid for this potential/channel set.
ScatteringResult solve_scattering(const PotentialMatrix& pot,
                                  const ChannelSet& channels,
                                  const Incidence& inc);

/// Re-solve with h/2 until the largest probability change is below tol;
/// the returned result carries the last delta as estimated_error. Throws
/// NonConvergence when the refinement budget is exhausted.
ScatteringResult verify_convergence(const ScatteringResult& first,
                                    const PotentialMatrix& pot,
                                    const ChannelSet& channels,
                                    const Incidence& inc, double tol = 1e-6,
                                    int max_refinements = 4);

}  // namespace atomdiode
