#include "atomdiode/solver.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace atomdiode {

namespace {

// cosh(sqrt(Z)) and sinhc(sqrt(Z)) = sinh(sqrt(Z))/sqrt(Z), both entire in
// Z, by Taylor series plus scaling and squaring. Doubling identities:
// cosh(2y) = 2 cosh(y)^2 - 1, sinh(2y)/(2y) = cosh(y) sinh(y)/y.
template <class Mat>
void cosh_sinhc(Mat Z, Mat& A, Mat& Bs) {
  int squarings = 0;
  double norm = Z.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 1.0 && squarings < 64) {
    Z *= 0.25;
    norm *= 0.25;
    ++squarings;
  }
  const Mat I = Mat::Identity();
  A = I;
  Bs = I;
  Mat term = I;
  for (int k = 1; k <= 12; ++k) {
    term = (term * Z).eval();
    term /= double(2 * k) * double(2 * k - 1);
    A += term;
    Bs += term / double(2 * k + 1);
  }
  for (int s = 0; s < squarings; ++s) {
    Bs = (A * Bs).eval();
    A = (2.0 * (A * A) - I).eval();
  }
}

// Denormal amplitudes in the accumulated transmission map only slow the
// remaining steps down; flush them.
template <class Mat>
void flush_tiny(Mat& F) {
  for (int i = 0; i < F.rows(); ++i)
    for (int j = 0; j < F.cols(); ++j) {
      complexd v = F(i, j);
      if (std::abs(v.real()) < 1e-280) v.real(0.0);
      if (std::abs(v.imag()) < 1e-280) v.imag(0.0);
      F(i, j) = v;
    }
}

template <int N>
ScatteringResult solve_impl(const PotentialMatrix& pot,
                            const ChannelSet& channels, const SolverGrid& grid) {
  using Mat = Eigen::Matrix<complexd, N, N>;
  using Vec = Eigen::Matrix<complexd, N, 1>;

  const double moh = channels.atom.mass / constants::hbar;
  const double k0 = channels.kx_incident;
  const int alpha = channels.incident;

  Vec kx;
  for (int j = 0; j < N; ++j) kx(j) = channels.kx(j);

  const Mat I = Mat::Identity();
  const complexd ii(0.0, 1.0);

  // Y(b): purely outgoing/decaying on the right, Y = i diag(kx).
  Mat Y = Mat::Zero();
  for (int j = 0; j < N; ++j) Y(j, j) = ii * kx(j);
  Mat F = I;  // accumulates phi(b) = F phi(x)

  const double h = grid.h;
  Mat M, Q, A, Bs, B, C, num, den;
  bool ill = false;
  for (long i = grid.n_steps - 1; i >= 0; --i) {
    const double xm = grid.x_min + (double(i) + 0.5) * h;
    pot.evaluate(xm, M);
    Q = moh * M - (k0 * k0) * I;
    cosh_sinhc<Mat>(Q * (h * h), A, Bs);
    B = h * Bs;
    C = Q * B;

    den = A - B * Y;
    num = -C + A * Y;
    Eigen::PartialPivLU<Mat> lu(den.transpose());
    Y = lu.solve(num.transpose()).transpose();
    if (lu.rcond() < 1e-13) ill = true;
    F = (F * (A + B * Y)).eval();
    if ((i & 127) == 0) flush_tiny(F);
  }

  // Left matching: phi = e_a e^{i ka (x-a)} + R e^{-i kx (x-a)} for x <= a.
  Mat lhs = Y;
  for (int j = 0; j < N; ++j) lhs(j, j) += ii * kx(j);
  Vec rhs = -Y.col(alpha);
  rhs(alpha) += ii * kx(alpha);
  Eigen::PartialPivLU<Mat> lu(lhs);
  if (lu.rcond() < 1e-13) ill = true;
  Vec R = lu.solve(rhs);

  Vec phi_a = R;
  phi_a(alpha) += 1.0;
  Vec T = F * phi_a;
  // Reference the transmitted wave to e^{i ka (x-a)} so that a free
  // problem gives T = 1 exactly.
  T *= std::exp(-ii * kx(alpha) * (grid.x_max - grid.x_min));

  ScatteringResult res;
  res.grid = grid;
  res.ill_conditioned = ill;
  res.refl.resize(N);
  res.trans.resize(N);
  res.p_refl.resize(N);
  res.p_trans.resize(N);
  for (int j = 0; j < N; ++j) {
    res.refl(j) = R(j);
    res.trans(j) = T(j);
    const double flux = kx(j).real() / kx(alpha).real();
    res.p_refl(j) = flux * std::norm(R(j));
    res.p_trans(j) = flux * std::norm(T(j));
    const double r = std::abs(kx(j).real()) * pot.min_width;
    if (r > 0.0 && r < 1e-3) res.near_threshold.push_back(j);
  }
  res.absorption = 1.0 - res.p_refl.sum() - res.p_trans.sum();
  if (!res.p_refl.allFinite() || !res.p_trans.allFinite())
    throw SolverError("solve_scattering: non-finite result");
  return res;
}

}  // namespace

SolverGrid SolverGrid::make(const PotentialMatrix& pot,
                            const ChannelSet& channels, double phase_step,
                            double pts_per_sigma) {
  double kmax = 0.0;
  for (Eigen::Index j = 0; j < channels.kx.size(); ++j)
    kmax = std::max(kmax, std::abs(channels.kx(j).real()));
  double h = pot.min_width / pts_per_sigma;
  if (kmax > 0.0) h = std::min(h, phase_step / kmax);
  const double len = pot.x_max - pot.x_min;
  if (!(len > 0.0) || !(h > 0.0))
    throw SolverError("SolverGrid::make: empty interaction box");
  long n = std::max<long>(100, (long)std::ceil(len / h));
  SolverGrid g;
  g.x_min = pot.x_min;
  g.x_max = pot.x_max;
  g.n_steps = n;
  g.h = len / double(n);
  return g;
}

SolverGrid SolverGrid::refined() const {
  SolverGrid g = *this;
  g.h = h / 2.0;
  g.n_steps = n_steps * 2;
  return g;
}

ScatteringResult solve_scattering(const PotentialMatrix& pot,
                                  const ChannelSet& channels,
                                  const Incidence& inc, const SolverGrid& grid) {
  if (channels.kx(channels.incident).imag() != 0.0)
    throw ClosedIncidentChannel(
        "solve_scattering: incident channel is energetically closed");
  if (inc.w < 0.0) {
    const PotentialMatrix flipped = pot.mirrored();
    const SolverGrid g =
        (grid.n_steps > 0 && grid.x_min == pot.x_min && grid.x_max == pot.x_max)
            ? SolverGrid{flipped.x_min, flipped.x_max, grid.h, grid.n_steps}
            : grid;
    Incidence left = inc;
    left.w = -inc.w;
    return solve_scattering(flipped, channels, left, g);
  }
  switch (pot.n) {
    case 1:
      return solve_impl<1>(pot, channels, grid);
    case 2:
      return solve_impl<2>(pot, channels, grid);
    case 3:
      return solve_impl<3>(pot, channels, grid);
    case 4:
      return solve_impl<4>(pot, channels, grid);
    default:
      throw SolverError("solve_scattering: unsupported channel count");
  }
}

ScatteringResult solve_scattering(const PotentialMatrix& pot,
                                  const ChannelSet& channels,
                                  const Incidence& inc) {
  return solve_scattering(pot, channels, inc, SolverGrid::make(pot, channels));
}

ScatteringResult verify_convergence(const ScatteringResult& first,
                                    const PotentialMatrix& pot,
                                    const ChannelSet& channels,
                                    const Incidence& inc, double tol,
                                    int max_refinements) {
  ScatteringResult prev = first;
  for (int r = 0; r < max_refinements; ++r) {
    ScatteringResult next =
        solve_scattering(pot, channels, inc, prev.grid.refined());
    const double delta =
        std::max((next.p_refl - prev.p_refl).cwiseAbs().maxCoeff(),
                 (next.p_trans - prev.p_trans).cwiseAbs().maxCoeff());
    next.estimated_error = delta;
    if (delta < tol) return next;
    prev = next;
  }
  throw NonConvergence("verify_convergence: refinement budget exhausted");
}

}  // namespace atomdiode
