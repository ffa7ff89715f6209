#pragma once

#include <vector>

#include "bosonchain/chain_model.hpp"

namespace bosonchain {

enum class Frame { Original, Squeezed };
const char* to_string(Frame frame) noexcept;

// F(m, m') = <a_m^dag a_m'>, G(m, m') = <a_m a_m'>, 0-based modes.
struct MomentState {
  CMat F;
  CMat G;
  Frame frame = Frame::Original;
  int n_modes() const { return static_cast<int>(F.rows()); }
};

MomentState vacuum_state(int n_modes, Frame frame = Frame::Original);

inline constexpr int kMaxSteadyModes = 64;

// Interleaved quadratures u = (x1, p1, x2, p2, ...), a = (x + i p)/sqrt 2.
Mat symplectic_form(int n_modes);
Mat quadrature_hamiltonian(const ChainParams& p);
// A = Omega H_q - kappa/2; the covariance obeys dV/dt = A V + V A^T + kappa (n_th + 1/2).
Mat quadrature_drift(const ChainParams& p);

// Full 2n x 2n covariance, vacuum = I/2.
Mat covariance_from_moments(const MomentState& s);
MomentState moments_from_covariance(const Mat& v, Frame frame);

struct SteadySolution {
  MomentState state;
  double spectral_abscissa = 0.0;
  bool critically_slow = false;  // abscissa in (-1e-8 kappa, 0)
};

// Throws UnstableError when no steady state exists, Config beyond kMaxSteadyModes.
SteadySolution steady_moments(const ChainParams& p);

MomentState evolve_moments(const ChainParams& p, const MomentState& initial, double t);

// Per-mode scaling x~ = e^{r} x, p~ = e^{-r} p (to squeezed) or its inverse.
MomentState change_frame(const MomentState& s, const Vec& r, Frame to);
MomentState change_frame(const MomentState& s, const SqueezeTransform& sq, Frame to);

// Covariance of the listed (0-based) modes, interleaved (x, p) per mode.
Mat to_quadrature_covariance(const MomentState& s, const std::vector<int>& modes);

struct MomentDerivative {
  CMat dF;
  CMat dG;
};

// Right-hand side of the complex moment equations (original frame).
MomentDerivative moment_derivative(const ChainParams& p, const MomentState& s);

// Smallest eigenvalue of V + (i/2) Omega; >= 0 for a physical state.
double min_uncertainty_eigenvalue(const Mat& v);

}  // namespace bosonchain
