#include "bosonchain/steady_state.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "bosonchain/errors.hpp"
#include "bosonchain/lyapunov.hpp"
#include "bosonchain/open_spectrum.hpp"

namespace bosonchain {

const char* to_string(Frame frame) noexcept { return frame == Frame::Original ? "original" : "squeezed"; }

MomentState vacuum_state(int n_modes, Frame frame) {
  return {CMat::Zero(n_modes, n_modes), CMat::Zero(n_modes, n_modes), frame};
}

Mat symplectic_form(int n_modes) {
  Mat om = Mat::Zero(2 * n_modes, 2 * n_modes);
  for (int i = 0; i < n_modes; ++i) {
    om(2 * i, 2 * i + 1) = 1.0;
    om(2 * i + 1, 2 * i) = -1.0;
  }
  return om;
}

Mat quadrature_hamiltonian(const ChainParams& p) {
  const CMat h = hopping_block(p);
  const CMat d = pairing_block(p);
  const int n = p.n_modes();
  Mat hq(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      hq(2 * i, 2 * j) = h(i, j).real() + d(i, j).real();
      hq(2 * i + 1, 2 * j + 1) = h(i, j).real() - d(i, j).real();
      hq(2 * i, 2 * j + 1) = -h(i, j).imag() + d(i, j).imag();
      hq(2 * i + 1, 2 * j) = h(i, j).imag() + d(i, j).imag();
    }
  }
  return hq;
}

Mat quadrature_drift(const ChainParams& p) {
  const int n = p.n_modes();
  return symplectic_form(n) * quadrature_hamiltonian(p) - 0.5 * p.kappa * Mat::Identity(2 * n, 2 * n);
}

Mat covariance_from_moments(const MomentState& s) {
  const int n = s.n_modes();
  Mat v(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const cd f = s.F(i, j), g = s.G(i, j);
      const double id = (i == j) ? 0.5 : 0.0;
      v(2 * i, 2 * j) = f.real() + g.real() + id;
      v(2 * i + 1, 2 * j + 1) = f.real() - g.real() + id;
      v(2 * i, 2 * j + 1) = g.imag() + f.imag();
      v(2 * j + 1, 2 * i) = v(2 * i, 2 * j + 1);
    }
  }
  return v;
}

MomentState moments_from_covariance(const Mat& v, Frame frame) {
  const int n = static_cast<int>(v.rows() / 2);
  MomentState s = vacuum_state(n, frame);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double xx = v(2 * i, 2 * j), pp = v(2 * i + 1, 2 * j + 1);
      const double xp = v(2 * i, 2 * j + 1), px = v(2 * j, 2 * i + 1);  // Vxp(i,j), Vxp(j,i)
      const double id = (i == j) ? 1.0 : 0.0;
      s.F(i, j) = cd(0.5 * (xx + pp - id), 0.5 * (xp - px));
      s.G(i, j) = cd(0.5 * (xx - pp), 0.5 * (xp + px));
    }
  }
  return s;
}

SteadySolution steady_moments(const ChainParams& p) {
  require_valid(p);
  if (p.n_modes() > kMaxSteadyModes)
    throw Error(ErrorCode::Config, "steady_moments: 2N = " + std::to_string(p.n_modes()) + " exceeds the cap of " +
                                       std::to_string(kMaxSteadyModes) + " modes");
  const auto st = assess_stability(p);
  if (!st.stable)
    throw UnstableError("no steady state: spectral abscissa " + std::to_string(st.spectral_abscissa) + " >= 0",
                        st.spectral_abscissa);
  const int n = p.n_modes();
  const Mat q = p.kappa * (p.n_th + 0.5) * Mat::Identity(2 * n, 2 * n);
  const Mat v = solve_lyapunov(quadrature_drift(p), q);
  SteadySolution sol;
  sol.state = moments_from_covariance(v, Frame::Original);
  sol.spectral_abscissa = st.spectral_abscissa;
  sol.critically_slow = st.spectral_abscissa > -1e-8 * p.kappa;
  return sol;
}

MomentState evolve_moments(const ChainParams& p, const MomentState& initial, double t) {
  require_valid(p);
  if (t < 0.0) throw Error(ErrorCode::InvalidArgument, "evolve_moments needs t >= 0");
  if (initial.frame != Frame::Original)
    throw Error(ErrorCode::InvalidArgument, "evolve_moments works in the original frame");
  if (initial.n_modes() != p.n_modes()) throw Error(ErrorCode::InvalidArgument, "evolve_moments: size mismatch");
  if (t == 0.0) return initial;
  const int n = p.n_modes();
  const Mat a = quadrature_drift(p);
  const Mat q = p.kappa * (p.n_th + 0.5) * Mat::Identity(2 * n, 2 * n);
  const Mat v0 = covariance_from_moments(initial);
  Mat v;
  if (assess_stability(p).stable) {
    // V(t) = V_inf + e^{At} (V0 - V_inf) e^{A^T t}
    const Mat vinf = solve_lyapunov(a, q);
    const Mat e = (a * t).exp();
    v = vinf + e * (v0 - vinf) * e.transpose();
  } else {
    const auto vl = van_loan(a, q, t);
    v = vl.propagator * v0 * vl.propagator.transpose() + vl.integral;
  }
  return moments_from_covariance(0.5 * (v + v.transpose()), Frame::Original);
}

MomentState change_frame(const MomentState& s, const Vec& r, Frame to) {
  if (r.size() != s.n_modes()) throw Error(ErrorCode::InvalidArgument, "change_frame: r has wrong length");
  if (s.frame == to) return s;
  const double sign = (to == Frame::Squeezed) ? 1.0 : -1.0;
  const int n = s.n_modes();
  Vec scale(2 * n);
  for (int i = 0; i < n; ++i) {
    scale(2 * i) = std::exp(sign * r(i));
    scale(2 * i + 1) = std::exp(-sign * r(i));
  }
  const Mat v = scale.asDiagonal() * covariance_from_moments(s) * scale.asDiagonal();
  return moments_from_covariance(v, to);
}

MomentState change_frame(const MomentState& s, const SqueezeTransform& sq, Frame to) {
  return change_frame(s, sq.r, to);
}

Mat to_quadrature_covariance(const MomentState& s, const std::vector<int>& modes) {
  const int n = s.n_modes();
  for (int m : modes)
    if (m < 0 || m >= n) throw Error(ErrorCode::InvalidArgument, "mode index out of range");
  const Mat full = covariance_from_moments(s);
  const int k = static_cast<int>(modes.size());
  Mat v(2 * k, 2 * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) v.block<2, 2>(2 * a, 2 * b) = full.block<2, 2>(2 * modes[a], 2 * modes[b]);
  return v;
}

MomentDerivative moment_derivative(const ChainParams& p, const MomentState& s) {
  const CMat h = hopping_block(p);
  const CMat d = pairing_block(p);
  const int n = p.n_modes();
  const cd i(0.0, 1.0);
  const CMat& f = s.F;
  const CMat& g = s.G;
  MomentDerivative out;
  out.dF = i * (h.conjugate() * f + d.conjugate() * g) - i * (f * h.transpose() + g.conjugate() * d) -
           p.kappa * f + p.kappa * p.n_th * CMat::Identity(n, n);
  out.dG = -i * (h * g + g * h.transpose() + d * f + f.transpose() * d + d) - p.kappa * g;
  return out;
}

double min_uncertainty_eigenvalue(const Mat& v) {
  const int n = static_cast<int>(v.rows() / 2);
  const CMat m = v.cast<cd>() + cd(0.0, 0.5) * symplectic_form(n).cast<cd>();
  Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace bosonchain
