#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bosonchain/errors.hpp"
#include "bosonchain/steady_state.hpp"
#include "oracles.hpp"

using namespace bosonchain;
using doctest::Approx;

namespace {

ChainParams fig3() { return oracle::params(1.0, 0.6, 4.0, 4.0, 5, 0.01); }

double diff(const MomentState& a, const MomentState& b) {
  return std::max(oracle::max_abs(a.F - b.F), oracle::max_abs(a.G - b.G));
}

// Classic RK4 on the ladder-basis Sigma equation.
CMat rk4_sigma(const ChainParams& p, CMat s, double t, int steps) {
  const CMat m = oracle::ladder_drift(p);
  const CMat q = p.kappa * (p.n_th + 0.5) * CMat::Identity(m.rows(), m.cols());
  auto f = [&](const CMat& x) -> CMat { return m * x + x * m.adjoint() + q; };
  const double h = t / steps;
  for (int i = 0; i < steps; ++i) {
    const CMat k1 = f(s), k2 = f(s + 0.5 * h * k1), k3 = f(s + 0.5 * h * k2), k4 = f(s + h * k3);
    s += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return s;
}

}  // namespace

TEST_CASE("steady state matches the ladder-basis Lyapunov oracle") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-0.8, 0.8), q(0.3, 3.0), ph(0.0, 2 * std::numbers::pi), lk(-2.0, 0.5);
  int solved = 0;
  for (int it = 0; it < 40; ++it) {
    auto p = oracle::params(1.0 + 0.3 * u(rng), u(rng), q(rng), q(rng), 1 + it % 4, std::pow(10.0, lk(rng)),
                            it % 3 == 0 ? 0.7 : 0.0, it % 2 ? 0.05 * u(rng) : 0.0, ph(rng), ph(rng));
    SteadySolution sol;
    try {
      sol = steady_moments(p);
    } catch (const UnstableError&) {
      continue;
    }
    const auto o = oracle::moments_of(oracle::steady_sigma(p));
    const double scale = 1.0 + oracle::max_abs(o.F) + oracle::max_abs(o.G);
    CHECK(oracle::max_abs(sol.state.F - o.F) < 1e-9 * scale);
    CHECK(oracle::max_abs(sol.state.G - o.G) < 1e-9 * scale);
    CHECK(sol.state.frame == Frame::Original);
    // Structure: F Hermitian, G symmetric, physical.
    CHECK(oracle::max_abs(sol.state.F - sol.state.F.adjoint()) < 1e-12 * scale);
    CHECK(oracle::max_abs(sol.state.G - sol.state.G.transpose()) < 1e-12 * scale);
    const CMat sigma = oracle::sigma_of(sol.state.F, sol.state.G);
    CHECK(oracle::uncertainty_min(oracle::quadrature_cov(sigma)) > -1e-10);
    ++solved;
  }
  CHECK(solved > 20);
}

TEST_CASE("steady state special cases") {
  // No squeezing, n_th = 0: vacuum.
  auto p = oracle::params(1.0, 0.0, 2.0, 0.0, 3, 0.3);
  auto s = steady_moments(p).state;
  CHECK(oracle::max_abs(s.F) < 1e-14);
  CHECK(oracle::max_abs(s.G) < 1e-14);
  // Thermal equilibrium.
  p.n_th = 1.0;
  s = steady_moments(p).state;
  CHECK(oracle::max_abs(s.F - CMat::Identity(6, 6)) < 1e-12);
  CHECK(oracle::max_abs(s.G) < 1e-12);

  // Two-mode values in the squeezed frame.
  p = oracle::params(1.0, 0.6, 1.0, 1.0, 1, 1.6);
  auto sq = change_frame(steady_moments(p).state, squeeze_transform(p), Frame::Squeezed);
  CHECK(sq.frame == Frame::Squeezed);
  CHECK(std::abs(sq.F(0, 0) - 0.125) < 1e-12);
  CHECK(std::abs(sq.G(0, 0) - 0.1875) < 1e-12);
  CHECK(std::abs(sq.G(0, 1) - cd(0.0, -0.1875)) < 1e-12);
  CHECK(std::abs(sq.F(0, 1)) < 1e-12);
}

TEST_CASE("steady state refusals") {
  try {
    steady_moments(oracle::params(1.0, 1.2, 4.0, 1.0, 5, 0.01));
    FAIL("expected UnstableError");
  } catch (const UnstableError& e) {
    CHECK(e.code() == ErrorCode::Unstable);
    CHECK(e.spectral_abscissa() > 0.0);
  }
  auto p = fig3();
  p.n_cells = 33;
  CHECK_THROWS_AS(steady_moments(p), Error);
}

TEST_CASE("moment ODE residual vanishes at the steady state") {
  for (auto p : {fig3(), oracle::params(1.0, 0.3, 0.5, 0.5, 4, 0.05, 0.5, 0.02, 1.0, 2.0)}) {
    const auto s = steady_moments(p).state;
    const auto d = moment_derivative(p, s);
    const double tol = 1e-10 * p.kappa * (1.0 + oracle::max_abs(s.F));
    CHECK(oracle::max_abs(d.dF) < tol);
    CHECK(oracle::max_abs(d.dG) < tol);
    // Independent residual in the ladder basis.
    CHECK(oracle::lyapunov_residual(p, oracle::sigma_of(s.F, s.G)).maxCoeff() < tol);
  }
}

TEST_CASE("moment derivative matches the ladder-basis equation") {
  auto p = oracle::params(1.0, 0.4, 2.0, 1.0, 2, 0.2, 0.3, 0.1, 0.4, 1.1);
  std::mt19937 rng(2);
  std::normal_distribution<double> g;
  const int n = 4;
  CMat a(n, n), b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      a(i, j) = cd(g(rng), g(rng));
      b(i, j) = cd(g(rng), g(rng));
    }
  MomentState s{0.1 * (a * a.adjoint()), 0.1 * (b + b.transpose()), Frame::Original};
  const auto d = moment_derivative(p, s);
  const CMat sigma = oracle::sigma_of(s.F, s.G);
  const CMat m = oracle::ladder_drift(p);
  const CMat ds = m * sigma + sigma * m.adjoint() + p.kappa * (p.n_th + 0.5) * CMat::Identity(2 * n, 2 * n);
  const auto o = oracle::moments_of(ds + 0.5 * CMat::Identity(2 * n, 2 * n));
  CHECK(oracle::max_abs(d.dF - o.F) < 1e-12);
  CHECK(oracle::max_abs(d.dG - o.G) < 1e-12);
}

TEST_CASE("time evolution") {
  const auto p = fig3();
  const auto vac = vacuum_state(p.n_modes());
  CHECK(diff(evolve_moments(p, vac, 0.0), vac) == 0.0);

  const auto st = steady_moments(p).state;
  CHECK(diff(evolve_moments(p, st, 37.0), st) < 1e-10);
  CHECK(diff(evolve_moments(p, vac, 50.0 / p.kappa), st) < 1e-8);

  // Finite-time value against RK4 (also an unstable case, where Van Loan is used).
  for (auto q : {oracle::params(1.0, 0.5, 1.5, 1.0, 2, 0.3, 0.2, 0.05, 0.3, 0.9),
                 oracle::params(1.0, 1.2, 1.5, 1.0, 2, 0.3)}) {
    const auto v = vacuum_state(q.n_modes());
    const auto ev = evolve_moments(q, v, 2.0);
    const auto o = oracle::moments_of(rk4_sigma(q, oracle::sigma_of(v.F, v.G), 2.0, 4000));
    CHECK(oracle::max_abs(ev.F - o.F) < 1e-9 * (1 + oracle::max_abs(o.F)));
    CHECK(oracle::max_abs(ev.G - o.G) < 1e-9 * (1 + oracle::max_abs(o.G)));
  }
  CHECK_THROWS_AS(evolve_moments(p, vac, -1.0), Error);
}

TEST_CASE("frame changes and quadrature conversions") {
  const auto p = fig3();
  const auto s = steady_moments(p).state;
  const auto sq = squeeze_transform(p);
  const auto there = change_frame(s, sq, Frame::Squeezed);
  const auto back = change_frame(there, sq, Frame::Original);
  CHECK(diff(back, s) < 1e-12);
  CHECK(diff(change_frame(s, Vec::Zero(10), Frame::Squeezed), s) < 1e-15);

  // Single mode: against the quadrature-basis oracle.
  MomentState one{CMat::Constant(1, 1, 0.3), CMat::Zero(1, 1), Frame::Original};
  Vec r(1);
  r << 0.4;
  const auto moved = change_frame(one, r, Frame::Squeezed);
  const Mat v0 = oracle::quadrature_cov(oracle::sigma_of(one.F, one.G));
  Eigen::VectorXd rr(1);
  rr << 0.4;
  Mat v1 = oracle::local_squeeze(v0, rr);
  Mat v1b = oracle::local_squeeze(v0, -rr);
  const Mat got = oracle::quadrature_cov(oracle::sigma_of(moved.F, moved.G));
  CHECK(std::min((got - v1).cwiseAbs().maxCoeff(), (got - v1b).cwiseAbs().maxCoeff()) < 1e-14);

  // Vacuum and the single-mode covariance example.
  CHECK((to_quadrature_covariance(vacuum_state(3), {0, 2}) - 0.5 * Mat::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
  MomentState fg{CMat::Constant(1, 1, 0.2), CMat::Constant(1, 1, 0.15), Frame::Original};
  const Mat v = to_quadrature_covariance(fg, {0});
  CHECK(v(0, 0) == Approx(0.85));
  CHECK(v(1, 1) == Approx(0.55));
  CHECK(std::abs(v(0, 1)) < 1e-15);

  // Full covariance vs ladder oracle, and round trip.
  const Mat full = covariance_from_moments(s);
  CHECK((full - oracle::quadrature_cov(oracle::sigma_of(s.F, s.G))).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(diff(moments_from_covariance(full, Frame::Original), s) < 1e-13);
  CHECK(min_uncertainty_eigenvalue(full) == Approx(oracle::uncertainty_min(full)).epsilon(1e-10));
}
