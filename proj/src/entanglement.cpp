#include "bosonchain/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "bosonchain/errors.hpp"

namespace bosonchain {

namespace {

double log_negativity(double eta) { return std::max(0.0, -std::log(2.0 * eta)); }

}  // namespace

EntanglementReport logneg_symmetric(double K1, double K2, double K3) {
  const double a = (0.5 + K1) * (0.5 + K1) - K2 * K2;
  if (a < 0.0) throw Error(ErrorCode::Domain, "logneg_symmetric: (1/2 + K1)^2 < K2^2");
  EntanglementReport r;
  r.K1 = K1;
  r.K2 = K2;
  r.K3 = K3;
  r.eta_minus = std::abs(std::sqrt(a) - std::abs(K3));
  r.E_N = log_negativity(r.eta_minus);
  return r;
}

EntanglementReport logneg_general(const Mat& v, bool check_physical) {
  if (v.rows() != 4 || v.cols() != 4) throw Error(ErrorCode::InvalidArgument, "logneg_general needs a 4x4 covariance");
  if (check_physical) {
    const double e = min_uncertainty_eigenvalue(v);
    if (e < -1e-10)
      throw Error(ErrorCode::UnphysicalCovariance,
                  "covariance violates V + i Omega/2 >= 0 (min eigenvalue " + std::to_string(e) + ")");
  }
  // Partial transpose flips p of the second mode. With Vt = L L^T the symplectic
  // eigenvalues are the singular values of L^T Omega L, which stays accurate when
  // they are degenerate (the determinant route loses half the digits there).
  Eigen::Matrix4d vt = v;
  vt.row(3) *= -1.0;
  vt.col(3) *= -1.0;
  double eta = 0.0;
  Eigen::LLT<Eigen::Matrix4d> llt(vt);
  if (llt.info() == Eigen::Success) {
    const Eigen::Matrix4d l = llt.matrixL();
    const Eigen::Matrix4d om = symplectic_form(2);
    eta = Eigen::JacobiSVD<Eigen::Matrix4d>(l.transpose() * om * l).singularValues()(3);
  } else {
    const double det_a = v.block<2, 2>(0, 0).determinant();
    const double det_b = v.block<2, 2>(2, 2).determinant();
    const double det_c = v.block<2, 2>(0, 2).determinant();
    const double det_v = v.determinant();
    const double tilde = det_a + det_b - 2.0 * det_c;
    const double disc = std::max(0.0, tilde * tilde - 4.0 * det_v);
    const double big = (tilde + std::sqrt(disc)) / 2.0;
    eta = std::sqrt(std::max(0.0, big > 0.0 ? det_v / big : 0.0));
  }
  EntanglementReport r;
  r.eta_minus = eta;
  r.E_N = log_negativity(r.eta_minus);
  return r;
}

EntanglementReport pair_report(const MomentState& s, int m, int mp, bool check_physical) {
  if (m == mp) throw Error(ErrorCode::InvalidArgument, "pair_report needs two distinct modes");
  auto r = logneg_general(to_quadrature_covariance(s, {m, mp}), check_physical);
  r.K1 = s.F(m, m).real();
  r.K2 = s.G(m, m);
  r.K3 = (cd(0.0, -1.0) * s.G(m, mp)).real();
  return r;
}

SqueezingDegree squeezing_degree(const MomentState& s, int m) {
  const Mat v = to_quadrature_covariance(s, {m});
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(v.block<2, 2>(0, 0));
  const double vmin = es.eigenvalues()(0), vmax = es.eigenvalues()(1);
  SqueezingDegree d;
  if (vmin <= 0.0) throw Error(ErrorCode::UnphysicalCovariance, "non-positive quadrature variance");
  d.r_eff = 0.25 * std::log(vmax / vmin);
  const Eigen::Vector2d dir = es.eigenvectors().col(0);
  double th = std::atan2(dir(1), dir(0));
  if (th < 0.0) th += std::numbers::pi;
  if (th >= std::numbers::pi) th -= std::numbers::pi;
  d.theta = th;
  return d;
}

}  // namespace bosonchain
