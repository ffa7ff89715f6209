#include "bosonchain/open_spectrum.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "bosonchain/band_theory.hpp"
#include "bosonchain/errors.hpp"

namespace bosonchain {

namespace {

// Largest-magnitude component made positive; near ties go to the lowest index.
void fix_gauge(Eigen::Ref<Vec> v) {
  const double top = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= top * (1.0 - 1e-9)) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

std::vector<cd> bdg_eigenvalues(const ChainParams& p) {
  require_valid(p);
  const auto b = build_bdg(p);
  const CMat a = b.tau_z.asDiagonal() * b.h;
  std::vector<cd> eigs;
  if (p.mu == 0.0) {
    // Chiral: a = [[0, B], [C, 0]] in sublattice order, so xi = +-sqrt(eig(B C)).
    const Vec g = chiral_signature(p.n_modes(), true);
    std::vector<Eigen::Index> plus, minus;
    for (Eigen::Index i = 0; i < g.size(); ++i) (g(i) > 0 ? plus : minus).push_back(i);
    const auto h = static_cast<Eigen::Index>(plus.size());
    CMat bm(h, h), cm(h, h);
    for (Eigen::Index i = 0; i < h; ++i)
      for (Eigen::Index j = 0; j < h; ++j) {
        bm(i, j) = a(plus[i], minus[j]);
        cm(i, j) = a(minus[i], plus[j]);
      }
    for (cd x2 : product_eigenvalues_quad(bm, cm)) {
      const cd x = std::sqrt(x2);
      eigs.push_back(x);
      eigs.push_back(-x);
    }
  } else {
    eigs = eigenvalues_extended(a);
  }
  sort_re_im(eigs);
  return eigs;
}

int count_excitations_below(const std::vector<cd>& eigs, double threshold) {
  const auto n = std::count_if(eigs.begin(), eigs.end(), [&](cd z) { return std::abs(z) < threshold; });
  return static_cast<int>(n / 2);
}

double min_abs(const std::vector<cd>& eigs) {
  double m = INFINITY;
  for (cd z : eigs) m = std::min(m, std::abs(z));
  return m;
}

SpectralDecomposition ssh_eigendecomposition(const Mat& s) {
  const int n = static_cast<int>(s.rows());
  Eigen::SelfAdjointEigenSolver<Mat> es(s);
  SpectralDecomposition d;
  d.lambdas = es.eigenvalues();
  d.vectors = es.eigenvectors();
  d.partner.resize(n);
  for (int j = 0; j < n; ++j) d.partner[j] = n - 1 - j;
  if (n % 2 != 0) {
    for (int j = 0; j < n; ++j) fix_gauge(d.vectors.col(j));
    return d;
  }

  const Vec gamma = chiral_signature(n, false);
  const int lo = n / 2 - 1, hi = n / 2;
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if (std::abs(d.lambdas(hi)) < 1e-12 * scale) {
    // Numerically degenerate zero-mode pair: rebuild from the sublattice projections.
    Mat v(n, 2);
    v << d.vectors.col(lo), d.vectors.col(hi);
    auto dominant = [&](int parity) {
      Mat proj = Mat::Zero(n, 2);
      for (int i = parity; i < n; i += 2) proj.row(i) = v.row(i);
      Eigen::SelfAdjointEigenSolver<Mat> small(proj.transpose() * proj);
      Vec psi = proj * small.eigenvectors().col(1);
      return Vec(psi / psi.norm());
    };
    Vec psi_a = dominant(0);
    Vec psi_b = dominant(1);
    if (psi_a(0) < 0.0) psi_a = -psi_a;
    double delta = psi_a.dot(s * psi_b);
    if (delta < 0.0) {
      psi_b = -psi_b;
      delta = -delta;
    }
    d.lambdas(hi) = delta;
    d.lambdas(lo) = -delta;
    d.vectors.col(hi) = (psi_a + psi_b) / std::sqrt(2.0);
    d.vectors.col(lo) = (psi_a - psi_b) / std::sqrt(2.0);
  } else {
    fix_gauge(d.vectors.col(hi));
    d.lambdas(lo) = -d.lambdas(hi);
    d.vectors.col(lo) = gamma.cwiseProduct(d.vectors.col(hi));
  }
  for (int j = hi + 1; j < n; ++j) {
    fix_gauge(d.vectors.col(j));
    d.lambdas(n - 1 - j) = -d.lambdas(j);
    d.vectors.col(n - 1 - j) = gamma.cwiseProduct(d.vectors.col(j));
  }
  return d;
}

std::pair<int, int> edge_pair(const SpectralDecomposition& d) {
  const int n = static_cast<int>(d.lambdas.size());
  return {n / 2, n / 2 - 1};
}

double edge_geometric_sum(double x, int n_cells) {
  const int m = n_cells - 1;
  if (std::abs(x) < 1e-12) return m;
  return -std::expm1(-2.0 * m * x) / -std::expm1(-2.0 * x);
}

AnalyticEdgeData edge_modes(const ChainParams& p) {
  const auto s = sigma_invariants(p);
  if (!(s.sigma1 < s.sigma2) || s.sigma1 <= 0.0)
    throw Error(ErrorCode::NotTopological, "edge_modes needs the topological phase (0 < Sigma1 < Sigma2)");
  const auto e = effective_couplings(p);
  const auto sq = squeeze_transform(p);
  const auto dec = ssh_eigendecomposition(build_coupling_matrix(p));
  const int n = p.n_cells;

  AnalyticEdgeData a;
  const auto [jp, jm] = edge_pair(dec);
  a.delta = std::abs(dec.lambdas(jp));
  a.epsilon = std::log(std::abs(e.t2p)) - std::log(std::abs(e.t1p));
  a.l = 1.0 / std::sqrt(2.0 * edge_geometric_sum(a.epsilon, n));
  const double dr = sq.r_b - sq.r_a;
  a.L1 = edge_geometric_sum(a.epsilon + dr, n);
  a.L2 = edge_geometric_sum(a.epsilon - dr, n);

  a.profile.resize(2 * n);
  for (int j = 1; j <= n; ++j) {
    a.profile(2 * j - 2) = a.l * std::exp(-(j - 1) * a.epsilon);
    a.profile(2 * j - 1) = a.l * std::exp((j - n) * a.epsilon);
  }
  a.overlap = std::min(dec.vectors.col(jp).cwiseAbs().dot(a.profile),
                       dec.vectors.col(jm).cwiseAbs().dot(a.profile));
  return a;
}

CMat drift_matrix(const ChainParams& p) {
  const auto b = build_bdg(p);
  const int m = static_cast<int>(b.h.rows());
  return -0.5 * p.kappa * CMat::Identity(m, m) - cd(0.0, 1.0) * (b.tau_z.asDiagonal() * b.h);
}

StabilityReport assess_stability(const ChainParams& p) {
  require_valid(p);
  // Drift eigenvalues are -kappa/2 - i xi.
  std::vector<cd> eigs = bdg_eigenvalues(p);
  for (cd& z : eigs) z = -0.5 * p.kappa - cd(0.0, 1.0) * z;
  StabilityReport r;
  r.spectral_abscissa = -INFINITY;
  for (cd z : eigs) {
    r.spectral_abscissa = std::max(r.spectral_abscissa, z.real());
    r.spectral_radius = std::max(r.spectral_radius, std::abs(z + 0.5 * p.kappa));
  }
  r.stable = r.spectral_abscissa < -1e-12 * (p.kappa + r.spectral_radius);
  return r;
}

}  // namespace bosonchain
