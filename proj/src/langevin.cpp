#include "bosonchain/langevin.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "bosonchain/band_theory.hpp"
#include "bosonchain/errors.hpp"

namespace bosonchain {

namespace {

const cd kI(0.0, 1.0);

// C(j, j') = sum_k alpha_jk alpha_j'k w_k
Mat weighted_overlaps(const Mat& alpha, const Vec& w) {
  const int n = static_cast<int>(alpha.cols());
  Mat c(n, n);
  for (int j = 0; j < n; ++j) {
    for (int jp = j; jp < n; ++jp) {
      CompensatedSum<double> s;
      for (int k = 0; k < n; ++k) s.add(alpha(k, j) * alpha(k, jp) * w(k));
      c(j, jp) = c(jp, j) = s.value();
    }
  }
  return c;
}

// out(m, m') = sum_{j, j'} weight(j, j') alpha_jm alpha_j'm', terms added in
// descending magnitude with compensation. `hermitian` picks the lower-triangle fill.
CMat double_sum(const Mat& alpha, const CMat& weight, bool hermitian) {
  const int n = static_cast<int>(alpha.cols());
  CMat out(n, n);
  std::vector<cd> terms(static_cast<size_t>(n) * n);
  for (int m = 0; m < n; ++m) {
    for (int mp = m; mp < n; ++mp) {
      size_t t = 0;
      for (int j = 0; j < n; ++j)
        for (int jp = 0; jp < n; ++jp) terms[t++] = weight(j, jp) * (alpha(m, j) * alpha(mp, jp));
      std::sort(terms.begin(), terms.end(), [](cd a, cd b) { return std::abs(a) > std::abs(b); });
      CompensatedSum<cd> s;
      for (cd x : terms) s.add(x);
      out(m, mp) = s.value();
      out(mp, m) = hermitian ? std::conj(out(m, mp)) : out(m, mp);
    }
  }
  return out;
}

struct Prepared {
  SqueezeTransform sq;
  SpectralDecomposition dec;
  NoiseWeights w;
};

Prepared prepare(const ChainParams& p) {
  require_analytic_domain(p);
  Prepared pr;
  pr.sq = squeeze_transform(p);
  pr.dec = ssh_eigendecomposition(build_coupling_matrix(p));
  pr.w = noise_weights(pr.sq, p.n_th);
  return pr;
}

// Resonant (j' = j) part of the F~ sum, accumulated per chiral pair so the
// sublattice selection rule holds exactly.
CMat resonant_f(const Prepared& pr) {
  const Mat& a = pr.dec.vectors;
  const int n = static_cast<int>(a.cols());
  const Vec gamma = chiral_signature(n, false);
  const Mat c = weighted_overlaps(a, pr.w.f);
  CMat f = CMat::Zero(n, n);
  for (int m = 0; m < n; ++m) {
    for (int mp = m; mp < n; ++mp) {
      if (gamma(m) != gamma(mp)) continue;
      CompensatedSum<double> s;
      for (int j = n / 2; j < n; ++j) s.add(2.0 * c(j, j) * a(m, j) * a(mp, j));
      f(m, mp) = f(mp, m) = s.value();
    }
  }
  return f;
}

double min_bulk_gap(const SpectralDecomposition& d, bool skip_edges) {
  const int n = static_cast<int>(d.lambdas.size());
  double g = INFINITY;
  for (int j = 0; j < n; ++j) {
    if (skip_edges && (j == n / 2 || j == n / 2 - 1)) continue;
    g = std::min(g, std::abs(d.lambdas(j)));
  }
  return g;
}

// Edge bracket e^{2 r0} L2 - e^{-2 r0} L1 and the site-weight sums it feeds.
struct EdgeBracket {
  AnalyticEdgeData e;
  double r0 = 0.0;
  bool reduced = false;
  double squeeze = 0.0;  // e^{2r0} L2 - e^{-2r0} L1
  double cosh = 0.0;     // e^{2r0} L2 + e^{-2r0} L1
};

EdgeBracket edge_bracket(const ChainParams& p) {
  require_analytic_domain(p);
  const auto s = sigma_invariants(p);
  if (!(s.sigma1 < s.sigma2)) throw Error(ErrorCode::WrongPhase, "edge formulas need the topological phase");
  EdgeBracket b;
  b.e = edge_modes(p);
  const auto sq = squeeze_transform(p);
  b.r0 = sq.r_0;
  b.reduced = std::abs(sq.r_a - sq.r_b) <= 1e-12;
  const double l2 = b.e.l * b.e.l;
  const double big_l1 = b.reduced ? 0.5 / l2 : b.e.L1;
  const double big_l2 = b.reduced ? 0.5 / l2 : b.e.L2;
  b.squeeze = std::exp(2.0 * b.r0) * big_l2 - std::exp(-2.0 * b.r0) * big_l1;
  b.cosh = std::exp(2.0 * b.r0) * big_l2 + std::exp(-2.0 * b.r0) * big_l1;
  return b;
}

}  // namespace

const char* to_string(AnalyticMethod m) noexcept {
  switch (m) {
    case AnalyticMethod::ExactSum: return "exact_sum";
    case AnalyticMethod::TrivialApprox: return "trivial_approx";
    case AnalyticMethod::TopoApprox: return "topo_approx";
    case AnalyticMethod::EdgeReduced: return "edge_reduced";
    case AnalyticMethod::TwoMode: return "two_mode";
  }
  return "unknown";
}

void require_analytic_domain(const ChainParams& p) {
  require_valid(p);
  if (!is_real_coupling(p))
    throw Error(ErrorCode::AnalyticUnsupported, "analytic moments need phases in {0, pi}");
  if (p.mu != 0.0) throw Error(ErrorCode::AnalyticUnsupported, "analytic moments need mu = 0");
  if (p.kappa <= 0.0) throw Error(ErrorCode::Unstable, "analytic moments need kappa > 0");
  effective_couplings(p);  // UnstableRegime when Sigma_j <= 0
}

NoiseWeights noise_weights(const SqueezeTransform& sq, double n_th) {
  const double th = 2.0 * n_th + 1.0;
  NoiseWeights w;
  w.f.resize(sq.r.size());
  w.g.resize(sq.r.size());
  for (Eigen::Index k = 0; k < sq.r.size(); ++k) {
    const double e = std::exp(2.0 * sq.r(k)), ei = std::exp(-2.0 * sq.r(k));
    w.f(k) = ((e + ei) * th - 2.0) / 4.0;
    w.g(k) = (e - ei) * th / 4.0;
  }
  return w;
}

AnalyticMoments exact_sums(const ChainParams& p) {
  const auto pr = prepare(p);
  const Vec& lam = pr.dec.lambdas;
  const int n = static_cast<int>(lam.size());
  const Mat cf = weighted_overlaps(pr.dec.vectors, pr.w.f);
  const Mat cg = weighted_overlaps(pr.dec.vectors, pr.w.g);
  CMat wf(n, n), wg(n, n);
  for (int j = 0; j < n; ++j) {
    for (int jp = 0; jp < n; ++jp) {
      wf(j, jp) = p.kappa / (p.kappa + kI * (lam(jp) - lam(j))) * cf(j, jp);
      wg(j, jp) = p.kappa / (p.kappa + kI * (lam(j) + lam(jp))) * cg(j, jp);
    }
  }
  AnalyticMoments out;
  out.method = AnalyticMethod::ExactSum;
  out.F_tilde = double_sum(pr.dec.vectors, wf, true);
  out.G_tilde = double_sum(pr.dec.vectors, wg, false);
  return out;
}

AnalyticMoments two_mode_closed_form(const ChainParams& p) {
  require_analytic_domain(p);
  if (p.n_cells != 1) throw Error(ErrorCode::InvalidArgument, "two-mode closed form needs n_cells = 1");
  if (p.n_th != 0.0) throw Error(ErrorCode::InvalidArgument, "two-mode closed form needs n_th = 0");
  const double tp = effective_couplings(p).t1p;
  const double ra = squeeze_transform(p).r_a;
  const double k = p.kappa;
  const double s = (std::exp(ra) - std::exp(-ra)) / 4.0;
  const double den = k * k + 4.0 * tp * tp;
  AnalyticMoments out;
  out.method = AnalyticMethod::TwoMode;
  out.F_tilde = CMat::Zero(2, 2);
  out.F_tilde(0, 0) = out.F_tilde(1, 1) = (std::exp(ra) + std::exp(-ra) - 2.0) / 4.0;
  out.G_tilde.resize(2, 2);
  out.G_tilde(0, 0) = out.G_tilde(1, 1) = k * k / den * s;
  out.G_tilde(0, 1) = out.G_tilde(1, 0) = cd(0.0, -2.0 * k * tp / den * s);
  return out;
}

double optimal_kappa(const ChainParams& p) { return 2.0 * std::abs(effective_couplings(p).t1p); }

AnalyticMoments trivial_approx(const ChainParams& p, double cutoff) {
  const auto s = sigma_invariants(p);
  if (!(s.sigma1 > s.sigma2)) throw Error(ErrorCode::WrongPhase, "trivial_approx needs Sigma1 > Sigma2");
  const auto pr = prepare(p);
  AnalyticMoments out;
  out.method = AnalyticMethod::TrivialApprox;
  out.F_tilde = resonant_f(pr);
  out.G_tilde = CMat::Zero(p.n_modes(), p.n_modes());
  out.assumptions_hold = min_bulk_gap(pr.dec, false) >= cutoff * p.kappa;
  return out;
}

AnalyticMoments topo_approx(const ChainParams& p, double cutoff) {
  const auto s = sigma_invariants(p);
  if (!(s.sigma1 < s.sigma2)) throw Error(ErrorCode::WrongPhase, "topo_approx needs Sigma1 < Sigma2");
  const auto pr = prepare(p);
  const Mat& a = pr.dec.vectors;
  const int n = p.n_modes();
  const Mat cg = weighted_overlaps(a, pr.w.g);
  AnalyticMoments out;
  out.method = AnalyticMethod::TopoApprox;
  out.F_tilde = resonant_f(pr);
  out.G_tilde = CMat::Zero(n, n);
  const auto [jp, jm] = edge_pair(pr.dec);
  for (int j : {jp, jm}) {
    const cd w = p.kappa / (p.kappa + 2.0 * kI * pr.dec.lambdas(j)) * cg(j, j);
    out.G_tilde += w * (a.col(j) * a.col(j).transpose()).cast<cd>();
  }
  out.assumptions_hold = min_bulk_gap(pr.dec, true) >= cutoff * p.kappa;
  return out;
}

CMat profile_reduced_squeezing(const ChainParams& p) {
  const auto b = edge_bracket(p);
  const int n = p.n_modes();
  const double k = p.kappa, d = b.e.delta;
  const double pre = (2.0 * p.n_th + 1.0) * b.e.l * b.e.l * b.squeeze / 2.0;
  const cd wp = k / (k + 2.0 * kI * d), wm = k / (k - 2.0 * kI * d);
  const Vec gamma = chiral_signature(n, false);
  CMat g(n, n);
  for (int m = 0; m < n; ++m)
    for (int mp = 0; mp < n; ++mp)
      g(m, mp) = pre * b.e.profile(m) * b.e.profile(mp) * (wp + gamma(m) * gamma(mp) * wm);
  return g;
}

EdgeMoments edge_moments(const ChainParams& p) {
  const auto b = edge_bracket(p);
  const double th = 2.0 * p.n_th + 1.0;
  const double l2 = b.e.l * b.e.l, l4 = l2 * l2;
  const double k = p.kappa, d = b.e.delta;
  const double den = k * k + 4.0 * d * d;
  EdgeMoments m;
  m.reduced = b.reduced;
  m.K1 = th * l4 * b.cosh - l2;
  m.K2 = th * k * k * l4 / den * b.squeeze;
  m.K3 = -2.0 * th * k * d * l4 / den * b.squeeze;
  return m;
}

AnalyticMoments edge_reduced(const ChainParams& p) {
  const auto em = edge_moments(p);
  const auto pr = prepare(p);
  const int n = p.n_modes();
  AnalyticMoments out;
  out.method = AnalyticMethod::EdgeReduced;
  out.F_tilde = resonant_f(pr);
  out.F_tilde(0, 0) = out.F_tilde(n - 1, n - 1) = em.K1;
  out.F_tilde(0, n - 1) = out.F_tilde(n - 1, 0) = 0.0;
  out.G_tilde = profile_reduced_squeezing(p);
  out.assumptions_hold = min_bulk_gap(pr.dec, true) >= kNearZeroCutoff * p.kappa;
  return out;
}

}  // namespace bosonchain
