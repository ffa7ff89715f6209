#include "bosonchain/band_theory.hpp"

#include <algorithm>
#include <cmath>

#include "bosonchain/errors.hpp"

namespace bosonchain {

const char* to_string(Phase phase) noexcept {
  switch (phase) {
    case Phase::Trivial: return "Trivial";
    case Phase::Topological: return "Topological";
    case Phase::Boundary: return "Boundary";
    case Phase::Unstable: return "Unstable";
  }
  return "Unknown";
}

BlochSample bloch_spectrum(const ChainParams& p, double k) {
  const auto s = sigma_invariants(p);
  const cd root = std::sqrt(cd(s.sigma1 * s.sigma2 - s.sigma3 * s.sigma3, 0.0));
  const double base = s.sigma1 + s.sigma2 + 2.0 * s.sigma3 * std::cos(k);
  const double sk = 2.0 * std::abs(std::sin(k));
  BlochSample b;
  b.k = k;
  const cd x2p = base + sk * root;
  const cd x2m = base - sk * root;
  b.xi = {std::sqrt(x2p), -std::sqrt(x2p), std::sqrt(x2m), -std::sqrt(x2m)};
  std::sort(b.xi.begin(), b.xi.end(), [](cd a, cd c) {
    return a.real() != c.real() ? a.real() < c.real() : a.imag() < c.imag();
  });
  for (int i = 0; i < 4; ++i) b.xi_squared[i] = b.xi[i] * b.xi[i];
  return b;
}

std::pair<double, double> band_edges(const ChainParams& p) {
  const auto s = sigma_invariants(p);
  if (s.sigma1 <= 0.0 || s.sigma2 <= 0.0)
    throw Error(ErrorCode::UnstableRegime, "band edges need Sigma1 > 0 and Sigma2 > 0");
  const double a = std::sqrt(s.sigma1), b = std::sqrt(s.sigma2);
  return {(a - b) * (a - b), (a + b) * (a + b)};
}

PhaseDiagnosis classify_phase(const ChainParams& p, double tol) {
  const auto s = sigma_invariants(p);
  PhaseDiagnosis d;
  const double disc = s.sigma1 * s.sigma2 - s.sigma3 * s.sigma3;
  const double scale = std::max(std::abs(s.sigma1 * s.sigma2), s.sigma3 * s.sigma3);
  d.skin_effect = disc < -1e-12 * scale;
  if (s.sigma1 <= 0.0 || s.sigma2 <= 0.0) {
    d.phase = Phase::Unstable;
    return d;
  }
  if (tol < 0.0) tol = 1e-9 * std::max(s.sigma1, s.sigma2);
  if (std::abs(s.sigma1 - s.sigma2) <= tol)
    d.phase = Phase::Boundary;
  else
    d.phase = s.sigma1 < s.sigma2 ? Phase::Topological : Phase::Trivial;
  d.band_edges = band_edges(p);
  return d;
}

BetaRoots beta_roots(const ChainParams& p, cd xi_squared) {
  const auto s = sigma_invariants(p);
  const double s12 = s.sigma1 * s.sigma2;
  const double disc = s.sigma3 * s.sigma3 - s12;
  BetaRoots r;
  r.xi_squared = xi_squared;
  r.degenerate = std::abs(disc) <= 1e-12 * std::max(std::abs(s12), s.sigma3 * s.sigma3);

  // D1 D2 = S1 S2; take the larger-magnitude denominator directly, the other from the product.
  const cd w = std::sqrt(cd(disc, 0.0));
  const cd d_plus = s.sigma3 + w;
  const cd d_minus = s.sigma3 - w;
  cd d1, d2;
  if (r.degenerate) {
    d1 = d2 = s.sigma3;
  } else if (std::abs(d_plus) >= std::abs(d_minus)) {
    d2 = d_plus;
    d1 = s12 / d_plus;
  } else {
    d1 = d_minus;
    d2 = s12 / d_minus;
  }
  if (std::abs(d1) == 0.0 || std::abs(d2) == 0.0)
    throw Error(ErrorCode::Domain, "beta_roots: vanishing denominator (Sigma3 = 0 and Sigma1 Sigma2 = 0)");

  const cd x = xi_squared - s.sigma1 - s.sigma2;
  const cd q = std::sqrt(x * x - 4.0 * s12);
  // X +/- sqrt(Q): avoid cancellation by building the small root from the product S1 S2.
  const cd big = (std::abs(x + q) >= std::abs(x - q)) ? x + q : x - q;
  const cd small = (std::abs(big) > 0.0) ? 4.0 * s12 / big : x;
  const cd num_plus = (big == x + q) ? big : small;
  const cd num_minus = (big == x + q) ? small : big;
  r.roots = {num_plus / (2.0 * d1), num_minus / (2.0 * d1), num_plus / (2.0 * d2), num_minus / (2.0 * d2)};
  return r;
}

std::vector<GbzSample> gbz_spectrum(const ChainParams& p, int n_samples) {
  if (n_samples < 1) throw Error(ErrorCode::InvalidArgument, "gbz_spectrum needs n_samples >= 1");
  const auto [lo, hi] = band_edges(p);
  std::vector<GbzSample> out;
  out.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    const double x2 = lo + (hi - lo) * (i + 0.5) / n_samples;
    const auto r = beta_roots(p, x2);
    out.push_back({std::sqrt(x2), std::abs(r.roots[0]), std::abs(r.roots[2])});
  }
  return out;
}

}  // namespace bosonchain
