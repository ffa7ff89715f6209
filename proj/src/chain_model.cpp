#include "bosonchain/chain_model.hpp"

#include <cmath>
#include <numbers>

#include "bosonchain/errors.hpp"

namespace bosonchain {

namespace {

constexpr double kRealTol = 1e-12;

bool phase_is_real(cd z) { return std::abs(z.imag()) <= kRealTol * std::abs(z); }

}  // namespace

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Config: return "config error";
    case ErrorCode::UnstableRegime: return "unstable regime";
    case ErrorCode::Unstable: return "unstable";
    case ErrorCode::NotTopological: return "not topological";
    case ErrorCode::WrongPhase: return "wrong phase";
    case ErrorCode::AnalyticUnsupported: return "analytic unsupported";
    case ErrorCode::UnphysicalCovariance: return "unphysical covariance";
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::Io: return "I/O error";
  }
  return "unknown";
}

cd ChainParams::t2() const { return q_t * t1 * std::polar(1.0, phi_t); }

cd ChainParams::delta2() const {
  if (delta2_abs) return *delta2_abs * std::polar(1.0, phi_delta);
  return q_delta * delta1 * std::polar(1.0, phi_delta);
}

Couplings ChainParams::couplings() const { return {t1, t2(), delta1, delta2()}; }

ChainParams ChainParams::from_couplings(const Couplings& c, const ChainParams& rest) {
  if (c.t1 == 0.0 || !std::isfinite(c.t1))
    throw Error(ErrorCode::InvalidArgument, "t1 must be finite and nonzero");
  ChainParams p = rest;
  p.t1 = c.t1;
  p.delta1 = c.delta1;
  p.q_t = std::abs(c.t2) / std::abs(c.t1);
  if (std::abs(c.t2) > 0.0) p.phi_t = std::arg(c.t2 / c.t1);
  p.delta2_abs.reset();
  if (c.delta1 != 0.0) {
    p.q_delta = std::abs(c.delta2) / std::abs(c.delta1);
    if (std::abs(c.delta2) > 0.0) p.phi_delta = std::arg(c.delta2 / c.delta1);
  } else if (std::abs(c.delta2) > 0.0) {
    p.q_delta = 0.0;
    p.delta2_abs = std::abs(c.delta2);
    p.phi_delta = std::arg(c.delta2);
  } else {
    p.q_delta = 0.0;
  }
  return p;
}

ValidationVerdict validate(const ChainParams& p) {
  ValidationVerdict v;
  auto fail = [&](const char* msg) {
    v.ok = false;
    v.violations.emplace_back(msg);
  };
  for (double x : {p.t1, p.delta1, p.q_t, p.q_delta, p.phi_t, p.phi_delta, p.kappa, p.n_th, p.mu})
    if (!std::isfinite(x)) {
      fail("all parameters finite");
      break;
    }
  if (p.n_cells < 1) fail("n_cells >= 1");
  if (p.kappa < 0.0) fail("kappa >= 0");
  if (p.n_th < 0.0) fail("n_th >= 0");
  if (p.t1 == 0.0) fail("t1 != 0");
  if (p.q_t < 0.0) fail("q_t >= 0");
  if (p.q_delta < 0.0) fail("q_delta >= 0");
  if (p.delta2_abs && *p.delta2_abs < 0.0) fail("delta2_abs >= 0");
  v.analytic_restricted = !is_real_coupling(p);
  return v;
}

void require_valid(const ChainParams& p) {
  auto v = validate(p);
  if (v.ok) return;
  std::string msg = "invalid parameters:";
  for (const auto& s : v.violations) msg += " [" + s + "]";
  throw Error(ErrorCode::Config, msg);
}

SigmaInvariants sigma_invariants(const ChainParams& p) {
  const cd t2 = p.t2();
  const cd d2 = p.delta2();
  SigmaInvariants s;
  s.sigma1 = p.t1 * p.t1 - p.delta1 * p.delta1;
  s.sigma2 = std::norm(t2) - std::norm(d2);
  s.sigma3 = p.t1 * t2.real() - p.delta1 * d2.real();
  return s;
}

bool is_real_coupling(const ChainParams& p) {
  return phase_is_real(p.t2()) && phase_is_real(p.delta2());
}

EffectiveCouplings effective_couplings(const ChainParams& p) {
  if (!is_real_coupling(p))
    throw Error(ErrorCode::AnalyticUnsupported, "effective couplings need real couplings (phases 0 or pi)");
  EffectiveCouplings e;
  const double s1 = p.t1 * p.t1 - p.delta1 * p.delta1;
  if (s1 <= 0.0) throw Error(ErrorCode::UnstableRegime, "t1^2 <= delta1^2: no stable squeezing frame");
  e.t1p = std::copysign(std::sqrt(s1), p.t1);
  const double t2 = p.t2().real();
  const double d2 = p.delta2().real();
  const double s2 = t2 * t2 - d2 * d2;
  if (p.n_cells >= 2) {
    if (s2 <= 0.0) throw Error(ErrorCode::UnstableRegime, "|t2|^2 <= |delta2|^2: no stable squeezing frame");
    e.t2p = std::copysign(std::sqrt(s2), t2);
  } else if (s2 > 0.0) {
    e.t2p = std::copysign(std::sqrt(s2), t2);
  }
  return e;
}

SqueezeTransform squeeze_transform(const ChainParams& p) {
  const auto e = effective_couplings(p);  // validates the regime
  SqueezeTransform s;
  s.r_a = std::atanh(p.delta1 / p.t1);
  const double t2 = p.t2().real();
  const double d2 = p.delta2().real();
  if (e.t2p != 0.0) s.r_b = std::atanh(d2 / t2);
  const int n = p.n_cells;
  const double dr = s.r_b - s.r_a;
  s.r_0 = (s.r_b - n * dr) / 2.0;
  s.r.resize(2 * n);
  for (int j = 1; j <= n; ++j) {
    s.r(2 * j - 2) = (j - 1) * dr + s.r_0;
    s.r(2 * j - 1) = -j * dr + s.r_b - s.r_0;
  }
  return s;
}

CMat hopping_block(const ChainParams& p) {
  const int m = p.n_modes();
  const cd t1 = p.t1;
  const cd t2 = p.t2();
  CMat h = CMat::Zero(m, m);
  for (int c = 0; c < p.n_cells; ++c) {
    h(2 * c, 2 * c + 1) = t1;
    h(2 * c + 1, 2 * c) = std::conj(t1);
    if (c + 1 < p.n_cells) {
      h(2 * c + 2, 2 * c + 1) = t2;
      h(2 * c + 1, 2 * c + 2) = std::conj(t2);
    }
  }
  h.diagonal().setConstant(p.mu);
  return h;
}

CMat pairing_block(const ChainParams& p) {
  const int m = p.n_modes();
  const cd d1 = p.delta1;
  const cd d2 = p.delta2();
  CMat d = CMat::Zero(m, m);
  for (int c = 0; c < p.n_cells; ++c) {
    d(2 * c, 2 * c + 1) = d(2 * c + 1, 2 * c) = d1;
    if (c + 1 < p.n_cells) d(2 * c + 2, 2 * c + 1) = d(2 * c + 1, 2 * c + 2) = d2;
  }
  return d;
}

BdgMatrix build_bdg(const ChainParams& p, Boundary boundary, double k) {
  BdgMatrix b;
  if (boundary == Boundary::Open) {
    const int m = p.n_modes();
    const CMat h0 = hopping_block(p);
    const CMat d = pairing_block(p);
    b.h.resize(2 * m, 2 * m);
    b.h << h0, d, d.conjugate(), h0.conjugate();
    b.tau_z.resize(2 * m);
    b.tau_z << Vec::Ones(m), -Vec::Ones(m);
    return b;
  }
  const cd t1 = p.t1, t2 = p.t2(), d1 = p.delta1, d2 = p.delta2();
  const cd ep = std::polar(1.0, k), em = std::conj(ep);
  const cd mu = p.mu;
  b.h.resize(4, 4);
  b.h << mu, t1 + t2 * ep, 0.0, d1 + d2 * ep,
         std::conj(t1) + std::conj(t2) * em, mu, d1 + d2 * em, 0.0,
         0.0, std::conj(d1) + std::conj(d2) * ep, mu, std::conj(t1) + std::conj(t2) * ep,
         std::conj(d1) + std::conj(d2) * em, 0.0, t1 + t2 * em, mu;
  b.tau_z.resize(4);
  b.tau_z << 1, 1, -1, -1;
  return b;
}

Vec chiral_signature(int n_modes, bool doubled) {
  Vec s(n_modes);
  for (int i = 0; i < n_modes; ++i) s(i) = (i % 2 == 0) ? 1.0 : -1.0;
  if (!doubled) return s;
  Vec g(2 * n_modes);
  g << s, s;
  return g;
}

Mat build_coupling_matrix(const ChainParams& p) {
  const auto e = effective_couplings(p);
  const int m = p.n_modes();
  Mat s = Mat::Zero(m, m);
  for (int i = 0; i + 1 < m; ++i) s(i, i + 1) = s(i + 1, i) = (i % 2 == 0) ? e.t1p : e.t2p;
  return s;
}

}  // namespace bosonchain
