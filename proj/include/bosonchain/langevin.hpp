#pragma once

#include "bosonchain/chain_model.hpp"
#include "bosonchain/open_spectrum.hpp"

namespace bosonchain {

enum class AnalyticMethod { ExactSum, TrivialApprox, TopoApprox, EdgeReduced, TwoMode };
const char* to_string(AnalyticMethod m) noexcept;

// Squeezed-frame moments. assumptions_hold reports the |lambda| vs c*kappa
// separation the approximation relies on (always true for exact sums).
struct AnalyticMoments {
  CMat F_tilde;
  CMat G_tilde;
  AnalyticMethod method = AnalyticMethod::ExactSum;
  bool assumptions_hold = true;
};

inline constexpr double kNearZeroCutoff = 10.0;

// Throws AnalyticUnsupported (complex phases, mu != 0) or Unstable (Sigma <= 0, kappa <= 0).
void require_analytic_domain(const ChainParams& p);

AnalyticMoments exact_sums(const ChainParams& p);

AnalyticMoments two_mode_closed_form(const ChainParams& p);
double optimal_kappa(const ChainParams& p);  // 2 |t1'|

AnalyticMoments trivial_approx(const ChainParams& p, double cutoff = kNearZeroCutoff);
AnalyticMoments topo_approx(const ChainParams& p, double cutoff = kNearZeroCutoff);

// G~ for every mode pair from the edge-profile ansatz (odd sites 2m-1, even sites 2m).
CMat profile_reduced_squeezing(const ChainParams& p);

struct EdgeMoments {
  double K1 = 0.0;  // <a~1^dag a~1>
  double K2 = 0.0;  // <a~1^2>
  double K3 = 0.0;  // -i <a~1 a~2N>
  bool reduced = false;  // r_a == r_b closed forms used
};

EdgeMoments edge_moments(const ChainParams& p);

// F~ from the resonant sum, edge diagonal entries replaced by K1, G~ from the
// profile ansatz, F~(1, 2N) = 0.
AnalyticMoments edge_reduced(const ChainParams& p);

// Appendix C noise weights per site: f_k, g_k.
struct NoiseWeights {
  Vec f;
  Vec g;
};
NoiseWeights noise_weights(const SqueezeTransform& sq, double n_th);

}  // namespace bosonchain
