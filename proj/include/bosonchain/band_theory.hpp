#pragma once

#include <array>
#include <utility>
#include <vector>

#include "bosonchain/chain_model.hpp"

namespace bosonchain {

struct BlochSample {
  double k = 0.0;
  std::array<cd, 4> xi;          // sorted by (Re, Im)
  std::array<cd, 4> xi_squared;  // xi_squared[i] == xi[i]^2
};

BlochSample bloch_spectrum(const ChainParams& p, double k);

// ((sqrt S1 - sqrt S2)^2, (sqrt S1 + sqrt S2)^2); throws UnstableRegime unless S1, S2 > 0.
std::pair<double, double> band_edges(const ChainParams& p);

enum class Phase { Trivial, Topological, Boundary, Unstable };
const char* to_string(Phase phase) noexcept;

struct PhaseDiagnosis {
  Phase phase = Phase::Unstable;
  bool skin_effect = false;
  std::pair<double, double> band_edges{0.0, 0.0};  // zeros when unstable
};

// tol < 0 selects the default 1e-9 * max(S1, S2).
PhaseDiagnosis classify_phase(const ChainParams& p, double tol = -1.0);

struct BetaRoots {
  cd xi_squared;
  // roots[0], roots[1]: first denominator (Sigma3 - sqrt(Sigma3^2 - S1 S2)), +/- numerator root;
  // roots[2], roots[3]: second denominator.
  std::array<cd, 4> roots;
  bool degenerate = false;  // Sigma3^2 == S1 S2: no skin effect, |beta| = 1 in band
};

BetaRoots beta_roots(const ChainParams& p, cd xi_squared);

struct GbzSample {
  double xi = 0.0;  // sqrt of the sampled xi^2
  double abs_beta_pair1 = 0.0;
  double abs_beta_pair2 = 0.0;
};

// Samples xi^2 uniformly (cell midpoints) strictly inside the band.
std::vector<GbzSample> gbz_spectrum(const ChainParams& p, int n_samples);

}  // namespace bosonchain
