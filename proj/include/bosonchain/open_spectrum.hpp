#pragma once

#include <vector>

#include "bosonchain/chain_model.hpp"

namespace bosonchain {

// Eigenvalues of tau_z H_M for the open chain, sorted by (Re, Im).
std::vector<cd> bdg_eigenvalues(const ChainParams& p);

// Each excitation appears twice in the doubled spectrum (xi and -xi*), so this
// returns (#{|xi| < threshold}) / 2.
int count_excitations_below(const std::vector<cd>& eigs, double threshold);

double min_abs(const std::vector<cd>& eigs);

struct SpectralDecomposition {
  Vec lambdas;  // ascending
  Mat vectors;  // columns alpha_j, orthonormal
  std::vector<int> partner;  // index of the -lambda partner; vectors(:, partner[j]) = Gamma vectors(:, j)
};

SpectralDecomposition ssh_eigendecomposition(const Mat& s);

// Indices of the two smallest-|lambda| states: first the lambda >= 0 one.
std::pair<int, int> edge_pair(const SpectralDecomposition& d);

struct AnalyticEdgeData {
  double delta = 0.0;
  double epsilon = 0.0;
  double l = 0.0;
  double L1 = 0.0;
  double L2 = 0.0;
  Vec profile;           // |alpha_{1,k}| ~ l e^{-(j-1) eps} (odd), l e^{(j-N) eps} (even)
  double overlap = 0.0;  // min over the edge pair of sum_k |alpha_exact,k| profile_k
};

AnalyticEdgeData edge_modes(const ChainParams& p);

// (1 - e^{-2(N-1)x}) / (1 - e^{-2x}), continuous at x = 0.
double edge_geometric_sum(double x, int n_cells);

// First-moment drift -kappa/2 - i tau_z H_M (mu included).
CMat drift_matrix(const ChainParams& p);

struct StabilityReport {
  bool stable = false;
  double spectral_abscissa = 0.0;
  double spectral_radius = 0.0;  // of tau_z H_M
};

StabilityReport assess_stability(const ChainParams& p);

}  // namespace bosonchain
