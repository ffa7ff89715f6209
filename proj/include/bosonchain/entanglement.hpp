#pragma once

#include "bosonchain/steady_state.hpp"

namespace bosonchain {

struct EntanglementReport {
  double K1 = 0.0;
  cd K2{0.0, 0.0};
  double K3 = 0.0;  // Re(-i <a_m a_m'>)
  double eta_minus = 0.5;
  double E_N = 0.0;
};

inline constexpr double kEntangledThreshold = 1e-9;

// eta- = | sqrt((1/2 + K1)^2 - K2^2) - |K3| |. The |K3| makes the result
// independent of the edge-pair labelling; see README.
EntanglementReport logneg_symmetric(double K1, double K2, double K3);

// v: 4x4 covariance, modes interleaved (x1, p1, x2, p2).
EntanglementReport logneg_general(const Mat& v, bool check_physical = true);

// 0-based modes. K fields are read from the state in its own frame.
EntanglementReport pair_report(const MomentState& s, int m, int mp, bool check_physical = true);

struct SqueezingDegree {
  double r_eff = 0.0;
  double theta = 0.0;  // angle of the minimal-variance direction in the (x, p) plane, [0, pi)
};

SqueezingDegree squeezing_degree(const MomentState& s, int m);

}  // namespace bosonchain
