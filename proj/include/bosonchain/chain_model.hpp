#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bosonchain/linalg.hpp"

namespace bosonchain {

// Absolute couplings. t1 and delta1 are real; the relative phases live on t2, delta2.
struct Couplings {
  double t1 = 1.0;
  cd t2{0.0, 0.0};
  double delta1 = 0.0;
  cd delta2{0.0, 0.0};
};

struct ChainParams {
  double t1 = 1.0;
  double delta1 = 0.0;
  double q_t = 1.0;       // |t2| / |t1|
  double q_delta = 0.0;   // |delta2| / |delta1|
  double phi_t = 0.0;     // t2 = q_t t1 e^{i phi_t}
  double phi_delta = 0.0; // delta2 = q_delta delta1 e^{i phi_delta}
  int n_cells = 1;
  double kappa = 0.0;
  double n_th = 0.0;
  double mu = 0.0;
  // |delta2| when delta1 == 0; q_delta is then unused.
  std::optional<double> delta2_abs;

  int n_modes() const { return 2 * n_cells; }
  cd t2() const;
  cd delta2() const;
  Couplings couplings() const;

  // Keeps n_cells, kappa, n_th, mu from `rest`; t1 must be nonzero.
  static ChainParams from_couplings(const Couplings& c, const ChainParams& rest);

  bool operator==(const ChainParams&) const = default;
};

struct ValidationVerdict {
  bool ok = true;
  std::vector<std::string> violations;
  bool analytic_restricted = false;
};

ValidationVerdict validate(const ChainParams& p);
// Throws Error(Config) listing the violations.
void require_valid(const ChainParams& p);

struct SigmaInvariants {
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double sigma3 = 0.0;
};

SigmaInvariants sigma_invariants(const ChainParams& p);

// Phases are 0 or pi (up to 1e-12), so all couplings are real after sign folding.
bool is_real_coupling(const ChainParams& p);

struct EffectiveCouplings {
  double t1p = 0.0;  // sign(t1) sqrt(t1^2 - delta1^2)
  double t2p = 0.0;
};

// Signed effective couplings. For a single cell t2 plays no role and may be anything.
EffectiveCouplings effective_couplings(const ChainParams& p);

struct SqueezeTransform {
  double r_a = 0.0;
  double r_b = 0.0;
  double r_0 = 0.0;
  Vec r;  // per site, 0-based index k <-> site k+1
};

SqueezeTransform squeeze_transform(const ChainParams& p);

enum class Boundary { Open, PeriodicAtK };

struct BdgMatrix {
  CMat h;     // [[h0, D], [D*, h0*]]
  Vec tau_z;  // +1 particle block, -1 hole block
};

BdgMatrix build_bdg(const ChainParams& p, Boundary boundary = Boundary::Open, double k = 0.0);

// Sublattice sign in both blocks: +1 on odd sites, -1 on even sites.
Vec chiral_signature(int n_modes, bool doubled);

// Real symmetric tridiagonal SSH matrix with off-diagonals t1', t2', t1', ...
Mat build_coupling_matrix(const ChainParams& p);

// Number-conserving block h0 (with mu on the diagonal) and pairing block D.
CMat hopping_block(const ChainParams& p);
CMat pairing_block(const ChainParams& p);

}  // namespace bosonchain
