#pragma once

#include "bosonchain/linalg.hpp"

namespace bosonchain {

// Solves A X + X A^T + Q = 0 for symmetric X (Q symmetric) by vectorizing the
// M(M+1)/2 unique entries. Dense LU up to kDenseLimit unknowns, sparse LU above;
// one pass of iterative refinement either way.
Mat solve_lyapunov(const Mat& a, const Mat& q);

inline constexpr long kDenseLimit = 2500;

// Van Loan: integral_0^t e^{As} Q e^{A^T s} ds and e^{At}.
struct VanLoan {
  Mat integral;
  Mat propagator;
};
VanLoan van_loan(const Mat& a, const Mat& q, double t);

}  // namespace bosonchain
