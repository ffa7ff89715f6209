#include "bosonchain/lyapunov.hpp"

#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/MatrixFunctions>

#include "bosonchain/errors.hpp"

namespace bosonchain {

namespace {

struct Packing {
  long m;
  long index(long i, long j) const {
    if (i > j) std::swap(i, j);
    return i * m - i * (i - 1) / 2 + (j - i);
  }
  long size() const { return m * (m + 1) / 2; }
};

std::vector<Eigen::Triplet<double>> lyapunov_triplets(const Mat& a, const Packing& pk) {
  const long m = pk.m;
  std::vector<Eigen::Triplet<double>> trips;
  // Row (i, j): sum_k A_ik X_kj + sum_k A_jk X_ik.
  for (long i = 0; i < m; ++i) {
    for (long j = i; j < m; ++j) {
      const long r = pk.index(i, j);
      for (long k = 0; k < m; ++k) {
        if (a(i, k) != 0.0) trips.emplace_back(r, pk.index(k, j), a(i, k));
        if (a(j, k) != 0.0) trips.emplace_back(r, pk.index(i, k), a(j, k));
      }
    }
  }
  return trips;
}

Vec pack(const Mat& q, const Packing& pk) {
  Vec b(pk.size());
  for (long i = 0; i < pk.m; ++i)
    for (long j = i; j < pk.m; ++j) b(pk.index(i, j)) = q(i, j);
  return b;
}

Mat unpack(const Vec& x, const Packing& pk) {
  Mat out(pk.m, pk.m);
  for (long i = 0; i < pk.m; ++i)
    for (long j = i; j < pk.m; ++j) out(i, j) = out(j, i) = x(pk.index(i, j));
  return out;
}

}  // namespace

Mat solve_lyapunov(const Mat& a, const Mat& q) {
  if (a.rows() != a.cols() || q.rows() != a.rows() || q.cols() != a.cols())
    throw Error(ErrorCode::InvalidArgument, "solve_lyapunov: dimension mismatch");
  const Packing pk{a.rows()};
  const auto trips = lyapunov_triplets(a, pk);
  Eigen::SparseMatrix<double> l(pk.size(), pk.size());
  l.setFromTriplets(trips.begin(), trips.end());
  const Vec b = -pack(q, pk);

  Vec x;
  if (pk.size() <= kDenseLimit) {
    const Mat ld = Mat(l);
    Eigen::PartialPivLU<Mat> lu(ld);
    x = lu.solve(b);
    const Vec r = b - ld * x;
    x += lu.solve(r);
  } else {
    l.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(l);
    if (lu.info() != Eigen::Success) throw Error(ErrorCode::Domain, "solve_lyapunov: sparse factorization failed");
    x = lu.solve(b);
    const Vec r = b - l * x;
    x += lu.solve(r);
  }
  if (!x.allFinite()) throw Error(ErrorCode::Domain, "solve_lyapunov: singular system");
  return unpack(x, pk);
}

VanLoan van_loan(const Mat& a, const Mat& q, double t) {
  const long m = a.rows();
  Mat c = Mat::Zero(2 * m, 2 * m);
  c.topLeftCorner(m, m) = -a * t;
  c.topRightCorner(m, m) = q * t;
  c.bottomRightCorner(m, m) = a.transpose() * t;
  const Mat e = c.exp();
  VanLoan v;
  v.propagator = e.bottomRightCorner(m, m).transpose();
  v.integral = v.propagator * e.topRightCorner(m, m);
  return v;
}

}  // namespace bosonchain
