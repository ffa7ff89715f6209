#include "bosonchain/linalg.hpp"

#include <algorithm>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>
#include <Eigen/Eigenvalues>

namespace bosonchain {

std::vector<cd> eigenvalues_extended(const CMat& m) {
  using cld = std::complex<long double>;
  using CMatL = Eigen::Matrix<cld, Eigen::Dynamic, Eigen::Dynamic>;
  const CMatL ml = m.cast<cld>();
  Eigen::ComplexEigenSolver<CMatL> es(ml, false);
  std::vector<cd> out(static_cast<size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const cld z = es.eigenvalues()(i);
    out[static_cast<size_t>(i)] = cd(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  }
  return out;
}

std::vector<cd> product_eigenvalues_quad(const CMat& b, const CMat& c) {
  using R = boost::multiprecision::float128;
  using CQ = Eigen::Matrix<std::complex<R>, Eigen::Dynamic, Eigen::Dynamic>;
  auto widen = [](const CMat& m) {
    CQ q(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) q(i, j) = std::complex<R>(R(m(i, j).real()), R(m(i, j).imag()));
    return q;
  };
  const CQ prod = widen(b) * widen(c);
  std::vector<cd> out(static_cast<size_t>(prod.rows()));
  // Real couplings give a real product; the real solver is several times cheaper.
  bool real = true;
  for (Eigen::Index i = 0; i < prod.size() && real; ++i) real = prod.data()[i].imag() == 0;
  if (real) {
    using RQ = Eigen::Matrix<R, Eigen::Dynamic, Eigen::Dynamic>;
    const RQ re = prod.unaryExpr([](const std::complex<R>& z) { return z.real(); });
    Eigen::EigenSolver<RQ> es(re, false);
    for (Eigen::Index i = 0; i < re.rows(); ++i) {
      const auto z = es.eigenvalues()(i);
      out[static_cast<size_t>(i)] = cd(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    }
    return out;
  }
  Eigen::ComplexEigenSolver<CQ> es(prod, false);
  for (Eigen::Index i = 0; i < prod.rows(); ++i) {
    const auto z = es.eigenvalues()(i);
    out[static_cast<size_t>(i)] = cd(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  }
  return out;
}

void sort_re_im(std::vector<cd>& v) {
  std::sort(v.begin(), v.end(), [](cd a, cd b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
}

double max_abs(const CMat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace bosonchain
