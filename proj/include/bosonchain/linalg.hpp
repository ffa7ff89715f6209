#pragma once

#include <complex>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

namespace bosonchain {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Eigenvalues of a general complex matrix, computed in extended precision.
// Non-normal BdG blocks with skin effect lose ~1e-5 in double at N = 20.
std::vector<cd> eigenvalues_extended(const CMat& m);

// Eigenvalues of the product b * c, formed and diagonalized in quad precision.
// Used for chiral matrices [[0, b], [c, 0]], whose squares decouple; strong skin
// effect defeats even long double at N = 20.
std::vector<cd> product_eigenvalues_quad(const CMat& b, const CMat& c);

// Sort by real part, then imaginary part.
void sort_re_im(std::vector<cd>& v);

double max_abs(const CMat& m);
double max_abs(const Mat& m);

// Neumaier-compensated accumulator.
template <class T>
class CompensatedSum {
 public:
  void add(T x) {
    T t = sum_ + x;
    if constexpr (std::is_same_v<T, double>) {
      comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    } else {
      comp_ = cd(comp_.real() + part(sum_.real(), x.real(), t.real()),
                 comp_.imag() + part(sum_.imag(), x.imag(), t.imag()));
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  static double part(double s, double x, double t) {
    return std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
  }
  T sum_{};
  T comp_{};
};

}  // namespace bosonchain
