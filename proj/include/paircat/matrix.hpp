#pragma once

#include <cassert>
#include <complex>
#include <vector>

namespace paircat {

// Dense Hermitian matrix, row-major. Mirrored writes go through
// set_hermitian_pair so that c(i,j) == conj(c(j,i)) holds exactly.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {}

  int dim() const noexcept { return dim_; }

  std::complex<double>& operator()(int i, int j) {
    return a_[static_cast<size_t>(i) * dim_ + j];
  }
  const std::complex<double>& operator()(int i, int j) const {
    return a_[static_cast<size_t>(i) * dim_ + j];
  }

  void set_hermitian_pair(int i, int j, std::complex<double> v) {
    if (i == j) {
      (*this)(i, i) = std::complex<double>(v.real(), 0.0);
    } else {
      (*this)(i, j) = v;
      (*this)(j, i) = std::conj(v);
    }
  }

  double trace_real() const {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i).real();
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : a_) s += std::norm(z);
    return std::sqrt(s);
  }

  double off_diagonal_norm() const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        if (i != j) s += std::norm((*this)(i, j));
    return std::sqrt(s);
  }

  const std::vector<std::complex<double>>& data() const noexcept { return a_; }

 private:
  int dim_ = 0;
  std::vector<std::complex<double>> a_;
};

}  // namespace paircat
