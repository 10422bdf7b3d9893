#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace xxring {

using cplx = std::complex<double>;
using StateVector = std::vector<cplx>;

/// Dense square complex matrix, row-major. Used for Hermitian operators.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

  std::size_t dim() const { return dim_; }
  cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  std::span<cplx> row(std::size_t i) { return {entries_.data() + i * dim_, dim_}; }
  std::span<const cplx> row(std::size_t i) const { return {entries_.data() + i * dim_, dim_}; }
  const std::vector<cplx>& entries() const { return entries_; }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : entries_) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : entries_) m = std::max(m, std::abs(z));
    return m;
  }

  /// max |a_ij - conj(a_ji)| relative to max |a_ij| (absolute when the matrix is zero).
  double hermiticity_defect() const {
    double d = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i; j < dim_; ++j)
        d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    const double scale = max_abs();
    return scale > 0.0 ? d / scale : d;
  }

  bool is_hermitian(double rel_tol = 1e-12) const { return hermiticity_defect() <= rel_tol; }

  StateVector multiply(std::span<const cplx> v) const {
    if (v.size() != dim_) throw std::invalid_argument("matrix-vector dimension mismatch");
    StateVector out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      cplx acc = 0.0;
      const auto r = row(i);
      for (std::size_t j = 0; j < dim_; ++j) acc += r[j] * v[j];
      out[i] = acc;
    }
    return out;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> entries_;
};

inline double norm2(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

inline cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace xxring
