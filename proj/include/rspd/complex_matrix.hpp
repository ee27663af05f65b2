#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace rspd {

using cplx = std::complex<double>;

/// Absolute tolerance for zero and equality tests on complex scalars.
inline constexpr double kTol = 1e-9;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix of complex doubles.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const cplx> d);
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool same_shape(const ComplexMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const cplx> entries() const { return data_; }
  std::span<cplx> entries() { return data_; }
  std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  ComplexMatrix conj() const;
  ComplexMatrix transpose() const;
  ComplexMatrix adjoint() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  double max_abs() const;
  bool is_zero(double tol = kTol) const;
  bool approx_equal(const ComplexMatrix& o, double tol = kTol) const;
  /// Largest off-diagonal magnitude; square matrices only.
  double max_off_diagonal() const;
  bool is_diagonal(double tol = kTol) const { return max_off_diagonal() <= tol; }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
ComplexMatrix operator*(cplx s, ComplexMatrix a);

/// Row vector times matrix.
std::vector<cplx> operator*(std::span<const cplx> v, const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b);
/// [a b] side by side.
ComplexMatrix hcat(const ComplexMatrix& a, const ComplexMatrix& b);
/// [a; b] stacked.
ComplexMatrix vcat(const ComplexMatrix& a, const ComplexMatrix& b);

/// Gauss-Jordan inverse with partial pivoting. Throws std::domain_error when singular.
ComplexMatrix inverse(const ComplexMatrix& m);

/// Numerical rank by full-pivot elimination; pivots below rel_tol * max|m| count as zero.
std::size_t rank(const ComplexMatrix& m, double rel_tol = 1e-10);

std::size_t count_nonzero(const ComplexMatrix& m, double tol = kTol);

}  // namespace rspd
