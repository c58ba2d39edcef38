#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fredlab::linalg {

/// Dense real matrix, row-major. Zero-sized dimensions are allowed so that a
/// trivial subspace can carry a basis with no columns.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);
  static Matrix column(std::span<const double> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }
  const std::vector<double>& entries() const noexcept { return data_; }

  std::vector<double> column_copy(std::size_t j) const;
  std::vector<double> diagonal_copy() const;

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double a);

  double max_abs() const noexcept;
  double frobenius() const noexcept;
  double trace() const;
  bool all_finite() const noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double a, Matrix m);
Matrix operator*(const Matrix& a, const Matrix& b);

/// aᵀ b without forming the transpose.
Matrix multiply_tn(const Matrix& a, const Matrix& b);

std::vector<double> operator*(const Matrix& a, std::span<const double> x);

/// Symmetric part ½(A + Aᵀ).
Matrix symmetric_part(const Matrix& a);

/// max_ij |a_ij - a_ji|, relative to max(1, max|a_ij|).
double asymmetry(const Matrix& a);

/// Block matrix [[a, b], [c, d]].
Matrix block2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d);

/// Horizontal concatenation [a b].
Matrix hcat(const Matrix& a, const Matrix& b);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);

/// Complex matrix stored as a pair of real matrices, M = re + i·im.
struct ComplexMatrix {
  Matrix re;
  Matrix im;

  ComplexMatrix() = default;
  ComplexMatrix(Matrix real, Matrix imag);
  explicit ComplexMatrix(Matrix real);

  std::size_t rows() const noexcept { return re.rows(); }
  std::size_t cols() const noexcept { return re.cols(); }
  bool all_finite() const noexcept { return re.all_finite() && im.all_finite(); }

  /// Real 2m×2n representation [[re, -im], [im, re]].
  Matrix real_embedding() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace fredlab::linalg
