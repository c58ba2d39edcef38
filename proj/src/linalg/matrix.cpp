#include "fredlab/linalg/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "fredlab/error.hpp"
#include "fredlab/simd/kernels.hpp"

namespace fredlab::linalg {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorCode::DimensionMismatch, std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                                           std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                                           "x" + std::to_string(b.cols()));
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    fail(ErrorCode::DimensionMismatch, "entry count " + std::to_string(data_.size()) + " != rows*cols");
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) fail(ErrorCode::DimensionMismatch, "ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::column(std::span<const double> v) {
  return Matrix(v.size(), 1, std::vector<double>(v.begin(), v.end()));
}

std::vector<double> Matrix::column_copy(std::size_t j) const {
  std::vector<double> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<double> Matrix::diagonal_copy() const {
  const std::size_t n = std::min(rows_, cols_);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = (*this)(i, i);
  return d;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) fail(ErrorCode::DimensionMismatch, "block out of range");
  Matrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) fail(ErrorCode::DimensionMismatch, "block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require_same_shape(*this, o, "operator+");
  simd::kernels().axpy(1.0, o.data(), data(), data_.size());
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require_same_shape(*this, o, "operator-");
  simd::kernels().axpy(-1.0, o.data(), data(), data_.size());
  return *this;
}

Matrix& Matrix::operator*=(double a) {
  simd::kernels().scal(a, data(), data_.size());
  return *this;
}

double Matrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::frobenius() const noexcept {
  return std::sqrt(simd::kernels().dot(data(), data(), data_.size()));
}

double Matrix::trace() const {
  if (!is_square()) fail(ErrorCode::NonSquare, "trace of non-square matrix");
  double t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

bool Matrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double a, Matrix m) { return m *= a; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::DimensionMismatch, "matrix product inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  const auto& k = simd::kernels();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* ci = c.row(i).data();
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const double aip = a(i, p);
      if (aip != 0.0) k.axpy(aip, b.row(p).data(), ci, b.cols());
    }
  }
  return c;
}

Matrix multiply_tn(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) fail(ErrorCode::DimensionMismatch, "aᵀb row counts differ");
  Matrix c(a.cols(), b.cols());
  const auto& k = simd::kernels();
  for (std::size_t p = 0; p < a.rows(); ++p) {
    const double* bp = b.row(p).data();
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double api = a(p, i);
      if (api != 0.0) k.axpy(api, bp, c.row(i).data(), b.cols());
    }
  }
  return c;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) fail(ErrorCode::DimensionMismatch, "matrix-vector size mismatch");
  std::vector<double> y(a.rows());
  const auto& k = simd::kernels();
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = k.dot(a.row(i).data(), x.data(), x.size());
  return y;
}

Matrix symmetric_part(const Matrix& a) {
  if (!a.is_square()) fail(ErrorCode::NonSquare, "symmetric part of non-square matrix");
  Matrix s(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
  return s;
}

double asymmetry(const Matrix& a) {
  if (!a.is_square()) fail(ErrorCode::NonSquare, "asymmetry of non-square matrix");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - a(j, i)));
  return worst / std::max(1.0, a.max_abs());
}

Matrix block2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols()) {
    fail(ErrorCode::DimensionMismatch, "incompatible blocks");
  }
  Matrix m(a.rows() + c.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  m.set_block(a.rows(), 0, c);
  m.set_block(a.rows(), a.cols(), d);
  return m;
}

Matrix hcat(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) fail(ErrorCode::DimensionMismatch, "hcat row counts differ");
  Matrix m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(ErrorCode::DimensionMismatch, "dot of unequal lengths");
  return simd::kernels().dot(x.data(), y.data(), x.size());
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

ComplexMatrix::ComplexMatrix(Matrix real, Matrix imag) : re(std::move(real)), im(std::move(imag)) {
  if (re.rows() != im.rows() || re.cols() != im.cols()) {
    fail(ErrorCode::DimensionMismatch, "real and imaginary parts differ in shape");
  }
}

ComplexMatrix::ComplexMatrix(Matrix real) : re(std::move(real)), im(re.rows(), re.cols()) {}

Matrix ComplexMatrix::real_embedding() const {
  Matrix neg_im = im;
  neg_im *= -1.0;
  return block2x2(re, neg_im, im, re);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  re += o.re;
  im += o.im;
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return ComplexMatrix(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

}  // namespace fredlab::linalg
