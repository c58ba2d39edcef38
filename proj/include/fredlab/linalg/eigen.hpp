#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <string>
#include <type_traits>
#include <vector>

#include "fredlab/error.hpp"
#include "fredlab/linalg/matrix.hpp"

namespace fredlab::linalg {

struct Tolerances {
  double rank_tol = 1e-8;  // relative singular-value cutoff
  double eig_tol = 1e-12;  // Jacobi stops when off(A) <= eig_tol * ||A||_F

  /// Throws InvalidConfig unless both are positive and rank_tol >= eig_tol.
  void validate() const;
};

/// A = Q diag(eigenvalues) Qᵀ with eigenvalues ascending and the columns of
/// Q orthonormal.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;

  std::size_t dim() const noexcept { return eigenvalues.size(); }

  /// Q diag(values) Qᵀ for one value per eigenvalue.
  Matrix reconstruct(std::span<const double> values) const;
  ComplexMatrix reconstruct(std::span<const std::complex<double>> values) const;
};

/// Symmetric eigendecomposition by cyclic Jacobi rotations (at most 100
/// sweeps). Throws NonSquare, NotSymmetric, NonFinite or NoConvergence.
SpectralDecomposition sym_eig(const Matrix& a, const Tolerances& tol = {});

/// Generalized problem K x = λ M x for symmetric K and symmetric positive
/// definite M, reduced through the Cholesky factor of M. Eigenvectors are
/// M-orthonormal.
SpectralDecomposition generalized_sym_eig(const Matrix& k, const Matrix& m, const Tolerances& tol = {});

/// f(A) = Q f(Λ) Qᵀ. A real-valued f yields a Matrix (symmetric); a
/// complex-valued f yields a ComplexMatrix. Throws
/// FunctionUndefinedAtEigenvalue when f is not finite at an eigenvalue.
template <class F>
  requires std::invocable<F, double>
auto apply_scalar_function(const SpectralDecomposition& d, F&& f) {
  using R = std::invoke_result_t<F, double>;
  if constexpr (std::is_same_v<std::decay_t<R>, std::complex<double>>) {
    std::vector<std::complex<double>> values;
    values.reserve(d.dim());
    for (double lambda : d.eigenvalues) {
      const std::complex<double> v = f(lambda);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        fail(ErrorCode::FunctionUndefinedAtEigenvalue, "f(" + std::to_string(lambda) + ") is not finite");
      }
      values.push_back(v);
    }
    return d.reconstruct(std::span<const std::complex<double>>(values));
  } else {
    static_assert(std::is_convertible_v<R, double>, "scalar function must return double or complex<double>");
    std::vector<double> values;
    values.reserve(d.dim());
    for (double lambda : d.eigenvalues) {
      const double v = f(lambda);
      if (!std::isfinite(v)) {
        fail(ErrorCode::FunctionUndefinedAtEigenvalue, "f(" + std::to_string(lambda) + ") is not finite");
      }
      values.push_back(v);
    }
    return d.reconstruct(std::span<const double>(values));
  }
}

/// Largest singular value: square root of the top eigenvalue of the smaller
/// Gram matrix. Throws EmptyMatrix or NonFinite.
double operator_norm(const Matrix& m, const Tolerances& tol = {});

/// Largest singular value of a complex matrix via the real symmetric
/// 2n×2n embedding of M*M.
double operator_norm(const ComplexMatrix& m, const Tolerances& tol = {});

/// All singular values, descending, by one-sided (Hestenes) Jacobi. Small
/// singular values keep high relative accuracy, which the Gram route loses.
std::vector<double> singular_values(const Matrix& m);

/// Numerical rank: singular values above rank_tol times the largest.
std::size_t numerical_rank(const Matrix& m, const Tolerances& tol = {});

/// Lower-triangular L with A = L Lᵀ. Throws NotPositiveDefinite.
Matrix cholesky_lower(const Matrix& a);

/// L⁻¹ B for lower-triangular L.
Matrix lower_solve(const Matrix& l, const Matrix& b);

/// L⁻ᵀ B for lower-triangular L.
Matrix lower_transpose_solve(const Matrix& l, const Matrix& b);

/// A⁻¹ B given the Cholesky factor L of A.
Matrix cholesky_solve(const Matrix& l, const Matrix& b);

/// Inverse of a symmetric positive definite matrix.
Matrix spd_inverse(const Matrix& a);

}  // namespace fredlab::linalg
