#pragma once

#include <cstddef>
#include <vector>

#include "fredlab/linalg/eigen.hpp"
#include "fredlab/linalg/matrix.hpp"

namespace fredlab::linalg {

/// Linear subspace of R^m held by an orthonormal basis (columns of an m×d
/// matrix). d = 0 is legal.
class Subspace {
 public:
  /// Takes an already orthonormal basis; throws InvalidSpec if
  /// ||BᵀB - I||_max > 1e-12.
  static Subspace from_orthonormal(Matrix basis);

  /// Orthonormalizes the columns of `vectors` by modified Gram-Schmidt with
  /// one reorthogonalization pass; columns whose residual falls below
  /// rank_tol (relative to the largest input column) are dropped.
  static Subspace span_of(const Matrix& vectors, const Tolerances& tol = {});

  static Subspace zero(std::size_t ambient_dim);
  static Subspace full(std::size_t ambient_dim);

  std::size_t ambient_dim() const noexcept { return basis_.rows(); }
  std::size_t dim() const noexcept { return basis_.cols(); }
  const Matrix& basis() const noexcept { return basis_; }

  /// Orthogonal projection B Bᵀ.
  Matrix projection() const;

  /// Projection onto the orthogonal complement.
  Matrix complement_projection() const;

  /// Orthonormal basis of the orthogonal complement.
  Subspace complement(const Tolerances& tol = {}) const;

 private:
  explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
  Matrix basis_;
};

Matrix projection_from_basis(const Subspace& s);

struct MeetDims {
  std::size_t dim_intersection;
  std::size_t codim_sum;
};

/// dim(S1 ∩ S2) from the sines of the principal angles (singular values of
/// (I - P1) B2 at or below rank_tol); codim(S1 + S2) = m - rank([B1 B2]).
MeetDims subspace_meet_dims(const Subspace& s1, const Subspace& s2, const Tolerances& tol = {});

/// Cosines of the principal angles, descending (largest cosine first).
std::vector<double> principal_cosines(const Subspace& s1, const Subspace& s2);

/// Sines of the principal angles, ascending, from the component of S2
/// orthogonal to S1 (accurate for small angles).
std::vector<double> principal_sines(const Subspace& s1, const Subspace& s2);

}  // namespace fredlab::linalg
