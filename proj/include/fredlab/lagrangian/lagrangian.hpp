#pragma once

#include <cstddef>

#include "fredlab/linalg/matrix.hpp"
#include "fredlab/linalg/subspace.hpp"
#include "fredlab/topology/operator.hpp"

namespace fredlab::lagrangian {

/// H ⊕ H with H = R^N and complex structure J = [[0, -I], [I, 0]].
class SymplecticDoubling {
 public:
  explicit SymplecticDoubling(std::size_t half_dim);

  std::size_t half_dim() const noexcept { return n_; }
  std::size_t dim() const noexcept { return 2 * n_; }
  const linalg::Matrix& J() const noexcept { return j_; }

  /// Λ_0 = H ⊕ 0.
  linalg::Subspace horizontal() const;

 private:
  std::size_t n_;
  linalg::Matrix j_;
};

/// Graph {(x, Lx)} of an arbitrary square matrix, orthonormalized by
/// Gram-Schmidt on the columns of [I; L].
linalg::Subspace graph_of(const linalg::Matrix& l);

linalg::Subspace graph_subspace(const topology::SelfAdjointOperator& a);

/// Projection onto the graph from the block formula
/// [[W, W A], [A W, A W A]] with W = (1 + A·A)⁻¹ inverted by Cholesky.
linalg::Matrix graph_projection_block(const topology::SelfAdjointOperator& a);

/// ||J P Jᵀ - (I - P)||. Throws AmbientMismatch.
double lagrangian_residual(const linalg::Subspace& s, const SymplecticDoubling& doubling);

/// dim S = N and lagrangian_residual <= 1e-10.
bool is_lagrangian(const linalg::Subspace& s, const SymplecticDoubling& doubling);

struct LagrangianPair {
  linalg::Subspace lambda0;
  linalg::Subspace lambda1;
};

struct FredholmPairIndex {
  long index;
  std::size_t dim_ker;
};

/// index = dim(Λ0 ∩ Λ1) - codim(Λ0 + Λ1), dim_ker = dim(Λ0 ∩ Λ1).
FredholmPairIndex fredholm_pair_index(const LagrangianPair& pair, const linalg::Tolerances& tol = {});

/// [[0, Lᵀ], [L, 0]]. Throws NonSquare.
topology::SelfAdjointOperator suspension(const linalg::Matrix& l);

struct KatoPair {
  double delta;  // δ of the graphs
  double gamma;  // γ of the operators
};

KatoPair kato_consistency(const topology::SelfAdjointOperator& a0, const topology::SelfAdjointOperator& a1);

}  // namespace fredlab::lagrangian
