#include "fredlab/lagrangian/lagrangian.hpp"

#include "fredlab/error.hpp"
#include "fredlab/linalg/eigen.hpp"
#include "fredlab/topology/metrics.hpp"

namespace fredlab::lagrangian {

using linalg::Matrix;
using linalg::Subspace;

SymplecticDoubling::SymplecticDoubling(std::size_t half_dim) : n_(half_dim), j_(2 * half_dim, 2 * half_dim) {
  for (std::size_t i = 0; i < n_; ++i) {
    j_(i, n_ + i) = -1.0;
    j_(n_ + i, i) = 1.0;
  }
}

Subspace SymplecticDoubling::horizontal() const {
  Matrix b(2 * n_, n_);
  for (std::size_t i = 0; i < n_; ++i) b(i, i) = 1.0;
  return Subspace::from_orthonormal(std::move(b));
}

Subspace graph_of(const Matrix& l) {
  if (!l.is_square()) fail(ErrorCode::NonSquare, "graph needs a square matrix");
  const std::size_t n = l.rows();
  Matrix stacked(2 * n, n);
  stacked.set_block(0, 0, Matrix::identity(n));
  stacked.set_block(n, 0, l);
  return Subspace::span_of(stacked);
}

Subspace graph_subspace(const topology::SelfAdjointOperator& a) { return graph_of(a.matrix()); }

Matrix graph_projection_block(const topology::SelfAdjointOperator& a) {
  const Matrix& m = a.matrix();
  const Matrix w = linalg::spd_inverse(Matrix::identity(a.dim()) + m * m);
  const Matrix wa = w * m;
  const Matrix aw = m * w;
  return linalg::block2x2(w, wa, aw, aw * m);
}

double lagrangian_residual(const Subspace& s, const SymplecticDoubling& doubling) {
  if (s.ambient_dim() != doubling.dim()) {
    fail(ErrorCode::AmbientMismatch, "subspace does not live in the doubled space");
  }
  if (doubling.dim() == 0) return 0.0;
  const Matrix p = s.projection();
  const Matrix& j = doubling.J();
  return linalg::operator_norm(j * p * j.transpose() - s.complement_projection());
}

bool is_lagrangian(const Subspace& s, const SymplecticDoubling& doubling) {
  const double residual = lagrangian_residual(s, doubling);
  return s.dim() == doubling.half_dim() && residual <= 1e-10;
}

FredholmPairIndex fredholm_pair_index(const LagrangianPair& pair, const linalg::Tolerances& tol) {
  const linalg::MeetDims m = linalg::subspace_meet_dims(pair.lambda0, pair.lambda1, tol);
  return {static_cast<long>(m.dim_intersection) - static_cast<long>(m.codim_sum), m.dim_intersection};
}

topology::SelfAdjointOperator suspension(const Matrix& l) {
  if (!l.is_square()) fail(ErrorCode::NonSquare, "suspension needs a square matrix");
  const std::size_t n = l.rows();
  const Matrix zero(n, n);
  return topology::SelfAdjointOperator(linalg::block2x2(zero, l.transpose(), l, zero));
}

KatoPair kato_consistency(const topology::SelfAdjointOperator& a0, const topology::SelfAdjointOperator& a1) {
  if (a0.dim() != a1.dim()) fail(ErrorCode::DimensionMismatch, "operators differ in dimension");
  return {topology::subspace_gap(graph_subspace(a0), graph_subspace(a1)), topology::gap_metric(a0, a1)};
}

}  // namespace fredlab::lagrangian
