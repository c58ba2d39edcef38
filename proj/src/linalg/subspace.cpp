#include "fredlab/linalg/subspace.hpp"

#include <algorithm>
#include <cmath>

#include "fredlab/simd/kernels.hpp"

namespace fredlab::linalg {

namespace {

void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    fail(ErrorCode::AmbientMismatch,
         "ambient dimensions " + std::to_string(a.ambient_dim()) + " and " + std::to_string(b.ambient_dim()));
  }
}

}  // namespace

Subspace Subspace::from_orthonormal(Matrix basis) {
  if (!basis.all_finite()) fail(ErrorCode::NonFinite, "subspace basis has non-finite entries");
  if (basis.cols() > basis.rows()) fail(ErrorCode::InvalidSpec, "more basis vectors than ambient dimension");
  if (basis.cols() > 0) {
    Matrix gram = multiply_tn(basis, basis);
    gram -= Matrix::identity(basis.cols());
    if (gram.max_abs() > 1e-12) fail(ErrorCode::InvalidSpec, "basis is not orthonormal");
  }
  return Subspace(std::move(basis));
}

Subspace Subspace::span_of(const Matrix& vectors, const Tolerances& tol) {
  const std::size_t m = vectors.rows();
  const auto& k = simd::kernels();
  // Work on columns as contiguous rows.
  Matrix cols = vectors.transpose();
  double scale = 0.0;
  for (std::size_t j = 0; j < cols.rows(); ++j) scale = std::max(scale, norm2(cols.row(j)));
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < cols.rows(); ++j) {
    double* v = cols.row(j).data();
    const double before = k.dot(v, v, m);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i : kept) {
        const double* q = cols.row(i).data();
        k.axpy(-k.dot(q, v, m), q, v, m);
      }
    }
    const double after = std::sqrt(k.dot(v, v, m));
    if (scale == 0.0 || after <= tol.rank_tol * scale || after <= tol.rank_tol * std::sqrt(before)) continue;
    k.scal(1.0 / after, v, m);
    kept.push_back(j);
  }
  Matrix basis(m, kept.size());
  for (std::size_t c = 0; c < kept.size(); ++c)
    for (std::size_t i = 0; i < m; ++i) basis(i, c) = cols(kept[c], i);
  return Subspace(std::move(basis));
}

Subspace Subspace::zero(std::size_t ambient_dim) { return Subspace(Matrix(ambient_dim, 0)); }

Subspace Subspace::full(std::size_t ambient_dim) { return Subspace(Matrix::identity(ambient_dim)); }

Matrix Subspace::projection() const {
  const std::size_t m = ambient_dim();
  if (dim() == 0) return Matrix(m, m);
  const Matrix bt = basis_.transpose();
  return symmetric_part(multiply_tn(bt, bt));
}

Matrix Subspace::complement_projection() const { return Matrix::identity(ambient_dim()) - projection(); }

Subspace Subspace::complement(const Tolerances& tol) const {
  // Columns of I - P span the complement.
  return span_of(complement_projection(), tol);
}

Matrix projection_from_basis(const Subspace& s) { return s.projection(); }

std::vector<double> principal_cosines(const Subspace& s1, const Subspace& s2) {
  require_same_ambient(s1, s2);
  if (s1.dim() == 0 || s2.dim() == 0) return {};
  std::vector<double> sv = singular_values(multiply_tn(s1.basis(), s2.basis()));
  for (double& c : sv) c = std::min(c, 1.0);
  return sv;
}

std::vector<double> principal_sines(const Subspace& s1, const Subspace& s2) {
  require_same_ambient(s1, s2);
  if (s2.dim() == 0) return {};
  // Residual of B2 after projecting out S1; its singular values are the sines.
  Matrix r = s2.basis();
  if (s1.dim() > 0) r -= s1.basis() * multiply_tn(s1.basis(), s2.basis());
  std::vector<double> sv = singular_values(r);
  std::sort(sv.begin(), sv.end());
  return sv;
}

MeetDims subspace_meet_dims(const Subspace& s1, const Subspace& s2, const Tolerances& tol) {
  require_same_ambient(s1, s2);
  const std::vector<double> sines = principal_sines(s1, s2);
  const auto meet =
      static_cast<std::size_t>(std::count_if(sines.begin(), sines.end(), [&](double s) { return s <= tol.rank_tol; }));
  const std::size_t rank = numerical_rank(hcat(s1.basis(), s2.basis()), tol);
  return {meet, s1.ambient_dim() - rank};
}

}  // namespace fredlab::linalg
