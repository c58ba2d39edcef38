#include <algorithm>
#include <cmath>
#include <limits>

#include "fredlab/error.hpp"
#include "fredlab/floer/floer.hpp"
#include "fredlab/linalg/eigen.hpp"

namespace fredlab::floer {

using linalg::Matrix;
using linalg::Subspace;

Matrix boundary_projector(double s) {
  Matrix p(4, 4);
  p(1, 1) = 1.0;
  const double n0 = std::sin(s);
  const double n1 = std::cos(s);
  p(2, 2) = n0 * n0;
  p(2, 3) = n0 * n1;
  p(3, 2) = n0 * n1;
  p(3, 3) = n1 * n1;
  return p;
}

Matrix boundary_operator(const FloerConfig& cfg) {
  Matrix d(4, 4);
  for (std::size_t end = 0; end < 2; ++end) {
    const Mat2 c = zeroth_order(cfg, static_cast<double>(end));
    // J C = [[-c10, -c11], [c00, c01]].
    const Mat2 jc{{{-c[1][0], -c[1][1]}, {c[0][0], c[0][1]}}};
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) d(2 * end + i, 2 * end + j) = 0.5 * (jc[i][j] + jc[j][i]);
  }
  return d;
}

double nu_metric(const Matrix& p, const Matrix& q, const Matrix& d0) {
  if (p.rows() != q.rows() || p.cols() != q.cols() || d0.rows() != p.rows() || d0.cols() != p.cols()) {
    fail(ErrorCode::DimensionMismatch, "projectors and boundary operator differ in shape");
  }
  const Matrix diff = p - q;
  return linalg::operator_norm(diff) + linalg::operator_norm(diff * d0 - d0 * diff);
}

namespace {

void check_gauge_input(const Matrix& p, const Matrix& q) {
  if (!p.is_square() || p.rows() != q.rows() || !q.is_square()) {
    fail(ErrorCode::DimensionMismatch, "projectors differ in shape");
  }
  if (linalg::operator_norm(q - p) >= 1.0) fail(ErrorCode::GaugeSingular, "||Q - P|| >= 1");
}

}  // namespace

Matrix gauge_hat_U(const Matrix& p, const Matrix& q) {
  check_gauge_input(p, q);
  const Matrix id = Matrix::identity(p.rows());
  return q * p + (id - q) * (id - p);
}

Matrix gauge_hat_U_reflection_form(const Matrix& p, const Matrix& q) {
  check_gauge_input(p, q);
  const Matrix id = Matrix::identity(p.rows());
  return (q - p) * (2.0 * p - id) + id;
}

double CutoffProfile::value(double t) noexcept {
  if (t <= 0.25) return 0.0;
  if (t >= 0.75) return 1.0;
  const double x = (t - 0.25) / 0.5;
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

CutoffProfile CutoffProfile::smooth_step(std::size_t grid_m) {
  if (grid_m == 0) fail(ErrorCode::InvalidConfig, "grid needs at least one element");
  CutoffProfile c;
  c.eta.resize(grid_m + 1);
  for (std::size_t i = 0; i <= grid_m; ++i) c.eta[i] = value(static_cast<double>(i) / static_cast<double>(grid_m));
  c.eta.front() = 0.0;
  c.eta.back() = 1.0;
  return c;
}

Matrix cutoff_gauge_U(const Matrix& hat_u, const CutoffProfile& eta, std::size_t grid_m) {
  if (hat_u.rows() != 4 || hat_u.cols() != 4) fail(ErrorCode::DimensionMismatch, "boundary gauge must be 4x4");
  if (eta.eta.size() != grid_m + 1) fail(ErrorCode::DimensionMismatch, "cutoff profile does not match the grid");
  const Matrix g = hat_u.block(2, 2, 2, 2);
  Matrix u(2 * (grid_m + 1), 2 * (grid_m + 1));
  for (std::size_t i = 0; i <= grid_m; ++i) {
    const double e = eta.eta[i];
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) u(2 * i + r, 2 * i + c) = (r == c ? 1.0 - e : 0.0) + e * g(r, c);
  }
  return u;
}

Subspace constrained_subspace(double s, std::size_t grid_m) {
  if (grid_m == 0) fail(ErrorCode::InvalidConfig, "grid needs at least one element");
  const std::size_t m = grid_m;
  Matrix b(2 * (m + 1), 2 * m);
  b(0, 0) = 1.0;
  std::size_t col = 1;
  for (std::size_t i = 1; i < m; ++i) {
    b(2 * i, col++) = 1.0;
    b(2 * i + 1, col++) = 1.0;
  }
  b(2 * m, col) = std::cos(s);
  b(2 * m + 1, col) = -std::sin(s);
  return Subspace::from_orthonormal(std::move(b));
}

Subspace transport(const Matrix& u, const Subspace& domain) {
  if (u.cols() != domain.ambient_dim() || !u.is_square()) fail(ErrorCode::DimensionMismatch, "gauge and domain differ in size");
  return Subspace::span_of(u * domain.basis());
}

namespace {

// Scalar P1 mass plus stiffness on M + 1 nodes.
Matrix scalar_h1_gram(std::size_t grid_m) {
  const double h = 1.0 / static_cast<double>(grid_m);
  Matrix g(grid_m + 1, grid_m + 1);
  for (std::size_t e = 0; e < grid_m; ++e) {
    g(e, e) += h / 3.0 + 1.0 / h;
    g(e + 1, e + 1) += h / 3.0 + 1.0 / h;
    g(e, e + 1) += h / 6.0 - 1.0 / h;
    g(e + 1, e) += h / 6.0 - 1.0 / h;
  }
  return g;
}

}  // namespace

Matrix h1_gram(std::size_t grid_m) {
  if (grid_m == 0) fail(ErrorCode::InvalidConfig, "grid needs at least one element");
  const Matrix s = scalar_h1_gram(grid_m);
  Matrix g(2 * (grid_m + 1), 2 * (grid_m + 1));
  for (std::size_t i = 0; i <= grid_m; ++i)
    for (std::size_t j = 0; j <= grid_m; ++j)
      for (std::size_t c = 0; c < 2; ++c) g(2 * i + c, 2 * j + c) = s(i, j);
  return g;
}

double h1_operator_norm(const Matrix& x, std::size_t grid_m) {
  const Matrix h = h1_gram(grid_m);
  if (x.rows() != h.rows() || !x.is_square()) fail(ErrorCode::DimensionMismatch, "operator does not act on the grid");
  const Matrix form = linalg::symmetric_part(multiply_tn(x, h * x));
  const auto d = linalg::generalized_sym_eig(form, h);
  return std::sqrt(std::max(0.0, d.eigenvalues.back()));
}

double cutoff_gauge_h1_norm(const Matrix& hat_u, const CutoffProfile& eta, std::size_t grid_m) {
  if (hat_u.rows() != 4 || hat_u.cols() != 4) fail(ErrorCode::DimensionMismatch, "boundary gauge must be 4x4");
  if (eta.eta.size() != grid_m + 1) fail(ErrorCode::DimensionMismatch, "cutoff profile does not match the grid");
  const Matrix g = hat_u.block(2, 2, 2, 2) - Matrix::identity(2);
  const double g_norm = linalg::operator_norm(g);
  if (g_norm == 0.0) return 0.0;
  const Matrix h = scalar_h1_gram(grid_m);
  Matrix dhd = h;
  for (std::size_t i = 0; i <= grid_m; ++i)
    for (std::size_t j = 0; j <= grid_m; ++j) dhd(i, j) *= eta.eta[i] * eta.eta[j];
  const auto d = linalg::generalized_sym_eig(dhd, h);
  return g_norm * std::sqrt(std::max(0.0, d.eigenvalues.back()));
}

topology::SelfAdjointOperator normalized_operator(const DiscretizedOperator& op) {
  const auto md = linalg::sym_eig(op.dense_mass());
  const Matrix inv_sqrt = linalg::apply_scalar_function(md, [](double x) {
    return x > 0.0 ? 1.0 / std::sqrt(x) : std::numeric_limits<double>::quiet_NaN();
  });
  const Matrix n = linalg::symmetric_part(inv_sqrt * op.dense_stiffness() * inv_sqrt);
  return topology::SelfAdjointOperator(n, topology::TailDescriptor{topology::EssentialSpectrum::both});
}

std::vector<NeighborReport> rho_continuity_profile(const FloerConfig& cfg_base, std::span<const double> s_samples) {
  std::vector<topology::SelfAdjointOperator> ops;
  ops.reserve(s_samples.size());
  for (double s : s_samples) {
    FloerConfig cfg = cfg_base;
    cfg.s = s;
    try {
      ops.push_back(normalized_operator(assemble_floer_operator(cfg)));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::FunctionUndefinedAtEigenvalue) fail(ErrorCode::MassNotPositiveDefinite, e.what());
      throw;
    }
  }
  const Matrix d0 = boundary_operator(cfg_base);
  std::vector<NeighborReport> out;
  for (std::size_t i = 0; i + 1 < ops.size(); ++i) {
    const double s0 = s_samples[i];
    const double s1 = s_samples[i + 1];
    NeighborReport r{s0, s1, topology::generator_distance_profile(ops[i], ops[i + 1], {}),
                     nu_metric(boundary_projector(s0), boundary_projector(s1), d0),
                     2.0 * std::abs(std::sin(0.5 * (s1 - s0)))};
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace fredlab::floer
