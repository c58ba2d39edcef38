#include "fredlab/topology/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "fredlab/error.hpp"
#include "fredlab/linalg/eigen.hpp"

namespace fredlab::topology {

using linalg::ComplexMatrix;
using linalg::Matrix;

namespace {

void require_same_dim(const SelfAdjointOperator& a0, const SelfAdjointOperator& a1) {
  if (a0.dim() != a1.dim()) {
    fail(ErrorCode::DimensionMismatch,
         "operators of dimension " + std::to_string(a0.dim()) + " and " + std::to_string(a1.dim()));
  }
}

ComplexMatrix apply(const SelfAdjointOperator& a, const ScalarFunction& f) {
  if (f.real_valued()) {
    return ComplexMatrix(
        linalg::apply_scalar_function(a.spectral(), [&](double x) { return f(x).real(); }));
  }
  return linalg::apply_scalar_function(a.spectral(), [&](double x) { return f(x); });
}

double norm_of_difference(const ComplexMatrix& x, const ComplexMatrix& y, const linalg::Tolerances& tol) {
  const ComplexMatrix d = x - y;
  if (d.im.max_abs() == 0.0) return linalg::operator_norm(d.re, tol);
  return linalg::operator_norm(d, tol);
}

}  // namespace

Matrix riesz_map(const SelfAdjointOperator& a) {
  return linalg::apply_scalar_function(a.spectral(), riesz_profile);
}

SelfAdjointOperator inverse_riesz_map(const Matrix& x, const linalg::Tolerances& tol) {
  const auto d = linalg::sym_eig(x, tol);
  return SelfAdjointOperator(linalg::apply_scalar_function(d, [](double v) {
    return std::abs(v) < 1.0 ? v / std::sqrt((1.0 - v) * (1.0 + v)) : std::numeric_limits<double>::infinity();
  }), std::nullopt, tol);
}

double riesz_metric(const SelfAdjointOperator& a0, const SelfAdjointOperator& a1) {
  require_same_dim(a0, a1);
  return linalg::operator_norm(riesz_map(a0) - riesz_map(a1), a0.tolerances());
}

Resolvents resolvents_at_i(const SelfAdjointOperator& a) {
  using namespace std::complex_literals;
  const auto& d = a.spectral();
  return {linalg::apply_scalar_function(d, [](double x) { return 1.0 / (1i + x); }),
          linalg::apply_scalar_function(d, [](double x) { return 1.0 / (1i - x); })};
}

GapBranches gap_branches(const SelfAdjointOperator& a0, const SelfAdjointOperator& a1) {
  require_same_dim(a0, a1);
  const Resolvents r0 = resolvents_at_i(a0);
  const Resolvents r1 = resolvents_at_i(a1);
  const auto& tol = a0.tolerances();
  return {norm_of_difference(r0.plus, r1.plus, tol), norm_of_difference(r0.minus, r1.minus, tol)};
}

double gap_metric(const SelfAdjointOperator& a0, const SelfAdjointOperator& a1) {
  return gap_branches(a0, a1).total();
}

double subspace_gap(const linalg::Subspace& s1, const linalg::Subspace& s2) {
  if (s1.ambient_dim() != s2.ambient_dim()) {
    fail(ErrorCode::AmbientMismatch, "subspaces live in different ambient spaces");
  }
  if (s1.ambient_dim() == 0) return 0.0;
  return linalg::operator_norm(s1.projection() - s2.projection());
}

Matrix graph_projection_spectral(const SelfAdjointOperator& a) {
  const auto& d = a.spectral();
  const Matrix p11 = linalg::apply_scalar_function(d, [](double x) { return 1.0 / (1.0 + x * x); });
  const Matrix p12 = linalg::apply_scalar_function(d, [](double x) { return x / (1.0 + x * x); });
  const Matrix p22 = linalg::apply_scalar_function(d, [](double x) { return x * x / (1.0 + x * x); });
  return linalg::block2x2(p11, p12, p12, p22);
}

double function_distance(const SelfAdjointOperator& a0, const SelfAdjointOperator& a1, const ScalarFunction& f) {
  require_same_dim(a0, a1);
  return norm_of_difference(apply(a0, f), apply(a1, f), a0.tolerances());
}

MetricReport generator_distance_profile(const SelfAdjointOperator& a0, const SelfAdjointOperator& a1,
                                        std::span<const ScalarFunction> fns) {
  require_same_dim(a0, a1);
  MetricReport report;
  report.gamma = gap_metric(a0, a1);
  report.rho = riesz_metric(a0, a1);
  report.delta_graphs =
      linalg::operator_norm(graph_projection_spectral(a0) - graph_projection_spectral(a1), a0.tolerances());
  for (const ScalarFunction& f : fns) report.generator_distances[f.label()] = function_distance(a0, a1, f);
  return report;
}

MetricReport diagonal_profile(std::span<const double> d0, std::span<const double> d1,
                              std::span<const ScalarFunction> fns) {
  using namespace std::complex_literals;
  if (d0.size() != d1.size()) fail(ErrorCode::DimensionMismatch, "diagonals differ in length");
  MetricReport report;
  double plus = 0.0;
  double minus = 0.0;
  for (std::size_t j = 0; j < d0.size(); ++j) {
    const double a = d0[j];
    const double b = d1[j];
    plus = std::max(plus, std::abs(1.0 / (1i + a) - 1.0 / (1i + b)));
    minus = std::max(minus, std::abs(1.0 / (1i - a) - 1.0 / (1i - b)));
    report.rho = std::max(report.rho, std::abs(riesz_profile(a) - riesz_profile(b)));
    report.delta_graphs = std::max(report.delta_graphs, std::abs(std::sin(std::atan(a) - std::atan(b))));
  }
  report.gamma = plus + minus;
  for (const ScalarFunction& f : fns) {
    double dist = 0.0;
    for (std::size_t j = 0; j < d0.size(); ++j) dist = std::max(dist, std::abs(f(d0[j]) - f(d1[j])));
    report.generator_distances[f.label()] = dist;
  }
  return report;
}

double relative_bound_surrogate(const SelfAdjointOperator& a, const Matrix& s) {
  if (s.rows() != a.dim() || s.cols() != a.dim()) {
    fail(ErrorCode::DimensionMismatch, "perturbation and operator differ in dimension");
  }
  if (s.max_abs() == 0.0) return 0.0;
  const Matrix weight = linalg::apply_scalar_function(a.spectral(), [](double x) { return 1.0 / (std::abs(x) + 1.0); });
  return linalg::operator_norm(s * weight, a.tolerances());
}

double ResolventIdentityResiduals::max() const noexcept {
  return std::max({plus, minus, inverse_square, defining_product});
}

ResolventIdentityResiduals resolvent_identity_residuals(const SelfAdjointOperator& a) {
  const std::size_t n = a.dim();
  const Matrix& m = a.matrix();
  const Matrix id = Matrix::identity(n);
  const Matrix psi = riesz_map(a);
  const Matrix inv_sq = linalg::spd_inverse(id + m * m);
  const Matrix inv_sqrt =
      linalg::apply_scalar_function(a.spectral(), [](double x) { return 1.0 / std::sqrt(1.0 + x * x); });
  const Matrix real_part = inv_sqrt * psi;

  const Resolvents r = resolvents_at_i(a);
  // (A + i)⁻¹ = (i + A)⁻¹ and (A - i)⁻¹ = -(i - A)⁻¹.
  const ComplexMatrix p_plus = r.plus;
  ComplexMatrix p_minus = r.minus;
  p_minus.re *= -1.0;
  p_minus.im *= -1.0;

  Matrix neg_inv_sq = inv_sq;
  neg_inv_sq *= -1.0;
  ResolventIdentityResiduals out;
  out.plus = (p_plus - ComplexMatrix(real_part, neg_inv_sq)).real_embedding().frobenius() / std::sqrt(2.0);
  out.minus = (p_minus - ComplexMatrix(real_part, inv_sq)).real_embedding().frobenius() / std::sqrt(2.0);
  out.inverse_square = (inv_sq - (id - psi * psi)).frobenius();

  const ComplexMatrix shift_plus(m, id);
  Matrix neg_id = id;
  neg_id *= -1.0;
  const ComplexMatrix shift_minus(m, neg_id);
  const ComplexMatrix one(id);
  out.defining_product = std::max((shift_plus * p_plus - one).real_embedding().frobenius(),
                                  (shift_minus * p_minus - one).real_embedding().frobenius()) /
                         std::sqrt(2.0);
  return out;
}

std::string_view to_string(Component c) noexcept {
  switch (c) {
    case Component::F_plus:
      return "F_plus";
    case Component::F_minus:
      return "F_minus";
    case Component::F_0:
      return "F_0";
    case Component::unknown:
      return "unknown";
  }
  return "unknown";
}

Component classify_component(const SelfAdjointOperator& a) {
  if (!a.tail()) return Component::unknown;
  switch (a.tail()->ess_spectrum_signs) {
    case EssentialSpectrum::plus_only:
      return Component::F_plus;
    case EssentialSpectrum::minus_only:
      return Component::F_minus;
    case EssentialSpectrum::both:
      return Component::F_0;
    case EssentialSpectrum::none:
      break;
  }
  return Component::unknown;
}

}  // namespace fredlab::topology
