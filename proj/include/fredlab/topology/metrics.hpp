#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "fredlab/linalg/matrix.hpp"
#include "fredlab/linalg/subspace.hpp"
#include "fredlab/topology/operator.hpp"

namespace fredlab::topology {

/// Values of the metrics for one pair of operators. Generator distances are
/// keyed by ScalarFunction::label().
struct MetricReport {
  double gamma = 0.0;
  double rho = 0.0;
  double delta_graphs = 0.0;
  std::map<std::string, double> generator_distances;
};

/// Ψ(A) = A (1 + A²)^{-1/2}, computed through the spectral decomposition.
linalg::Matrix riesz_map(const SelfAdjointOperator& a);

/// Ψ⁻¹(X) = X (1 - X²)^{-1/2} for a symmetric contraction with ||X|| < 1.
/// Throws FunctionUndefinedAtEigenvalue when an eigenvalue of X reaches ±1.
SelfAdjointOperator inverse_riesz_map(const linalg::Matrix& x, const linalg::Tolerances& tol = {});

/// ρ(A0, A1) = ||Ψ(A0) - Ψ(A1)||.
double riesz_metric(const SelfAdjointOperator& a0, const SelfAdjointOperator& a1);

struct Resolvents {
  linalg::ComplexMatrix plus;   // (i + A)⁻¹
  linalg::ComplexMatrix minus;  // (i - A)⁻¹
};

/// Both resolvents at ±i on the complexification, from one eigendecomposition.
Resolvents resolvents_at_i(const SelfAdjointOperator& a);

struct GapBranches {
  double plus = 0.0;   // ||(i + A0)⁻¹ - (i + A1)⁻¹||
  double minus = 0.0;  // ||(i - A0)⁻¹ - (i - A1)⁻¹||
  double total() const noexcept { return plus + minus; }
};

GapBranches gap_branches(const SelfAdjointOperator& a0, const SelfAdjointOperator& a1);

/// γ(A0, A1): sum of the two resolvent branch distances.
double gap_metric(const SelfAdjointOperator& a0, const SelfAdjointOperator& a1);

/// δ(S1, S2) = ||P_S1 - P_S2||. Throws AmbientMismatch.
double subspace_gap(const linalg::Subspace& s1, const linalg::Subspace& s2);

/// Orthogonal projection onto the graph {(x, Ax)} ⊂ R^N ⊕ R^N assembled from
/// functions of A: [[(1+A²)⁻¹, A(1+A²)⁻¹], [A(1+A²)⁻¹, A²(1+A²)⁻¹]].
linalg::Matrix graph_projection_spectral(const SelfAdjointOperator& a);

/// ||f(A0) - f(A1)||.
double function_distance(const SelfAdjointOperator& a0, const SelfAdjointOperator& a1, const ScalarFunction& f);

/// γ, ρ, δ(graphs) and ||f(A0) - f(A1)|| for each requested f.
MetricReport generator_distance_profile(const SelfAdjointOperator& a0, const SelfAdjointOperator& a1,
                                        std::span<const ScalarFunction> fns);

/// Same report for two diagonal operators given by their diagonals. Every
/// function of a diagonal operator is diagonal and the graphs split into
/// coordinate planes, so nothing is assembled: this is the route for
/// diagonal families too large for dense matrices.
MetricReport diagonal_profile(std::span<const double> d0, std::span<const double> d1,
                              std::span<const ScalarFunction> fns);

/// Certified constant c with ||S u|| <= c (||A u|| + ||u||) for all u:
/// c = ||S (|A| + 1)⁻¹||.
double relative_bound_surrogate(const SelfAdjointOperator& a, const linalg::Matrix& s);

/// Residuals of the resolvent identities
///   (A ± i)⁻¹ = (1 + A²)^{-1/2} Ψ(A) ∓ i (1 + A²)⁻¹,   (1 + A²)⁻¹ = 1 - Ψ(A)²,
/// each side assembled along an independent route (Cholesky inverse of
/// 1 + A·A, matrix products of spectral functions, and the defining product
/// (A ± i) R = 1).
struct ResolventIdentityResiduals {
  double plus = 0.0;
  double minus = 0.0;
  double inverse_square = 0.0;
  double defining_product = 0.0;
  double max() const noexcept;
};

ResolventIdentityResiduals resolvent_identity_residuals(const SelfAdjointOperator& a);

enum class Component { F_plus, F_minus, F_0, unknown };

std::string_view to_string(Component c) noexcept;

/// Component of the Fredholm selfadjoint operators the untruncated operator
/// belongs to, read from its tail metadata only.
Component classify_component(const SelfAdjointOperator& a);

}  // namespace fredlab::topology
