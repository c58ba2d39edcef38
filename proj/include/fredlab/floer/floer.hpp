#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fredlab/linalg/banded.hpp"
#include "fredlab/linalg/matrix.hpp"
#include "fredlab/linalg/subspace.hpp"
#include "fredlab/topology/metrics.hpp"
#include "fredlab/topology/operator.hpp"

namespace fredlab::floer {

using Mat2 = std::array<std::array<double, 2>, 2>;

/// a(t) on [0, 1], given by samples at uniform nodes and interpolated
/// linearly. A single sample is a constant profile.
class AProfile {
 public:
  AProfile() : samples_{0.0} {}
  explicit AProfile(std::vector<std::complex<double>> samples);

  static AProfile zero() { return AProfile(); }
  static AProfile constant(double p, double q) { return AProfile({std::complex<double>(p, q)}); }

  /// Two whitespace-separated columns (Re a, Im a), one line per node.
  /// Throws ConfigError on unreadable or malformed input.
  static AProfile from_file(const std::string& path);

  std::complex<double> operator()(double t) const;
  const std::vector<std::complex<double>>& samples() const noexcept { return samples_; }
  bool is_zero() const noexcept;
  double max_abs() const noexcept;

 private:
  std::vector<std::complex<double>> samples_;
};

/// How a(t) acts on u(t) ∈ C ≅ R². antilinear: u ↦ a ū, the matrix
/// S = [[p, q], [q, -p]] for a = p + iq. linear_imaginary: u ↦ a u, allowed
/// only for Re a ≡ 0 because otherwise the operator is not symmetric.
enum class Coupling { antilinear, linear_imaginary };

struct FloerConfig {
  AProfile a;
  double s = 0.0;
  std::size_t grid_m = 400;
  Coupling coupling = Coupling::antilinear;

  /// Throws InvalidConfig.
  void validate() const;
};

/// Real 2×2 matrix of u ↦ a u (linear) or u ↦ a ū (antilinear).
Mat2 coupling_matrix(std::complex<double> a, Coupling coupling);

/// Zeroth-order coefficient C(t) = -J M_a(t) of A u = J u' + C u.
Mat2 zeroth_order(const FloerConfig& cfg, double t);

/// Layout of the unknowns of the discretization.
struct DofMap {
  std::size_t elements;  // M
  std::size_t size;      // 2M + 1
  std::string layout;
};

/// Discretization of A u = J u' + C(t) u with u(0) ∈ span{(1, 0)} and
/// u(1) ∈ span{(cos s, -sin s)}.
///
/// Unknowns live in the rotating frame u(t) = R(-s t) w(t), where both
/// boundary lines become span{(1, 0)} and the operator becomes
/// J w' + (s + R(st) C R(-st)) w. The first component of w is continuous
/// piecewise linear (node i -> index 2i), the second piecewise constant
/// (element e -> index 2e + 1). The boundary conditions w_2(0) = w_2(1) = 0
/// are natural for the form ∫ (w1' v2 + v1' w2) + ∫ <(s + Ĉ) w, v>.
/// The pencil (K, M) is symmetric with half-bandwidth 2.
struct DiscretizedOperator {
  FloerConfig config;
  linalg::BandedSymmetric stiffness;
  linalg::BandedSymmetric mass;
  DofMap dof_map;

  std::size_t dim() const noexcept { return dof_map.size; }
  linalg::Matrix dense_stiffness() const;
  linalg::Matrix dense_mass() const;
};

DiscretizedOperator assemble_floer_operator(const FloerConfig& cfg);

/// The k eigenvalues of K x = λ M x nearest 0, ascending, by inertia counts
/// of the band LDLᵀ and bisection. Throws MassNotPositiveDefinite.
std::vector<double> floer_spectrum(const DiscretizedOperator& op, std::size_t k_window);

/// Same window from the dense Cholesky-reduced problem and Jacobi. O(n³);
/// meant for small grids and as a cross-check.
std::vector<double> floer_spectrum_dense(const DiscretizedOperator& op, std::size_t k_window);

struct Interval {
  double lo;
  double hi;
};

/// Roots λ in the interval of det[u(1), (cos s, -sin s)] where
/// u' = J C u - λ J u, u(0) = (1, 0), integrated by classical RK4. Sign
/// scan then bisection to 1e-10. Grid-free; an empty result is legal.
std::vector<double> shooting_eigenvalues(const FloerConfig& cfg, Interval search);

/// Signed count of zero crossings along a sequence of eigenvalue windows.
/// Consecutive windows are matched by nearest value; values within zero_tol
/// of 0 count as zero. A value reaching zero counts as a crossing at that
/// sample; a value that starts at zero, or enters the window at zero,
/// takes the sign it moves to without counting. Throws SamplingTooCoarse
/// when an eigenvalue inside the window cannot be matched within half the
/// minimal gap.
long spectral_flow_from_windows(std::span<const std::vector<double>> windows, double zero_tol);

/// Spectral flow of a family of discretized operators ordered along s.
/// zero_tol is a quarter of the smallest step in s.
long spectral_flow(std::span<const DiscretizedOperator> family, std::size_t k_window);

/// Builds the family for each s sample from cfg_base and returns its flow.
long spectral_flow_over(const FloerConfig& cfg_base, std::span<const double> s_samples, std::size_t k_window);

/// Projector onto the complement of the allowed boundary lines at (t=0, t=1);
/// the boundary condition reads P (u(0), u(1)) = 0.
linalg::Matrix boundary_projector(double s);

/// Interval analog of the boundary operator: block-diag of the symmetric
/// parts of J C(0) and J C(1).
linalg::Matrix boundary_operator(const FloerConfig& cfg);

/// ν(P, Q) = ||P - Q|| + ||[P - Q, D0]||.
double nu_metric(const linalg::Matrix& p, const linalg::Matrix& q, const linalg::Matrix& d0);

/// Û = QP + (1 - Q)(1 - P). Throws GaugeSingular if ||Q - P|| >= 1.
linalg::Matrix gauge_hat_U(const linalg::Matrix& p, const linalg::Matrix& q);

/// The same operator written as R(2P - 1) + 1 with R = Q - P.
linalg::Matrix gauge_hat_U_reflection_form(const linalg::Matrix& p, const linalg::Matrix& q);

/// η sampled at the grid nodes: 0 on [0, 1/4], 1 on [3/4, 1], a quintic
/// smoothstep between.
struct CutoffProfile {
  std::vector<double> eta;

  static CutoffProfile smooth_step(std::size_t grid_m);
  static double value(double t) noexcept;
};

/// U acting on nodal values (u_0, ..., u_M), u_i ∈ R²:
/// U u_i = (1 - η_i) u_i + η_i G u_i with G the t = 1 block of Û.
linalg::Matrix cutoff_gauge_U(const linalg::Matrix& hat_u, const CutoffProfile& eta, std::size_t grid_m);

/// Nodal P1 functions with u_0 ∈ span{(1, 0)} and u_M ∈ span{(cos s, -sin s)};
/// dimension 2M.
linalg::Subspace constrained_subspace(double s, std::size_t grid_m);

/// span(U B) for the basis B of `domain`.
linalg::Subspace transport(const linalg::Matrix& u, const linalg::Subspace& domain);

/// Discrete H¹ Gram matrix (P1 mass plus stiffness) on nodal values in R².
linalg::Matrix h1_gram(std::size_t grid_m);

/// ||X||_{H¹ → H¹} = sqrt(λ_max(Xᵀ H X, H)) from the dense generalized problem.
double h1_operator_norm(const linalg::Matrix& x, std::size_t grid_m);

/// ||U - I||_{H¹ → H¹} for the cutoff gauge, using U - I = diag(η) ⊗ (G - I):
/// the norm factors as ||G - I|| times the H¹ multiplier norm of η.
double cutoff_gauge_h1_norm(const linalg::Matrix& hat_u, const CutoffProfile& eta, std::size_t grid_m);

/// M^{-1/2} K M^{-1/2} as an operator on R^{2M+1}; every s shares this space.
topology::SelfAdjointOperator normalized_operator(const DiscretizedOperator& op);

struct NeighborReport {
  double s0;
  double s1;
  topology::MetricReport metrics;  // γ, ρ, δ of the normalized operators
  double nu;                       // ν(P(s0), P(s1))
  double gauge_defect;             // sup_t ||R(-s0 t) - R(-s1 t)|| = 2|sin((s1 - s0)/2)|
};

/// Metrics between consecutive samples, in sample order.
std::vector<NeighborReport> rho_continuity_profile(const FloerConfig& cfg_base, std::span<const double> s_samples);

}  // namespace fredlab::floer
