#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fredlab/linalg/matrix.hpp"
#include "fredlab/topology/operator.hpp"

namespace fredlab::gallery {

/// A_n = diag(1, 2, ..., N) with entry n replaced by -n; n = 0 is the
/// reference A_0.
struct FugledeSpec {
  std::size_t n = 1;
  std::size_t dim = 4;
};

/// Throws InvalidSpec when dim < 2n or dim == 0. Tail metadata plus_only.
topology::SelfAdjointOperator fuglede_operator(const FugledeSpec& spec);

/// Diagonal of fuglede_operator(spec), for large truncations that should
/// never be assembled densely.
std::vector<double> fuglede_diagonal(const FugledeSpec& spec);

struct FugledeExpected {
  double resolvent_branch;  // 2n/(1+n²)
  double rho;               // 2n/√(1+n²)
  double alpha_dist;        // 1
};

FugledeExpected fuglede_expected(std::size_t n);

/// S_n with relative_bound_surrogate(base, S_n) = c_n. All S_n share one
/// seeded random symmetric direction, so the family is a ray through base.
struct PerturbationSchedule {
  topology::SelfAdjointOperator base;
  std::vector<linalg::Matrix> deltas;
  std::vector<double> bound_targets;
};

/// Throws InvalidSpec unless the targets are nonnegative and non-increasing.
PerturbationSchedule perturbation_family(const topology::SelfAdjointOperator& base, std::uint64_t seed,
                                         std::span<const double> schedule);

struct SpectrumRange {
  double lo = -1.0;
  double hi = 1.0;
};

/// Q Λ Qᵀ with Λ uniform in the range and Q a seeded random orthogonal matrix.
topology::SelfAdjointOperator random_selfadjoint(std::size_t dim, std::uint64_t seed, SpectrumRange range = {});

/// Q diag(eigenvalues) Qᵀ with the same kind of random Q.
topology::SelfAdjointOperator random_with_spectrum(std::span<const double> eigenvalues, std::uint64_t seed);

/// Orthogonal matrix from Gram-Schmidt on a Gaussian matrix.
linalg::Matrix random_orthogonal(std::size_t dim, std::uint64_t seed);

/// Gaussian entries, independent, unit variance.
linalg::Matrix random_gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed);

/// Symmetric part of a Gaussian matrix.
linalg::Matrix random_symmetric(std::size_t dim, std::uint64_t seed);

}  // namespace fredlab::gallery
