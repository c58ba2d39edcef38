#pragma once

#include <cstddef>
#include <vector>

#include "fredlab/linalg/matrix.hpp"

namespace fredlab::linalg {

/// Symmetric band matrix in lower band storage: band(i, d) = A(i, i - d)
/// for d in [0, bandwidth].
class BandedSymmetric {
 public:
  BandedSymmetric(std::size_t n, std::size_t bandwidth);

  /// Copies the lower band of `a`; entries outside the band must be zero.
  static BandedSymmetric from_dense(const Matrix& a, std::size_t bandwidth);

  std::size_t dim() const noexcept { return n_; }
  std::size_t bandwidth() const noexcept { return bw_; }

  double& band(std::size_t i, std::size_t d) noexcept { return data_[i * (bw_ + 1) + d]; }
  double band(std::size_t i, std::size_t d) const noexcept { return data_[i * (bw_ + 1) + d]; }

  double max_abs() const noexcept;

 private:
  std::size_t n_;
  std::size_t bw_;
  std::vector<double> data_;
};

/// Smallest b such that a(i, j) = 0 whenever |i - j| > b.
std::size_t half_bandwidth(const Matrix& a);

/// Number of eigenvalues of the pencil (K, M) strictly below sigma, M
/// positive definite. Uses the inertia of K - sigma M from an unpivoted band
/// LDLᵀ (Sylvester's law); exactly singular pivots are nudged to -pivmin.
std::size_t pencil_count_below(const BandedSymmetric& k, const BandedSymmetric& m, double sigma);

/// The eigenvalue with ascending index `index` of the pencil (K, M), by
/// bisection on pencil_count_below until the bracket is below
/// abs_tol + rel_tol·|λ|.
double pencil_eigenvalue(const BandedSymmetric& k, const BandedSymmetric& m, std::size_t index,
                         double abs_tol = 1e-13, double rel_tol = 1e-14);

}  // namespace fredlab::linalg
