#include "fredlab/gallery/gallery.hpp"

#include <cmath>
#include <random>

#include "fredlab/error.hpp"
#include "fredlab/linalg/subspace.hpp"
#include "fredlab/topology/metrics.hpp"

namespace fredlab::gallery {

using linalg::Matrix;
using topology::SelfAdjointOperator;

std::vector<double> fuglede_diagonal(const FugledeSpec& spec) {
  if (spec.dim == 0 || spec.dim < 2 * spec.n) {
    fail(ErrorCode::InvalidSpec,
         "truncation " + std::to_string(spec.dim) + " too small for flipped index " + std::to_string(spec.n));
  }
  std::vector<double> d(spec.dim);
  for (std::size_t j = 1; j <= spec.dim; ++j) d[j - 1] = static_cast<double>(j);
  if (spec.n > 0) d[spec.n - 1] = -static_cast<double>(spec.n);
  return d;
}

SelfAdjointOperator fuglede_operator(const FugledeSpec& spec) {
  const std::vector<double> d = fuglede_diagonal(spec);
  return SelfAdjointOperator(Matrix::diagonal(d), topology::TailDescriptor{topology::EssentialSpectrum::plus_only});
}

FugledeExpected fuglede_expected(std::size_t n) {
  const double x = static_cast<double>(n);
  return {2.0 * x / (1.0 + x * x), 2.0 * x / std::sqrt(1.0 + x * x), 1.0};
}

Matrix random_gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = normal(gen);
  return m;
}

Matrix random_symmetric(std::size_t dim, std::uint64_t seed) {
  return linalg::symmetric_part(random_gaussian(dim, dim, seed));
}

Matrix random_orthogonal(std::size_t dim, std::uint64_t seed) {
  // A Gaussian matrix is full rank with probability one; reseed on the
  // (practically unreachable) rank-deficient draw.
  for (std::uint64_t attempt = 0;; ++attempt) {
    const linalg::Subspace s = linalg::Subspace::span_of(random_gaussian(dim, dim, seed + attempt * 0x9e3779b97f4a7c15ULL));
    if (s.dim() == dim) return s.basis();
  }
}

SelfAdjointOperator random_with_spectrum(std::span<const double> eigenvalues, std::uint64_t seed) {
  const std::size_t n = eigenvalues.size();
  if (n == 0) fail(ErrorCode::InvalidSpec, "random operator needs dim >= 1");
  const Matrix q = random_orthogonal(n, seed);
  Matrix ql = q;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ql(i, j) *= eigenvalues[j];
  return SelfAdjointOperator(linalg::symmetric_part(ql * q.transpose()));
}

SelfAdjointOperator random_selfadjoint(std::size_t dim, std::uint64_t seed, SpectrumRange range) {
  if (dim == 0) fail(ErrorCode::InvalidSpec, "random operator needs dim >= 1");
  if (!(range.lo <= range.hi)) fail(ErrorCode::InvalidSpec, "empty spectrum range");
  std::mt19937_64 gen(seed ^ 0x5851f42d4c957f2dULL);
  std::uniform_real_distribution<double> uni(range.lo, range.hi);
  std::vector<double> lambda(dim);
  for (double& l : lambda) l = range.lo == range.hi ? range.lo : uni(gen);
  return random_with_spectrum(lambda, seed);
}

PerturbationSchedule perturbation_family(const SelfAdjointOperator& base, std::uint64_t seed,
                                         std::span<const double> schedule) {
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (!(schedule[k] >= 0.0) || !std::isfinite(schedule[k])) {
      fail(ErrorCode::InvalidSpec, "bound targets must be finite and nonnegative");
    }
    if (k > 0 && schedule[k] > schedule[k - 1]) fail(ErrorCode::InvalidSpec, "bound targets must not increase");
  }
  const std::size_t n = base.dim();
  Matrix direction = random_symmetric(n, seed);
  double surrogate = n > 0 ? topology::relative_bound_surrogate(base, direction) : 0.0;
  if (n > 0 && surrogate == 0.0) {
    direction = Matrix::identity(n);
    surrogate = topology::relative_bound_surrogate(base, direction);
  }
  PerturbationSchedule out{base, {}, {schedule.begin(), schedule.end()}};
  out.deltas.reserve(schedule.size());
  for (double c : schedule) {
    if (c == 0.0 || n == 0) {
      out.deltas.emplace_back(n, n);
    } else {
      out.deltas.push_back((c / surrogate) * direction);
    }
  }
  return out;
}

}  // namespace fredlab::gallery
