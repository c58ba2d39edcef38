#include "fredlab/linalg/banded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fredlab/error.hpp"

namespace fredlab::linalg {

BandedSymmetric::BandedSymmetric(std::size_t n, std::size_t bandwidth)
    : n_(n), bw_(bandwidth), data_(n * (bandwidth + 1), 0.0) {}

BandedSymmetric BandedSymmetric::from_dense(const Matrix& a, std::size_t bandwidth) {
  if (!a.is_square()) fail(ErrorCode::NonSquare, "band storage needs a square matrix");
  if (half_bandwidth(a) > bandwidth) fail(ErrorCode::InvalidSpec, "matrix has entries outside the band");
  BandedSymmetric b(a.rows(), bandwidth);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t d = 0; d <= std::min(i, bandwidth); ++d) b.band(i, d) = a(i, i - d);
  return b;
}

double BandedSymmetric::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

std::size_t half_bandwidth(const Matrix& a) {
  std::size_t b = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0.0) b = std::max(b, i > j ? i - j : j - i);
  return b;
}

std::size_t pencil_count_below(const BandedSymmetric& k, const BandedSymmetric& m, double sigma) {
  if (k.dim() != m.dim()) fail(ErrorCode::DimensionMismatch, "pencil sizes differ");
  const std::size_t n = k.dim();
  const std::size_t bw = std::max(k.bandwidth(), m.bandwidth());
  const std::size_t w = bw + 1;
  const double scale = std::max({1.0, k.max_abs(), std::abs(sigma) * m.max_abs()});
  const double pivmin = std::numeric_limits<double>::epsilon() * std::numeric_limits<double>::epsilon() * scale;

  // Row i of a holds (K - sigma M)(i, i - d); it is overwritten by the unit
  // lower factor, l(i, d) = L(i, i - d). diag holds D.
  std::vector<double> a(n * w, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d <= std::min(i, bw); ++d) {
      const double kv = d <= k.bandwidth() ? k.band(i, d) : 0.0;
      const double mv = d <= m.bandwidth() ? m.band(i, d) : 0.0;
      a[i * w + d] = kv - sigma * mv;
    }
  }
  std::vector<double> diag(n, 0.0);
  std::size_t negatives = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double* li = a.data() + i * w;
    const std::size_t lo = i >= bw ? i - bw : 0;
    for (std::size_t j = lo; j < i; ++j) {
      const double* lj = a.data() + j * w;
      double v = li[i - j];
      const std::size_t plo = std::max(lo, j >= bw ? j - bw : 0);
      for (std::size_t p = plo; p < j; ++p) v -= li[i - p] * diag[p] * lj[j - p];
      li[i - j] = v / diag[j];
    }
    double d = li[0];
    for (std::size_t p = lo; p < i; ++p) d -= li[i - p] * li[i - p] * diag[p];
    if (std::abs(d) < pivmin) d = -pivmin;
    diag[i] = d;
    if (d < 0.0) ++negatives;
  }
  return negatives;
}

double pencil_eigenvalue(const BandedSymmetric& k, const BandedSymmetric& m, std::size_t index, double abs_tol,
                         double rel_tol) {
  if (index >= k.dim()) fail(ErrorCode::DimensionMismatch, "eigenvalue index out of range");
  double lo = -1.0;
  while (pencil_count_below(k, m, lo) > index) lo *= 2.0;
  double hi = 1.0;
  while (pencil_count_below(k, m, hi) <= index) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= abs_tol + rel_tol * std::abs(mid)) break;
    if (pencil_count_below(k, m, mid) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace fredlab::linalg
