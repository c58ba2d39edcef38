#include "fredlab/linalg/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fredlab/simd/kernels.hpp"

namespace fredlab::linalg {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p)
    for (std::size_t q = p + 1; q < a.cols(); ++q) s += a(p, q) * a(p, q);
  return std::sqrt(2.0 * s);
}

// One Jacobi rotation annihilating a(p,q). Rows p and q are rotated with the
// vector kernel; the symmetric columns are then copied back from the rows.
void jacobi_rotate(Matrix& a, Matrix& vt, std::size_t p, std::size_t q, const simd::KernelTable& k) {
  const double apq = a(p, q);
  const double app = a(p, p);
  const double aqq = a(q, q);
  const double theta = (aqq - app) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const std::size_t n = a.cols();

  k.rot(a.row(p).data(), a.row(q).data(), n, c, s);
  a(p, p) = app - t * apq;
  a(q, q) = aqq + t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    a(r, p) = a(p, r);
    a(r, q) = a(q, r);
  }
  k.rot(vt.row(p).data(), vt.row(q).data(), vt.cols(), c, s);
}

}  // namespace

void Tolerances::validate() const {
  if (!(rank_tol > 0.0) || !(eig_tol > 0.0)) fail(ErrorCode::InvalidConfig, "tolerances must be positive");
  if (rank_tol < eig_tol) fail(ErrorCode::InvalidConfig, "rank_tol must be >= eig_tol");
}

Matrix SpectralDecomposition::reconstruct(std::span<const double> values) const {
  const std::size_t n = dim();
  if (values.size() != n) fail(ErrorCode::DimensionMismatch, "one value per eigenvalue required");
  const Matrix& q = eigenvectors;
  Matrix w = q;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w(i, j) *= values[j];
  Matrix out(n, n);
  const auto& k = simd::kernels();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = k.dot(w.row(i).data(), q.row(j).data(), n);
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

ComplexMatrix SpectralDecomposition::reconstruct(std::span<const std::complex<double>> values) const {
  std::vector<double> re(values.size());
  std::vector<double> im(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    re[i] = values[i].real();
    im[i] = values[i].imag();
  }
  return ComplexMatrix(reconstruct(std::span<const double>(re)), reconstruct(std::span<const double>(im)));
}

SpectralDecomposition sym_eig(const Matrix& input, const Tolerances& tol) {
  tol.validate();
  if (!input.is_square()) fail(ErrorCode::NonSquare, "sym_eig needs a square matrix");
  if (!input.all_finite()) fail(ErrorCode::NonFinite, "sym_eig input has non-finite entries");
  if (asymmetry(input) > 1e-12) fail(ErrorCode::NotSymmetric, "sym_eig input is not symmetric");

  const std::size_t n = input.rows();
  Matrix a = symmetric_part(input);
  Matrix vt = Matrix::identity(n);
  const auto& k = simd::kernels();
  const double scale = a.frobenius();
  const double target = tol.eig_tol * scale;

  bool converged = false;
  bool polish_done = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double off = off_diagonal_norm(a);
    if (off == 0.0 || (off <= target && polish_done)) {
      converged = true;
      break;
    }
    // One extra sweep past the tolerance; convergence is quadratic by then.
    if (off <= target) polish_done = true;
    const double threshold = sweep < 3 ? 0.2 * off / static_cast<double>(n * n) : 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        const double g = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + g == std::abs(a(q, q))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        if (std::abs(apq) <= threshold || apq == 0.0) continue;
        jacobi_rotate(a, vt, p, q, k);
      }
    }
  }
  if (!converged) {
    if (off_diagonal_norm(a) > target) fail(ErrorCode::NoConvergence, "Jacobi exceeded the sweep cap");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  SpectralDecomposition d;
  d.eigenvalues.resize(n);
  d.eigenvectors = Matrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t src = order[c];
    d.eigenvalues[c] = a(src, src);
    for (std::size_t r = 0; r < n; ++r) d.eigenvectors(r, c) = vt(src, r);
  }
  return d;
}

SpectralDecomposition generalized_sym_eig(const Matrix& kmat, const Matrix& mmat, const Tolerances& tol) {
  if (!kmat.is_square() || !mmat.is_square()) fail(ErrorCode::NonSquare, "generalized problem needs square K, M");
  if (kmat.rows() != mmat.rows()) fail(ErrorCode::DimensionMismatch, "K and M differ in size");
  const Matrix l = cholesky_lower(mmat);
  const Matrix x = lower_solve(l, kmat);
  Matrix c = lower_solve(l, x.transpose());
  c = symmetric_part(c);
  SpectralDecomposition d = sym_eig(c, tol);
  d.eigenvectors = lower_transpose_solve(l, d.eigenvectors);
  return d;
}

double operator_norm(const Matrix& m, const Tolerances& tol) {
  if (m.empty()) fail(ErrorCode::EmptyMatrix, "operator norm of an empty matrix");
  if (!m.all_finite()) fail(ErrorCode::NonFinite, "operator norm of a non-finite matrix");
  const Matrix gram = m.rows() >= m.cols() ? multiply_tn(m, m) : multiply_tn(m.transpose(), m.transpose());
  const SpectralDecomposition d = sym_eig(symmetric_part(gram), tol);
  return std::sqrt(std::max(0.0, d.eigenvalues.back()));
}

double operator_norm(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.re.empty()) fail(ErrorCode::EmptyMatrix, "operator norm of an empty matrix");
  if (!m.all_finite()) fail(ErrorCode::NonFinite, "operator norm of a non-finite matrix");
  // M*M = (reᵀre + imᵀim) + i (reᵀim - imᵀre); its real embedding is symmetric.
  const Matrix x = multiply_tn(m.re, m.re) + multiply_tn(m.im, m.im);
  const Matrix y = multiply_tn(m.re, m.im) - multiply_tn(m.im, m.re);
  const Matrix embedding = symmetric_part(ComplexMatrix(x, y).real_embedding());
  const SpectralDecomposition d = sym_eig(embedding, tol);
  return std::sqrt(std::max(0.0, d.eigenvalues.back()));
}

std::vector<double> singular_values(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  // Rows of w are the columns of the tall orientation of m.
  Matrix w = m.rows() >= m.cols() ? m.transpose() : m;
  const std::size_t nv = w.rows();
  const std::size_t len = w.cols();
  const auto& k = simd::kernels();
  constexpr double eps = 1e-15;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < nv; ++p) {
      for (std::size_t q = p + 1; q < nv; ++q) {
        double* wp = w.row(p).data();
        double* wq = w.row(q).data();
        const double alpha = k.dot(wp, wp, len);
        const double beta = k.dot(wq, wq, len);
        const double gamma = k.dot(wp, wq, len);
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        k.rot(wp, wq, len, c, c * t);
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(nv);
  for (std::size_t i = 0; i < nv; ++i) sv[i] = std::sqrt(k.dot(w.row(i).data(), w.row(i).data(), len));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

std::size_t numerical_rank(const Matrix& m, const Tolerances& tol) {
  const std::vector<double> sv = singular_values(m);
  if (sv.empty() || sv.front() == 0.0) return 0;
  const double cut = tol.rank_tol * sv.front();
  return static_cast<std::size_t>(std::count_if(sv.begin(), sv.end(), [cut](double s) { return s > cut; }));
}

Matrix cholesky_lower(const Matrix& a) {
  if (!a.is_square()) fail(ErrorCode::NonSquare, "Cholesky of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix l(n, n);
  const auto& k = simd::kernels();
  for (std::size_t j = 0; j < n; ++j) {
    const double d = a(j, j) - k.dot(l.row(j).data(), l.row(j).data(), j);
    if (!(d > 0.0)) fail(ErrorCode::NotPositiveDefinite, "non-positive pivot at row " + std::to_string(j));
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      l(i, j) = (a(i, j) - k.dot(l.row(i).data(), l.row(j).data(), j)) / ljj;
    }
  }
  return l;
}

Matrix lower_solve(const Matrix& l, const Matrix& b) {
  if (l.rows() != b.rows()) fail(ErrorCode::DimensionMismatch, "triangular solve size mismatch");
  const std::size_t n = l.rows();
  Matrix x = b;
  const auto& k = simd::kernels();
  for (std::size_t i = 0; i < n; ++i) {
    double* xi = x.row(i).data();
    for (std::size_t p = 0; p < i; ++p) {
      const double lip = l(i, p);
      if (lip != 0.0) k.axpy(-lip, x.row(p).data(), xi, x.cols());
    }
    k.scal(1.0 / l(i, i), xi, x.cols());
  }
  return x;
}

Matrix lower_transpose_solve(const Matrix& l, const Matrix& b) {
  if (l.rows() != b.rows()) fail(ErrorCode::DimensionMismatch, "triangular solve size mismatch");
  const std::size_t n = l.rows();
  Matrix x = b;
  const auto& k = simd::kernels();
  for (std::size_t ii = n; ii-- > 0;) {
    double* xi = x.row(ii).data();
    for (std::size_t p = ii + 1; p < n; ++p) {
      const double lpi = l(p, ii);
      if (lpi != 0.0) k.axpy(-lpi, x.row(p).data(), xi, x.cols());
    }
    k.scal(1.0 / l(ii, ii), xi, x.cols());
  }
  return x;
}

Matrix cholesky_solve(const Matrix& l, const Matrix& b) { return lower_transpose_solve(l, lower_solve(l, b)); }

Matrix spd_inverse(const Matrix& a) {
  return symmetric_part(cholesky_solve(cholesky_lower(a), Matrix::identity(a.rows())));
}

}  // namespace fredlab::linalg
