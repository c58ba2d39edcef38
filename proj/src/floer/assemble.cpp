#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fredlab/error.hpp"
#include "fredlab/floer/floer.hpp"

namespace fredlab::floer {

using linalg::BandedSymmetric;
using linalg::Matrix;

AProfile::AProfile(std::vector<std::complex<double>> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) fail(ErrorCode::InvalidConfig, "a(t) needs at least one sample");
  for (const auto& v : samples_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) fail(ErrorCode::InvalidConfig, "a(t) sample is not finite");
  }
}

AProfile AProfile::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ConfigError, "cannot open a(t) samples file '" + path + "'");
  std::vector<std::complex<double>> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t\r")] == '#') continue;
    std::istringstream row(line);
    double re = 0.0;
    double im = 0.0;
    std::string extra;
    if (!(row >> re >> im) || (row >> extra)) {
      fail(ErrorCode::ConfigError, path + ":" + std::to_string(line_no) + ": expected two real columns");
    }
    values.emplace_back(re, im);
  }
  if (values.empty()) fail(ErrorCode::ConfigError, "a(t) samples file '" + path + "' has no rows");
  try {
    return AProfile(std::move(values));
  } catch (const Error& e) {
    fail(ErrorCode::ConfigError, e.what());
  }
}

std::complex<double> AProfile::operator()(double t) const {
  const std::size_t n = samples_.size();
  if (n == 1) return samples_.front();
  const double x = std::clamp(t, 0.0, 1.0) * static_cast<double>(n - 1);
  const std::size_t i = std::min(static_cast<std::size_t>(x), n - 2);
  const double f = x - static_cast<double>(i);
  return (1.0 - f) * samples_[i] + f * samples_[i + 1];
}

bool AProfile::is_zero() const noexcept {
  return std::all_of(samples_.begin(), samples_.end(), [](auto v) { return v == 0.0; });
}

double AProfile::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& v : samples_) m = std::max(m, std::abs(v));
  return m;
}

void FloerConfig::validate() const {
  if (grid_m < 8) fail(ErrorCode::InvalidConfig, "grid needs at least 8 elements");
  if (!std::isfinite(s) || s < -1e-9 || s > 2.0 * std::numbers::pi + 1e-9) {
    fail(ErrorCode::InvalidConfig, "boundary angle must lie in [0, 2pi]");
  }
  if (coupling == Coupling::linear_imaginary) {
    for (const auto& v : a.samples()) {
      if (std::abs(v.real()) > 1e-12) fail(ErrorCode::InvalidConfig, "linear coupling needs Re a = 0");
    }
  }
}

Mat2 coupling_matrix(std::complex<double> a, Coupling coupling) {
  const double p = a.real();
  const double q = a.imag();
  if (coupling == Coupling::antilinear) return {{{p, q}, {q, -p}}};
  return {{{p, -q}, {q, p}}};
}

Mat2 zeroth_order(const FloerConfig& cfg, double t) {
  const Mat2 m = coupling_matrix(cfg.a(t), cfg.coupling);
  // -J M with J = [[0, -1], [1, 0]].
  return {{{m[1][0], m[1][1]}, {-m[0][0], -m[0][1]}}};
}

namespace {

void add_sym(BandedSymmetric& b, std::size_t i, std::size_t j, double v) {
  if (i < j) std::swap(i, j);
  b.band(i, i - j) += v;
}

Matrix to_dense(const BandedSymmetric& b) {
  Matrix d(b.dim(), b.dim());
  for (std::size_t i = 0; i < b.dim(); ++i) {
    for (std::size_t k = 0; k <= std::min(i, b.bandwidth()); ++k) {
      d(i, i - k) = b.band(i, k);
      d(i - k, i) = b.band(i, k);
    }
  }
  return d;
}

// R(st) C R(-st), the coefficient seen in the rotating frame.
Mat2 rotated(const Mat2& c, double theta) {
  const double co = std::cos(theta);
  const double si = std::sin(theta);
  const Mat2 r{{{co, -si}, {si, co}}};
  Mat2 rc{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) rc[i][j] = r[i][0] * c[0][j] + r[i][1] * c[1][j];
  Mat2 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = rc[i][0] * r[j][0] + rc[i][1] * r[j][1];
  out[0][1] = out[1][0] = 0.5 * (out[0][1] + out[1][0]);
  return out;
}

}  // namespace

Matrix DiscretizedOperator::dense_stiffness() const { return to_dense(stiffness); }
Matrix DiscretizedOperator::dense_mass() const { return to_dense(mass); }

DiscretizedOperator assemble_floer_operator(const FloerConfig& cfg) {
  cfg.validate();
  const std::size_t m = cfg.grid_m;
  const std::size_t n = 2 * m + 1;
  const double h = 1.0 / static_cast<double>(m);
  BandedSymmetric k(n, 2);
  BandedSymmetric mass(n, 2);

  for (std::size_t e = 0; e < m; ++e) {
    const std::size_t i0 = 2 * e;
    const std::size_t ie = 2 * e + 1;
    const std::size_t i1 = 2 * e + 2;
    add_sym(k, ie, i1, 1.0);
    add_sym(k, ie, i0, -1.0);
    add_sym(mass, i0, i0, h / 3.0);
    add_sym(mass, i1, i1, h / 3.0);
    add_sym(mass, i0, i1, h / 6.0);
    add_sym(mass, ie, ie, h);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t d = 0; d <= std::min<std::size_t>(i, 2); ++d) k.band(i, d) += cfg.s * mass.band(i, d);

  if (!cfg.a.is_zero()) {
    const double g = 0.5 / std::sqrt(3.0);
    for (std::size_t e = 0; e < m; ++e) {
      const std::size_t i0 = 2 * e;
      const std::size_t ie = 2 * e + 1;
      const std::size_t i1 = 2 * e + 2;
      for (double xi : {0.5 - g, 0.5 + g}) {
        const double t = (static_cast<double>(e) + xi) * h;
        const Mat2 c = rotated(zeroth_order(cfg, t), cfg.s * t);
        const double w = 0.5 * h;
        const double f0 = 1.0 - xi;
        const double f1 = xi;
        add_sym(k, i0, i0, w * c[0][0] * f0 * f0);
        add_sym(k, i1, i1, w * c[0][0] * f1 * f1);
        add_sym(k, i0, i1, w * c[0][0] * f0 * f1);
        add_sym(k, i0, ie, w * c[0][1] * f0);
        add_sym(k, i1, ie, w * c[0][1] * f1);
        add_sym(k, ie, ie, w * c[1][1]);
      }
    }
  }

  DofMap map{m, n, "rotating frame; w1 piecewise linear at node i -> 2i, w2 piecewise constant on element e -> 2e+1"};
  return {cfg, std::move(k), std::move(mass), std::move(map)};
}

}  // namespace fredlab::floer
