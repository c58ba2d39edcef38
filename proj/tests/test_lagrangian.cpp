#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "fredlab/error.hpp"
#include "fredlab/gallery/gallery.hpp"
#include "fredlab/lagrangian/lagrangian.hpp"
#include "fredlab/topology/metrics.hpp"

using namespace fredlab;
using linalg::Matrix;
using linalg::Subspace;
using topology::SelfAdjointOperator;

TEST_CASE("symplectic doubling") {
  const lagrangian::SymplecticDoubling d(3);
  const Matrix& j = d.J();
  CHECK(j.transpose() == -1.0 * j);
  CHECK(j * j == -1.0 * Matrix::identity(6));
  CHECK(lagrangian::is_lagrangian(d.horizontal(), d));
}

TEST_CASE("graph subspaces") {
  const auto g0 = lagrangian::graph_subspace(SelfAdjointOperator(Matrix(3, 3)));
  Matrix expect(6, 6);
  for (std::size_t i = 0; i < 3; ++i) expect(i, i) = 1.0;
  CHECK((g0.projection() - expect).max_abs() <= 1e-15);

  const auto g1 = lagrangian::graph_subspace(SelfAdjointOperator(Matrix{{1}}));
  CHECK(std::abs(std::abs(g1.basis()(0, 0)) - std::sqrt(0.5)) <= 1e-15);
  CHECK(g1.basis()(0, 0) == g1.basis()(1, 0));

  const auto a = gallery::random_selfadjoint(10, 3, {-4.0, 4.0});
  const auto g = lagrangian::graph_subspace(a);
  CHECK(linalg::operator_norm(g.projection() - lagrangian::graph_projection_block(a)) <= 1e-10);
  CHECK(linalg::operator_norm(g.projection() - topology::graph_projection_spectral(a)) <= 1e-10);
}

TEST_CASE("lagrangian test") {
  const lagrangian::SymplecticDoubling d(4);
  const auto a = gallery::random_selfadjoint(4, 8);
  CHECK(lagrangian::is_lagrangian(lagrangian::graph_subspace(a), d));
  CHECK(lagrangian::lagrangian_residual(lagrangian::graph_subspace(a), d) <= 1e-12);
  const Matrix nonsym = gallery::random_gaussian(4, 4, 9);
  CHECK_FALSE(lagrangian::is_lagrangian(lagrangian::graph_of(nonsym), d));
  // right dimension fails, wrong dimension fails
  CHECK_FALSE(lagrangian::is_lagrangian(Subspace::full(8), d));
  CHECK_THROWS_AS(lagrangian::lagrangian_residual(Subspace::full(6), d), Error);
}

TEST_CASE("graph suite over random operators") {
  for (std::uint64_t t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 20;
    std::vector<double> spec(n);
    for (std::size_t i = 0; i < n; ++i) spec[i] = -5.0 + 10.0 * static_cast<double>((i * 7 + t) % 13) / 12.0;
    const std::size_t zeros = std::min<std::size_t>(n, t % 4);
    for (std::size_t z = 0; z < zeros; ++z) spec[z] = 0.0;
    const auto a = gallery::random_with_spectrum(spec, 700 + t);
    const lagrangian::SymplecticDoubling d(n);
    const auto g = lagrangian::graph_subspace(a);
    CHECK(lagrangian::is_lagrangian(g, d));
    CHECK(linalg::operator_norm(g.projection() - lagrangian::graph_projection_block(a)) <= 1e-10);
    std::size_t kernel = 0;
    for (double v : a.spectral().eigenvalues) kernel += std::abs(v) <= linalg::Tolerances{}.rank_tol;
    const auto idx = lagrangian::fredholm_pair_index({d.horizontal(), g});
    CHECK(idx.dim_ker == kernel);
    CHECK(idx.index == 0);
  }
}

TEST_CASE("fredholm pair index examples") {
  const lagrangian::SymplecticDoubling d(3);
  const auto inv = lagrangian::graph_subspace(SelfAdjointOperator(Matrix::diagonal(std::vector<double>{1, -2, 3})));
  auto idx = lagrangian::fredholm_pair_index({d.horizontal(), inv});
  CHECK(idx.index == 0);
  CHECK(idx.dim_ker == 0);
  const auto k2 = lagrangian::graph_subspace(SelfAdjointOperator(Matrix::diagonal(std::vector<double>{0, 5, 0})));
  idx = lagrangian::fredholm_pair_index({d.horizontal(), k2});
  CHECK(idx.index == 0);
  CHECK(idx.dim_ker == 2);
  idx = lagrangian::fredholm_pair_index({inv, inv});
  CHECK(idx.index == 0);
  CHECK(idx.dim_ker == 3);
}

TEST_CASE("suspension") {
  CHECK(lagrangian::suspension(Matrix(3, 3)).matrix().max_abs() == 0.0);
  const auto id = lagrangian::suspension(Matrix::identity(3));
  const auto& ev = id.spectral().eigenvalues;
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(ev[i] == doctest::Approx(-1.0));
    CHECK(ev[i + 3] == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(lagrangian::suspension(Matrix(2, 3)), Error);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 2 + seed;
    // rank-deficient L with a one-dimensional kernel and cokernel
    Matrix l = gallery::random_gaussian(n, n - 1, 40 + seed) * gallery::random_gaussian(n - 1, n, 50 + seed);
    const auto s = lagrangian::suspension(l);
    Matrix grading = Matrix::identity(2 * n);
    for (std::size_t i = n; i < 2 * n; ++i) grading(i, i) = -1.0;
    CHECK((s.matrix() * grading + grading * s.matrix()).max_abs() == 0.0);
    const auto& e = s.spectral().eigenvalues;
    for (std::size_t k = 0; k < 2 * n; ++k) CHECK(std::abs(e[k] + e[2 * n - 1 - k]) <= 1e-10);
    const auto sv = linalg::singular_values(l);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(e[2 * n - 1 - k] - sv[k]) <= 1e-10);
    std::size_t zeros = 0;
    for (double v : e) zeros += std::abs(v) <= 1e-8 * sv.front();
    CHECK(zeros == 2);
  }
}

TEST_CASE("kato consistency") {
  const auto a = gallery::random_selfadjoint(5, 2);
  const auto same = lagrangian::kato_consistency(a, a);
  CHECK(same.delta <= 1e-14);
  CHECK(same.gamma == 0.0);
  double prev_delta = 2.0, prev_gamma = 3.0;
  for (std::size_t n : {2u, 8u, 32u, 128u}) {
    const auto k = lagrangian::kato_consistency(gallery::fuglede_operator({n, 2 * n}), gallery::fuglede_operator({0, 2 * n}));
    CHECK(k.delta < prev_delta);
    CHECK(k.gamma < prev_gamma);
    // the graphs of diagonal operators differ by the angle between slopes n and -n
    CHECK(k.delta == doctest::Approx(2.0 * n / (1.0 + double(n) * n)).epsilon(1e-10));
    prev_delta = k.delta;
    prev_gamma = k.gamma;
  }
}

TEST_CASE("gamma is twice the graph gap for real symmetric pairs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = gallery::random_selfadjoint(6, 90 + seed, {-3.0, 3.0});
    const auto b = gallery::random_selfadjoint(6, 190 + seed, {-3.0, 3.0});
    const auto k = lagrangian::kato_consistency(a, b);
    CHECK(k.gamma == doctest::Approx(2.0 * k.delta).epsilon(1e-9));
  }
}
