#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fredlab/error.hpp"
#include "fredlab/gallery/gallery.hpp"
#include "fredlab/topology/metrics.hpp"

using namespace fredlab;
using linalg::Matrix;
using topology::ScalarFunction;
using topology::SelfAdjointOperator;

namespace {

SelfAdjointOperator diag(std::vector<double> d) { return SelfAdjointOperator(Matrix::diagonal(d)); }

std::vector<ScalarFunction> generators() {
  return {ScalarFunction::p0(), ScalarFunction::p_plus(), ScalarFunction::p_minus(), ScalarFunction::riesz(),
          ScalarFunction::alpha_ramp()};
}

}  // namespace

TEST_CASE("operator construction checks") {
  CHECK_THROWS_AS(SelfAdjointOperator(Matrix(2, 3)), Error);
  CHECK_THROWS_AS(SelfAdjointOperator(Matrix{{0, 1}, {0, 0}}), Error);
  const SelfAdjointOperator a(Matrix{{1, 2}, {2, 1}});
  const SelfAdjointOperator copy = a;
  CHECK(&a.spectral() == &copy.spectral());
}

TEST_CASE("riesz_map examples") {
  CHECK(topology::riesz_map(diag({0, 0})).max_abs() == 0.0);
  const Matrix p = topology::riesz_map(diag({0, 1}));
  CHECK(p(1, 1) == doctest::Approx(0.7071067811865476).epsilon(1e-14));
  CHECK(topology::riesz_map(diag({3}))(0, 0) == doctest::Approx(3.0 / std::sqrt(10.0)).epsilon(1e-14));
}

TEST_CASE("riesz_map is a commuting contraction with r on the spectrum") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = gallery::random_selfadjoint(12, seed, {-20.0, 20.0});
    const Matrix psi = topology::riesz_map(a);
    CHECK(linalg::asymmetry(psi) <= 1e-12);
    CHECK(linalg::operator_norm(psi) < 1.0);
    CHECK((psi * a.matrix() - a.matrix() * psi).max_abs() <= 1e-10 * (1.0 + a.matrix().max_abs()));
    const auto ev = linalg::sym_eig(psi).eigenvalues;
    for (std::size_t i = 0; i < ev.size(); ++i)
      CHECK(std::abs(ev[i] - topology::riesz_profile(a.spectral().eigenvalues[i])) <= 1e-12);
    const auto back = topology::inverse_riesz_map(psi);
    CHECK((back.matrix() - a.matrix()).max_abs() <= 1e-9 * (1.0 + a.matrix().max_abs()));
  }
}

TEST_CASE("riesz_metric examples") {
  const auto a = gallery::random_selfadjoint(5, 1);
  CHECK(topology::riesz_metric(a, a) == 0.0);
  CHECK(topology::riesz_metric(diag({1}), diag({-1})) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  for (std::size_t n : {1u, 3u, 7u}) {
    const auto an = gallery::fuglede_operator({n, 2 * n});
    const auto a0 = gallery::fuglede_operator({0, 2 * n});
    CHECK(topology::riesz_metric(an, a0) == doctest::Approx(gallery::fuglede_expected(n).rho).epsilon(1e-12));
  }
  CHECK_THROWS_AS(topology::riesz_metric(diag({1}), diag({1, 2})), Error);
}

TEST_CASE("resolvents at i") {
  const auto r0 = topology::resolvents_at_i(diag({0, 0}));
  CHECK(r0.plus.im(0, 0) == doctest::Approx(-1.0));
  CHECK(r0.minus.im(1, 1) == doctest::Approx(-1.0));
  CHECK(r0.plus.re.max_abs() == 0.0);
  const auto r1 = topology::resolvents_at_i(diag({1}));
  CHECK(r1.plus.re(0, 0) == doctest::Approx(0.5));
  CHECK(r1.plus.im(0, 0) == doctest::Approx(-0.5));
  // 1/(i - 1) = (-1 - i)/2
  CHECK(r1.minus.re(0, 0) == doctest::Approx(-0.5));
  CHECK(r1.minus.im(0, 0) == doctest::Approx(-0.5));
}

TEST_CASE("resolvent identities hold on random matrices") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = gallery::random_selfadjoint(20, 50 + seed, {-10.0, 10.0});
    const auto r = topology::resolvent_identity_residuals(a);
    CHECK(r.plus <= 1e-10);
    CHECK(r.minus <= 1e-10);
    CHECK(r.inverse_square <= 1e-10);
    CHECK(r.defining_product <= 1e-10);
  }
}

TEST_CASE("gap_metric examples") {
  const auto a = gallery::random_selfadjoint(4, 2);
  CHECK(topology::gap_metric(a, a) == 0.0);
  const auto b = topology::gap_branches(gallery::fuglede_operator({1, 4}), gallery::fuglede_operator({0, 4}));
  CHECK(b.plus == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b.minus == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b.total() == doctest::Approx(2.0).epsilon(1e-14));
  // γ(0, t) = 2|t|/√(1+t²) for scalars
  for (double t : {1e-2, 1e-4, 1e-6}) {
    const double g = topology::gap_metric(diag({0}), diag({t}));
    CHECK(g == doctest::Approx(2.0 * t / std::sqrt(1.0 + t * t)).epsilon(1e-9));
  }
}

TEST_CASE("metrics are symmetric and satisfy the triangle inequality") {
  for (std::uint64_t t = 0; t < 100; ++t) {
    const std::size_t d = 1 + t % 20;
    const auto a = gallery::random_selfadjoint(d, 3 * t, {-5.0, 5.0});
    const auto b = gallery::random_selfadjoint(d, 3 * t + 1, {-5.0, 5.0});
    const auto c = gallery::random_selfadjoint(d, 3 * t + 2, {-5.0, 5.0});
    CHECK(topology::riesz_metric(a, b) == topology::riesz_metric(b, a));
    CHECK(topology::gap_metric(a, b) == doctest::Approx(topology::gap_metric(b, a)).epsilon(1e-14));
    CHECK(topology::riesz_metric(a, c) <= topology::riesz_metric(a, b) + topology::riesz_metric(b, c) + 1e-10);
    CHECK(topology::gap_metric(a, c) <= topology::gap_metric(a, b) + topology::gap_metric(b, c) + 1e-10);
    CHECK(topology::riesz_metric(a, b) <= 2.0);
  }
}

TEST_CASE("each resolvent branch is bounded by gamma") {
  const auto a = gallery::random_selfadjoint(8, 5);
  const auto b = SelfAdjointOperator(a.matrix() + 1e-9 * gallery::random_symmetric(8, 6));
  const auto fns = generators();
  const auto rep = topology::generator_distance_profile(a, b, fns);
  CHECK(rep.gamma <= 1e-8);
  CHECK(rep.generator_distances.at("Pplus") <= rep.gamma);
  CHECK(rep.generator_distances.at("Pminus") <= rep.gamma);
}

TEST_CASE("subspace_gap examples") {
  const auto e1 = linalg::Subspace::span_of(Matrix{{1}, {0}});
  const auto e2 = linalg::Subspace::span_of(Matrix{{0}, {1}});
  CHECK(topology::subspace_gap(e1, e1) == 0.0);
  CHECK(topology::subspace_gap(e1, e2) == doctest::Approx(1.0));
  const double th = std::numbers::pi / 6.0;
  const auto l = linalg::Subspace::span_of(Matrix{{std::cos(th)}, {std::sin(th)}});
  CHECK(topology::subspace_gap(e1, l) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(topology::subspace_gap(e1, linalg::Subspace::zero(3)), Error);
}

TEST_CASE("generator_distance_profile examples") {
  const auto fns = generators();
  const auto a = gallery::random_selfadjoint(6, 8);
  const auto same = topology::generator_distance_profile(a, a, fns);
  CHECK(same.gamma == 0.0);
  CHECK(same.rho == 0.0);
  for (const auto& [k, v] : same.generator_distances) CHECK(v == 0.0);

  for (std::size_t n : {1u, 2u, 5u}) {
    const auto e = gallery::fuglede_expected(n);
    const auto rep = topology::generator_distance_profile(gallery::fuglede_operator({n, 4 * n}),
                                                          gallery::fuglede_operator({0, 4 * n}), fns);
    CHECK(rep.generator_distances.at("Pplus") == doctest::Approx(e.resolvent_branch).epsilon(1e-12));
    CHECK(rep.generator_distances.at("Pminus") == doctest::Approx(e.resolvent_branch).epsilon(1e-12));
    CHECK(rep.generator_distances.at("alpha_ramp") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.generator_distances.at("r") == doctest::Approx(e.rho).epsilon(1e-12));
    CHECK(rep.generator_distances.at("P0") == 0.0);
  }
}

TEST_CASE("diagonal profile agrees with the dense route") {
  const auto fns = generators();
  for (std::size_t n : {1u, 3u}) {
    const gallery::FugledeSpec s{n, 4 * n};
    const gallery::FugledeSpec s0{0, 4 * n};
    const auto dense = topology::generator_distance_profile(gallery::fuglede_operator(s), gallery::fuglede_operator(s0), fns);
    const auto d1 = gallery::fuglede_diagonal(s);
    const auto d0 = gallery::fuglede_diagonal(s0);
    const auto diagonal = topology::diagonal_profile(d1, d0, fns);
    CHECK(diagonal.gamma == doctest::Approx(dense.gamma).epsilon(1e-12));
    CHECK(diagonal.rho == doctest::Approx(dense.rho).epsilon(1e-12));
    CHECK(diagonal.delta_graphs == doctest::Approx(dense.delta_graphs).epsilon(1e-12));
    for (const auto& [k, v] : dense.generator_distances)
      CHECK(diagonal.generator_distances.at(k) == doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("alpha ramp shape") {
  const auto alpha = ScalarFunction::alpha_ramp(0.5);
  CHECK(alpha(-0.5).real() == 0.0);
  CHECK(alpha(-3.0).real() == 0.0);
  CHECK(alpha(0.0).real() == doctest::Approx(0.5));
  CHECK(alpha(0.5).real() == 1.0);
  CHECK(alpha(10.0).real() == 1.0);
  CHECK_THROWS_AS(ScalarFunction::alpha_ramp(0.0), Error);
}

TEST_CASE("relative_bound_surrogate examples") {
  CHECK(topology::relative_bound_surrogate(diag({1, 2}), Matrix(2, 2)) == 0.0);
  CHECK(topology::relative_bound_surrogate(diag({0}), Matrix{{1e-3}}) == doctest::Approx(1e-3));
  CHECK(topology::relative_bound_surrogate(diag({10}), Matrix{{1}}) == doctest::Approx(1.0 / 11.0));
  CHECK_THROWS_AS(topology::relative_bound_surrogate(diag({1}), Matrix(2, 2)), Error);
}

TEST_CASE("relative_bound_surrogate certifies the bound") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = gallery::random_selfadjoint(7, 60 + seed, {-8.0, 8.0});
    const Matrix s = gallery::random_symmetric(7, 70 + seed);
    const double c = topology::relative_bound_surrogate(a, s);
    for (std::uint64_t k = 0; k < 10; ++k) {
      const Matrix u = gallery::random_gaussian(7, 1, 1000 * seed + k);
      const auto col = u.column_copy(0);
      const double lhs = linalg::norm2(s * std::span<const double>(col));
      const double rhs = c * (linalg::norm2(a.matrix() * std::span<const double>(col)) + linalg::norm2(col));
      CHECK(lhs <= rhs * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("classify_component reads tail metadata only") {
  CHECK(topology::classify_component(gallery::fuglede_operator({0, 4})) == topology::Component::F_plus);
  CHECK(topology::classify_component(diag({-1, 1})) == topology::Component::unknown);
  const SelfAdjointOperator both(Matrix::identity(2), topology::TailDescriptor{topology::EssentialSpectrum::both});
  CHECK(topology::classify_component(both) == topology::Component::F_0);
  const SelfAdjointOperator minus(Matrix::identity(2), topology::TailDescriptor{topology::EssentialSpectrum::minus_only});
  CHECK(topology::classify_component(minus) == topology::Component::F_minus);
  CHECK(topology::to_string(topology::Component::F_0) == "F_0");
}
