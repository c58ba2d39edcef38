#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fredlab/error.hpp"
#include "fredlab/floer/floer.hpp"
#include "fredlab/topology/metrics.hpp"

using namespace fredlab;
using floer::AProfile;
using floer::Coupling;
using floer::FloerConfig;
using linalg::Matrix;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ConfigError;
}

double max_error_to_oracle(const std::vector<double>& values, double s) {
  double err = 0.0;
  for (double v : values) err = std::max(err, std::abs(std::remainder(v - s, kPi)));
  return err;
}

}  // namespace

TEST_CASE("a(t) profiles") {
  CHECK(AProfile::zero().is_zero());
  const AProfile c = AProfile::constant(0.5, -1.0);
  CHECK(c(0.3) == std::complex<double>(0.5, -1.0));
  CHECK(c.max_abs() == doctest::Approx(std::hypot(0.5, 1.0)));
  const AProfile lin({{0.0, 0.0}, {2.0, 4.0}});
  CHECK(lin(0.25).real() == doctest::Approx(0.5));
  CHECK(lin(0.25).imag() == doctest::Approx(1.0));
  CHECK(lin(1.0).real() == doctest::Approx(2.0));

  const std::string path = "fredlab_test_profile.txt";
  {
    std::ofstream f(path);
    f << "0 1\n0.5 1\n1 1\n";
  }
  const AProfile from = AProfile::from_file(path);
  CHECK(from.samples().size() == 3);
  CHECK(from(0.75).real() == doctest::Approx(0.75));
  {
    std::ofstream f(path);
    f << "0 1\nbanana\n";
  }
  CHECK(code_of([&] { AProfile::from_file(path); }) == ErrorCode::ConfigError);
  std::remove(path.c_str());
  CHECK(code_of([] { AProfile::from_file("/nonexistent/profile"); }) == ErrorCode::ConfigError);
}

TEST_CASE("coupling encodings") {
  const auto anti = floer::coupling_matrix({1.0, 0.0}, Coupling::antilinear);
  CHECK(anti == floer::Mat2{{{1.0, 0.0}, {0.0, -1.0}}});
  const auto anti2 = floer::coupling_matrix({0.3, 0.7}, Coupling::antilinear);
  CHECK(anti2 == floer::Mat2{{{0.3, 0.7}, {0.7, -0.3}}});
  const auto lin = floer::coupling_matrix({0.0, 2.0}, Coupling::linear_imaginary);
  CHECK(lin == floer::Mat2{{{0.0, -2.0}, {2.0, 0.0}}});
  // C = -J M_a is symmetric in both admissible readings
  for (Coupling cp : {Coupling::antilinear, Coupling::linear_imaginary}) {
    const FloerConfig cfg{AProfile::constant(cp == Coupling::antilinear ? 0.4 : 0.0, 0.9), 0.0, 8, cp};
    const auto c = floer::zeroth_order(cfg, 0.5);
    CHECK(c[0][1] == doctest::Approx(c[1][0]));
  }
}

TEST_CASE("config validation") {
  CHECK(code_of([] { FloerConfig{AProfile::zero(), 0.0, 7}.validate(); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([] { FloerConfig{AProfile::zero(), 7.0, 8}.validate(); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([] { FloerConfig{AProfile::constant(1.0, 0.0), 0.0, 8, Coupling::linear_imaginary}.validate(); }) ==
        ErrorCode::InvalidConfig);
  CHECK_NOTHROW(FloerConfig({AProfile::constant(0.0, 1.0), 2.0 * kPi, 8, Coupling::linear_imaginary}).validate());
  CHECK(code_of([] { floer::assemble_floer_operator({AProfile::zero(), -1.0, 8}); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("assembly") {
  const auto op = floer::assemble_floer_operator({AProfile::zero(), 0.0, 8});
  CHECK(op.dim() == 2 * 8 + 1);
  CHECK(op.dof_map.elements == 8);
  CHECK(linalg::asymmetry(op.dense_stiffness()) <= 1e-12);
  CHECK(linalg::asymmetry(op.dense_mass()) <= 1e-12);
  CHECK_NOTHROW(linalg::cholesky_lower(op.dense_mass()));

  // mass rows sum to the measure of [0, 1] per component
  const Matrix m = op.dense_mass();
  double total = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) total += m(i, j);
  CHECK(total == doctest::Approx(2.0));

  const auto op2 = floer::assemble_floer_operator({AProfile::constant(0.6, -0.2), 2.5, 30});
  CHECK(linalg::asymmetry(op2.dense_stiffness()) <= 1e-12);
  CHECK(linalg::half_bandwidth(op2.dense_stiffness()) <= 2);
}

TEST_CASE("spectrum with a = 0") {
  // s = 0 has the constant solution (1, 0) in the kernel
  const auto op = floer::assemble_floer_operator({AProfile::zero(), 0.0, 40});
  const auto ev = floer::floer_spectrum(op, 3);
  REQUIRE(ev.size() == 3);
  CHECK(std::abs(ev[1]) <= 1e-10);
  CHECK(std::is_sorted(ev.begin(), ev.end()));

  for (double s : {0.5, 2.0}) {
    const auto o = floer::assemble_floer_operator({AProfile::zero(), s, 100});
    const auto banded = floer::floer_spectrum(o, 5);
    const auto dense = floer::floer_spectrum_dense(o, 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(banded[i] == doctest::Approx(dense[i]).epsilon(1e-10));
    CHECK(max_error_to_oracle(banded, s) <= 1e-2);
  }
}

TEST_CASE("refinement halves the error at least") {
  for (double s : {0.5, 3.0}) {
    const double coarse = max_error_to_oracle(floer::floer_spectrum(floer::assemble_floer_operator({AProfile::zero(), s, 50}), 5), s);
    const double fine = max_error_to_oracle(floer::floer_spectrum(floer::assemble_floer_operator({AProfile::zero(), s, 100}), 5), s);
    CHECK(coarse >= 2.0 * fine);
  }
}

TEST_CASE("spectra repeat when s moves by pi") {
  const auto a = floer::floer_spectrum(floer::assemble_floer_operator({AProfile::zero(), 0.4, 200}), 5);
  const auto b = floer::floer_spectrum(floer::assemble_floer_operator({AProfile::zero(), 0.4 + kPi, 200}), 5);
  // the windows are centred on 0, so compare the value sets near the middle
  for (double v : {a[1], a[2], a[3]}) {
    double best = 1e9;
    for (double w : b) best = std::min(best, std::abs(v - w));
    CHECK(best <= 1e-3);
  }
}

TEST_CASE("shooting oracle") {
  const auto roots = floer::shooting_eigenvalues({AProfile::zero(), kPi / 2.0, 8}, {-2.0, 2.0});
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(-kPi / 2.0).epsilon(1e-9));
  CHECK(roots[1] == doctest::Approx(kPi / 2.0).epsilon(1e-9));

  const auto many = floer::shooting_eigenvalues({AProfile::zero(), 1.0, 8}, {-10.0, 10.0});
  CHECK(many.size() == 6);
  CHECK(max_error_to_oracle(many, 1.0) <= 1e-9);

  // grid-free: the element count does not enter
  const FloerConfig c1{AProfile::constant(0.7, 0.3), 1.0, 8};
  const FloerConfig c2{AProfile::constant(0.7, 0.3), 1.0, 400};
  CHECK(floer::shooting_eigenvalues(c1, {-5, 5}) == floer::shooting_eigenvalues(c2, {-5, 5}));
  CHECK(floer::shooting_eigenvalues({AProfile::zero(), 1.0, 8}, {1.5, 2.5}).empty());
}

TEST_CASE("discretization tracks the oracle with a nonzero coupling") {
  for (const AProfile& a : {AProfile::constant(0.7, 0.3), AProfile({{0.0, 0.0}, {1.0, -0.5}, {0.2, 0.8}})}) {
    const FloerConfig cfg{a, 1.3, 300};
    const auto oracle = floer::shooting_eigenvalues(cfg, {-12.0, 12.0});
    for (double e : floer::floer_spectrum(floer::assemble_floer_operator(cfg), 5)) {
      double best = 1e9;
      for (double r : oracle) best = std::min(best, std::abs(r - e));
      CHECK(best <= 1e-2);
    }
  }
  FloerConfig lin{AProfile::constant(0.0, 0.8), 1.3, 300, Coupling::linear_imaginary};
  const auto oracle = floer::shooting_eigenvalues(lin, {-12.0, 12.0});
  for (double e : floer::floer_spectrum(floer::assemble_floer_operator(lin), 5)) {
    double best = 1e9;
    for (double r : oracle) best = std::min(best, std::abs(r - e));
    CHECK(best <= 1e-2);
  }
}

TEST_CASE("spectral flow from eigenvalue windows") {
  const std::vector<std::vector<double>> constant(5, {-1.0, 0.5, 2.0});
  CHECK(floer::spectral_flow_from_windows(constant, 1e-3) == 0);

  std::vector<std::vector<double>> up;
  for (int j = 0; j <= 10; ++j) up.push_back({-0.5 + 0.1 * j - 2.0, -0.5 + 0.1 * j, -0.5 + 0.1 * j + 2.0});
  CHECK(floer::spectral_flow_from_windows(up, 1e-3) == 1);
  std::vector<std::vector<double>> down(up.rbegin(), up.rend());
  CHECK(floer::spectral_flow_from_windows(down, 1e-3) == -1);

  // touching zero and leaving on the same side counts nothing net
  const std::vector<std::vector<double>> touch{{-0.2, 1.0}, {-0.1, 1.0}, {0.0, 1.0}, {-0.1, 1.0}};
  CHECK(floer::spectral_flow_from_windows(touch, 1e-3) == 0);
  // starting at zero is not a crossing, arriving at zero is
  const std::vector<std::vector<double>> start{{0.0, 1.0}, {0.1, 1.0}, {0.2, 1.0}};
  CHECK(floer::spectral_flow_from_windows(start, 1e-3) == 0);
  const std::vector<std::vector<double>> end{{-0.2, 1.0}, {-0.1, 1.0}, {0.0, 1.0}};
  CHECK(floer::spectral_flow_from_windows(end, 1e-3) == 1);

  // 0.6 has no partner within half the gap yet sits inside the old window
  const std::vector<std::vector<double>> jump{{-1.0, 0.0, 1.0}, {-0.4, 0.6, 1.0}};
  CHECK(code_of([&] { floer::spectral_flow_from_windows(jump, 1e-3); }) == ErrorCode::SamplingTooCoarse);
}

TEST_CASE("spectral flow of the a = 0 family over one loop") {
  std::vector<double> s(64);
  for (std::size_t j = 0; j < s.size(); ++j) s[j] = 2.0 * kPi * static_cast<double>(j) / 63.0;
  const FloerConfig base{AProfile::zero(), 0.0, 60};
  CHECK(floer::spectral_flow_over(base, s, 6) == 2);
  std::vector<double> r(s.rbegin(), s.rend());
  CHECK(floer::spectral_flow_over(base, r, 6) == -2);

  // concatenation is additive with half-open endpoints
  std::vector<double> first(s.begin(), s.begin() + 33);
  std::vector<double> second(s.begin() + 32, s.end());
  CHECK(floer::spectral_flow_over(base, first, 6) + floer::spectral_flow_over(base, second, 6) == 2);

  const std::vector<double> frozen(8, 1.0);
  CHECK(floer::spectral_flow_over(base, frozen, 6) == 0);
}

TEST_CASE("boundary projectors and nu") {
  for (double s : {0.0, 1.0, 4.0}) {
    const Matrix p = floer::boundary_projector(s);
    CHECK((p * p - p).max_abs() <= 1e-12);
    CHECK(linalg::asymmetry(p) <= 1e-12);
    CHECK(p.trace() == doctest::Approx(2.0));
    // the allowed line at t = 1 lies in the kernel
    const std::vector<double> u{1.0, 0.0, std::cos(s), -std::sin(s)};
    for (double v : p * std::span<const double>(u)) CHECK(std::abs(v) <= 1e-15);
  }
  const Matrix d0 = floer::boundary_operator({AProfile::constant(0.5, 0.2), 0.0, 8});
  CHECK(linalg::asymmetry(d0) <= 1e-15);
  const Matrix p = floer::boundary_projector(1.0);
  const Matrix q = floer::boundary_projector(1.2);
  CHECK(floer::nu_metric(p, p, d0) == 0.0);
  CHECK(floer::nu_metric(p, q, Matrix(4, 4)) == doctest::Approx(linalg::operator_norm(p - q)));
  double lip = 0.0;
  for (double s : {0.0, 1.0, 2.0, 3.0, 5.0})
    for (double ds : {0.1, 0.01, 0.001})
      lip = std::max(lip, floer::nu_metric(floer::boundary_projector(s), floer::boundary_projector(s + ds), d0) / ds);
  // ||P - Q|| <= |ds| for rotating lines and the commutator adds at most 2 ||D0|| ||P - Q||
  CHECK(lip <= 1.0 + 2.0 * linalg::operator_norm(d0) + 1e-9);
}

TEST_CASE("gauge hat U") {
  const Matrix id = Matrix::identity(4);
  const Matrix p = floer::boundary_projector(0.7);
  CHECK((floer::gauge_hat_U(p, p) - id).max_abs() <= 1e-15);
  for (double ds : {-0.2, 0.1, 0.2}) {
    const Matrix q = floer::boundary_projector(0.7 + ds);
    const Matrix u = floer::gauge_hat_U(p, q);
    CHECK((u - floer::gauge_hat_U_reflection_form(p, q)).max_abs() <= 1e-14);
    CHECK(linalg::operator_norm(u - id) <= linalg::operator_norm(q - p) * linalg::operator_norm(2.0 * p - id) + 1e-12);
    // Û carries ker P onto ker Q
    const auto moved = floer::transport(u, linalg::Subspace::span_of(id - p));
    CHECK(topology::subspace_gap(moved, linalg::Subspace::span_of(id - q)) <= 1e-10);
    CHECK(std::abs(linalg::sym_eig(multiply_tn(u, u)).eigenvalues.front()) > 1e-3);
  }
  const Matrix far = floer::boundary_projector(0.7 + kPi / 2.0);
  CHECK(code_of([&] { floer::gauge_hat_U(p, far); }) == ErrorCode::GaugeSingular);
}

TEST_CASE("cutoff profile") {
  const auto eta = floer::CutoffProfile::smooth_step(40);
  REQUIRE(eta.eta.size() == 41);
  CHECK(eta.eta.front() == 0.0);
  CHECK(eta.eta.back() == 1.0);
  CHECK(eta.eta[10] == 0.0);
  CHECK(eta.eta[30] == 1.0);
  for (std::size_t i = 1; i < eta.eta.size(); ++i) CHECK(eta.eta[i] >= eta.eta[i - 1]);
  CHECK(floer::CutoffProfile::value(0.5) == doctest::Approx(0.5));
}

TEST_CASE("cutoff gauge transports the discrete domains") {
  const std::size_t m = 30;
  const auto eta = floer::CutoffProfile::smooth_step(m);
  const Matrix id4 = Matrix::identity(4);
  const Matrix u_id = floer::cutoff_gauge_U(id4, eta, m);
  CHECK((u_id - Matrix::identity(2 * (m + 1))).max_abs() == 0.0);

  for (double s : {0.0, 2.0, 5.9}) {
    for (double ds : {-0.2, 0.05, 0.2}) {
      const Matrix hat = floer::gauge_hat_U(floer::boundary_projector(s), floer::boundary_projector(s + ds));
      const Matrix u = floer::cutoff_gauge_U(hat, eta, m);
      // η = 1 at the last node: the boundary value is moved by the t = 1 block
      const std::vector<double> allowed{std::cos(s), -std::sin(s)};
      const double gx = hat(2, 2) * allowed[0] + hat(2, 3) * allowed[1];
      const double gy = hat(3, 2) * allowed[0] + hat(3, 3) * allowed[1];
      CHECK(std::abs(gx * std::sin(s + ds) + gy * std::cos(s + ds)) <= 1e-12);
      CHECK(u(2 * m, 2 * m) == hat(2, 2));

      const auto moved = floer::transport(u, floer::constrained_subspace(s, m));
      CHECK(moved.dim() == 2 * m);
      CHECK(topology::subspace_gap(moved, floer::constrained_subspace(s + ds, m)) <= 1e-10);
    }
  }
}

TEST_CASE("cutoff gauge H1 norm") {
  const Matrix hat = floer::gauge_hat_U(floer::boundary_projector(1.0), floer::boundary_projector(1.15));
  std::vector<double> norms;
  for (std::size_t m : {50u, 100u, 200u}) {
    norms.push_back(floer::cutoff_gauge_h1_norm(hat, floer::CutoffProfile::smooth_step(m), m));
  }
  for (double v : norms) CHECK(v == doctest::Approx(norms.back()).epsilon(0.1));

  // the Kronecker shortcut agrees with the dense generalized problem
  const std::size_t m = 16;
  const auto eta = floer::CutoffProfile::smooth_step(m);
  const Matrix u = floer::cutoff_gauge_U(hat, eta, m);
  const double dense = floer::h1_operator_norm(u - Matrix::identity(2 * (m + 1)), m);
  CHECK(floer::cutoff_gauge_h1_norm(hat, eta, m) == doctest::Approx(dense).epsilon(1e-9));
  CHECK(floer::h1_operator_norm(Matrix::identity(2 * (m + 1)), m) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("neighbor distances") {
  const FloerConfig base{AProfile::zero(), 0.0, 16};
  const std::vector<double> same{1.0, 1.0};
  const auto zero = floer::rho_continuity_profile(base, same);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].metrics.rho <= 1e-12);
  CHECK(zero[0].nu == 0.0);

  std::vector<double> coarse, fine;
  for (int j = 0; j <= 4; ++j) coarse.push_back(0.5 * j);
  for (int j = 0; j <= 8; ++j) fine.push_back(0.25 * j);
  double rc = 0.0, rf = 0.0;
  for (const auto& nb : floer::rho_continuity_profile(base, coarse)) rc = std::max(rc, nb.metrics.rho);
  for (const auto& nb : floer::rho_continuity_profile(base, fine)) rf = std::max(rf, nb.metrics.rho);
  CHECK(rc >= 1.5 * rf);

  const auto n = floer::normalized_operator(floer::assemble_floer_operator(base));
  CHECK(topology::classify_component(n) == topology::Component::F_0);
  CHECK(n.dim() == 2 * 16 + 1);
}
