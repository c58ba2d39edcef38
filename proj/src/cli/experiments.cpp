#include "fredlab/cli/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "fredlab/error.hpp"
#include "fredlab/gallery/gallery.hpp"
#include "fredlab/lagrangian/lagrangian.hpp"
#include "fredlab/linalg/eigen.hpp"
#include "fredlab/topology/metrics.hpp"

namespace fredlab::cli {

using linalg::Matrix;
using report::ConvergenceReport;
using report::format_number;
using topology::ScalarFunction;
using topology::SelfAdjointOperator;

namespace {

constexpr double kPi = std::numbers::pi;

std::string kv(const std::string& k, double v) { return k + "=" + format_number(v); }
std::string kv(const std::string& k, std::size_t v) { return k + "=" + std::to_string(v); }

double parse_real(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(ErrorCode::ConfigError, "cannot read " + what + " from '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) fail(ErrorCode::ConfigError, "cannot read " + what + " from '" + s + "'");
  return v;
}

// Index of the first entry below the threshold, or -1.
double first_below(const std::vector<double>& v, double threshold) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] < threshold) return static_cast<double>(i);
  return -1.0;
}

bool same_indices_below(const std::vector<double>& a, const std::vector<double>& b, double threshold) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if ((a[i] < threshold) != (b[i] < threshold)) return false;
  return true;
}

std::vector<double> uniform_spectrum(std::size_t n, std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> uni(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = uni(gen);
  return v;
}

// Independent seed for draw `index` of stream `stream`.
std::uint64_t mix(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

}  // namespace

floer::AProfile parse_a_spec(const std::string& spec) {
  if (spec == "0") return floer::AProfile::zero();
  if (spec.rfind("const:", 0) == 0) {
    const std::string body = spec.substr(6);
    const auto comma = body.find(',');
    if (comma == std::string::npos) fail(ErrorCode::ConfigError, "expected const:p,q but got '" + spec + "'");
    return floer::AProfile::constant(parse_real(body.substr(0, comma), "p"), parse_real(body.substr(comma + 1), "q"));
  }
  if (spec.rfind("samples:", 0) == 0) {
    const std::string path = spec.substr(8);
    if (path.empty()) fail(ErrorCode::ConfigError, "samples: needs a file path");
    return floer::AProfile::from_file(path);
  }
  fail(ErrorCode::ConfigError, "a(t) must be 0, const:p,q or samples:PATH, got '" + spec + "'");
}

ConvergenceReport run_fuglede(std::span<const std::size_t> n_list, std::size_t dim_factor) {
  if (n_list.empty()) fail(ErrorCode::ConfigError, "fuglede needs at least one n");
  if (dim_factor < 2) fail(ErrorCode::ConfigError, "dim-factor must be at least 2 so that N >= 2n");
  for (std::size_t n : n_list)
    if (n == 0) fail(ErrorCode::ConfigError, "fuglede needs n >= 1");

  const std::vector<ScalarFunction> fns{ScalarFunction::p0(), ScalarFunction::p_plus(), ScalarFunction::p_minus(),
                                        ScalarFunction::riesz(), ScalarFunction::alpha_ramp(0.5)};
  struct Stats {
    double plus, minus, rho, alpha, delta;
  };
  auto stats = [&](std::size_t n, std::size_t dim) {
    const gallery::FugledeSpec sn{n, dim};
    const gallery::FugledeSpec s0{0, dim};
    if (dim <= 512) {
      const SelfAdjointOperator an = gallery::fuglede_operator(sn);
      const SelfAdjointOperator a0 = gallery::fuglede_operator(s0);
      const topology::MetricReport m = topology::generator_distance_profile(an, a0, fns);
      const topology::GapBranches b = topology::gap_branches(an, a0);
      return Stats{b.plus, b.minus, m.rho, m.generator_distances.at("alpha_ramp"), m.delta_graphs};
    }
    const std::vector<double> dn = gallery::fuglede_diagonal(sn);
    const std::vector<double> d0 = gallery::fuglede_diagonal(s0);
    const topology::MetricReport m = topology::diagonal_profile(dn, d0, fns);
    // (i + A)⁻¹ = P₊(A) and (i - A)⁻¹ = -P₋(A).
    return Stats{m.generator_distances.at("Pplus"), m.generator_distances.at("Pminus"), m.rho,
                 m.generator_distances.at("alpha_ramp"), m.delta_graphs};
  };

  ConvergenceReport rep("fuglede");
  std::vector<double> rhos;
  for (std::size_t n : n_list) {
    const std::size_t dim = dim_factor * n;
    const gallery::FugledeExpected ex = gallery::fuglede_expected(n);
    const Stats st = stats(n, dim);
    const std::string label = "A_n vs A_0";
    const std::string param = kv("n", n) + ";" + kv("N", dim);
    rep.add_expected(label, param, "gamma_plus_branch", st.plus, ex.resolvent_branch, 1e-8);
    rep.add_expected(label, param, "gamma_minus_branch", st.minus, ex.resolvent_branch, 1e-8);
    rep.add_expected(label, param, "gamma", st.plus + st.minus, 2.0 * ex.resolvent_branch, 2e-8);
    rep.add_expected(label, param, "rho", st.rho, ex.rho, 1e-8);
    rep.add_expected(label, param, "alpha_dist", st.alpha, ex.alpha_dist, 1e-8);
    rep.add_expected(label, param, "delta_graphs", st.delta, ex.resolvent_branch, 1e-8);

    const Stats lo = stats(n, 2 * n);
    const Stats hi = stats(n, 8 * n);
    const double spread = std::max({std::abs(lo.plus - hi.plus), std::abs(lo.minus - hi.minus),
                                    std::abs(lo.rho - hi.rho), std::abs(lo.alpha - hi.alpha)});
    rep.add_expected(label, kv("n", n) + ";N=2n..8n", "truncation_spread", spread, 0.0, 1e-12);
    rhos.push_back(st.rho);
  }
  if (n_list.size() > 1 && std::is_sorted(n_list.begin(), n_list.end()) &&
      std::adjacent_find(n_list.begin(), n_list.end()) == n_list.end()) {
    bool increasing = true;
    for (std::size_t i = 1; i < rhos.size(); ++i) increasing = increasing && rhos[i] > rhos[i - 1];
    rep.add_check("A_n vs A_0", "n_list", "rho_increasing", increasing);
  }
  return rep;
}

ConvergenceReport run_floer(std::size_t grid_m, std::size_t s_count, const floer::AProfile& a, std::size_t rho_grid) {
  if (grid_m < 16) fail(ErrorCode::ConfigError, "grid must be at least 16 so that the half grid has 8 elements");
  if (s_count < 8) fail(ErrorCode::ConfigError, "s-count must be at least 8");
  if (rho_grid < 8) fail(ErrorCode::ConfigError, "rho grid must be at least 8");
  ConvergenceReport rep("floer");
  const bool zero_a = a.is_zero();

  // Spectrum against the shooting oracle.
  const std::size_t coarse = grid_m / 2;
  for (double s : {0.5, 1.0, kPi, 5.0}) {
    floer::FloerConfig cfg{a, s, grid_m, floer::Coupling::antilinear};
    const std::vector<double> oracle = floer::shooting_eigenvalues(cfg, {-12.0, 12.0});
    auto worst = [&](std::size_t m) {
      cfg.grid_m = m;
      double err = 0.0;
      for (double e : floer::floer_spectrum(floer::assemble_floer_operator(cfg), 5)) {
        double best = std::numeric_limits<double>::infinity();
        for (double r : oracle) best = std::min(best, std::abs(r - e));
        err = std::max(err, best);
      }
      return err;
    };
    const double fine_err = worst(grid_m);
    const double coarse_err = worst(coarse);
    const std::string label = kv("s", s);
    rep.add_expected(label, kv("M", grid_m), "eig_error_vs_shooting", fine_err, 0.0, 1e-2);
    rep.add(label, kv("M", coarse), "eig_error_vs_shooting", coarse_err);
    rep.add(label, kv("M", coarse) + "->" + std::to_string(grid_m), "error_reduction", coarse_err / fine_err);
    rep.add_check(label, kv("M", coarse) + "->" + std::to_string(grid_m), "error_reduced_2x",
                  coarse_err >= 2.0 * fine_err);
    if (zero_a) {
      double closed = 0.0;
      for (double r : oracle) closed = std::max(closed, std::abs(std::remainder(r - s, kPi)));
      rep.add_expected(label, "oracle", "shooting_vs_closed_form", closed, 0.0, 1e-9);
    }
  }

  // Spectral flow over one loop of the boundary line.
  std::vector<double> s_samples(s_count);
  for (std::size_t j = 0; j < s_count; ++j) s_samples[j] = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(s_count - 1);
  floer::FloerConfig base{a, 0.0, grid_m, floer::Coupling::antilinear};
  const long forward = floer::spectral_flow_over(base, s_samples, 6);
  std::vector<double> reversed(s_samples.rbegin(), s_samples.rend());
  const long backward = floer::spectral_flow_over(base, reversed, 6);
  const std::string flow_param = kv("M", grid_m) + ";" + kv("samples", s_count);
  rep.add_expected("s: 0 -> 2pi", flow_param, "spectral_flow", static_cast<double>(forward), 2.0, 0.0);
  rep.add_expected("s: 2pi -> 0", flow_param, "spectral_flow", static_cast<double>(backward), -2.0, 0.0);

  // Gauge chain on the boundary.
  const floer::FloerConfig gauge_cfg{a, 0.0, 50, floer::Coupling::antilinear};
  const Matrix d0 = floer::boundary_operator(gauge_cfg);
  double form_gap = 0.0;
  double bound_excess = -std::numeric_limits<double>::infinity();
  double transport_gap = 0.0;
  double kernel_gap = 0.0;
  double h1_spread = 0.0;
  double max_nu_per_step = 0.0;
  for (double s : {0.0, 0.7, 2.0, 4.0, 5.9}) {
    for (double ds : {-0.2, 0.05, 0.1, 0.2}) {
      const Matrix p = floer::boundary_projector(s);
      const Matrix q = floer::boundary_projector(s + ds);
      const Matrix u1 = floer::gauge_hat_U(p, q);
      const Matrix u2 = floer::gauge_hat_U_reflection_form(p, q);
      form_gap = std::max(form_gap, (u1 - u2).max_abs());
      const Matrix id = Matrix::identity(4);
      bound_excess = std::max(bound_excess, linalg::operator_norm(u1 - id) -
                                                linalg::operator_norm(q - p) * linalg::operator_norm(2.0 * p - id));
      const linalg::Subspace ker_p = linalg::Subspace::span_of(id - p);
      const linalg::Subspace ker_q = linalg::Subspace::span_of(id - q);
      kernel_gap = std::max(kernel_gap, topology::subspace_gap(floer::transport(u1, ker_p), ker_q));
      max_nu_per_step = std::max(max_nu_per_step, floer::nu_metric(p, q, d0) / std::abs(ds));
      std::vector<double> norms;
      for (std::size_t m : {50u, 100u, 200u}) {
        const floer::CutoffProfile eta = floer::CutoffProfile::smooth_step(m);
        const Matrix u = floer::cutoff_gauge_U(u1, eta, m);
        const linalg::Subspace moved = floer::transport(u, floer::constrained_subspace(s, m));
        transport_gap = std::max(transport_gap, topology::subspace_gap(moved, floer::constrained_subspace(s + ds, m)));
        norms.push_back(floer::cutoff_gauge_h1_norm(u1, eta, m));
      }
      const auto [mn, mx] = std::minmax_element(norms.begin(), norms.end());
      h1_spread = std::max(h1_spread, (*mx - *mn) / *mx);
    }
  }
  const std::string gp = "|s'-s|<=0.2";
  rep.add_expected("gauge", gp, "hatU_forms_max_diff", form_gap, 0.0, 1e-14);
  rep.add_check("gauge", gp, "hatU_bound_holds", bound_excess <= 1e-12);
  rep.add("gauge", gp, "hatU_bound_max_excess", bound_excess);
  rep.add_expected("gauge", gp, "hatU_kernel_transport_gap", kernel_gap, 0.0, 1e-10);
  rep.add_expected("gauge", gp + ";M=50,100,200", "domain_transport_gap", transport_gap, 0.0, 1e-10);
  rep.add_expected("gauge", gp + ";M=50,100,200", "h1_norm_relative_spread", h1_spread, 0.0, 0.1);
  rep.add("gauge", gp, "nu_lipschitz_constant", max_nu_per_step);

  // Neighbor distances of the normalized operators at three step sizes.
  floer::FloerConfig rho_cfg{a, 0.0, rho_grid, floer::Coupling::antilinear};
  std::vector<double> max_rho;
  std::vector<double> max_nu;
  for (std::size_t steps : {8u, 16u, 32u}) {
    std::vector<double> ss(steps + 1);
    for (std::size_t j = 0; j <= steps; ++j) ss[j] = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(steps);
    double r = 0.0, g = 0.0, nu = 0.0, defect = 0.0;
    for (const auto& nb : floer::rho_continuity_profile(rho_cfg, ss)) {
      r = std::max(r, nb.metrics.rho);
      g = std::max(g, nb.metrics.gamma);
      nu = std::max(nu, nb.nu);
      defect = std::max(defect, nb.gauge_defect);
    }
    const std::string param = kv("ds", 2.0 * kPi / static_cast<double>(steps)) + ";" + kv("M", rho_grid);
    rep.add("neighbors", param, "max_rho", r);
    rep.add("neighbors", param, "max_gamma", g);
    rep.add("neighbors", param, "max_nu", nu);
    rep.add("neighbors", param, "max_gauge_defect", defect);
    max_rho.push_back(r);
    max_nu.push_back(nu);
  }
  for (std::size_t i = 1; i < max_rho.size(); ++i) {
    const std::string param = "halving " + std::to_string(i);
    rep.add("neighbors", param, "rho_shrink_factor", max_rho[i - 1] / max_rho[i]);
    rep.add_check("neighbors", param, "rho_shrinks_1.5x", max_rho[i - 1] >= 1.5 * max_rho[i]);
    rep.add_check("neighbors", param, "nu_shrinks", max_nu[i] < max_nu[i - 1]);
  }
  return rep;
}

ConvergenceReport run_graph(std::size_t dim, std::size_t trials, std::uint64_t seed) {
  if (dim == 0) fail(ErrorCode::ConfigError, "graph needs dim >= 1");
  if (trials == 0) fail(ErrorCode::ConfigError, "graph needs trials >= 1");
  ConvergenceReport rep("graph");
  const linalg::Tolerances tol;
  double proj_gap = 0.0, lag_res = 0.0, sym_res = 0.0, sv_res = 0.0, anti = 0.0;
  std::size_t not_lagrangian = 0, kernel_mismatch = 0, nonzero_index = 0, susp_kernel_mismatch = 0;
  std::size_t nonsym_accepted = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t d = 1 + t % dim;
    const std::size_t zeros = std::min(d, t % 3);
    std::vector<double> eig = uniform_spectrum(d, mix(seed, 1, t), -10.0, 10.0);
    for (std::size_t z = 0; z < zeros; ++z) eig[z] = 0.0;
    const SelfAdjointOperator a = gallery::random_with_spectrum(eig, mix(seed, 2, t));
    const lagrangian::SymplecticDoubling dbl(d);
    const linalg::Subspace graph = lagrangian::graph_subspace(a);

    proj_gap = std::max(proj_gap, linalg::operator_norm(graph.projection() - lagrangian::graph_projection_block(a)));
    lag_res = std::max(lag_res, lagrangian::lagrangian_residual(graph, dbl));
    if (!lagrangian::is_lagrangian(graph, dbl)) ++not_lagrangian;

    const auto fp = lagrangian::fredholm_pair_index({dbl.horizontal(), graph}, tol);
    std::size_t zero_count = 0;
    for (double l : a.spectral().eigenvalues) zero_count += std::abs(l) <= tol.rank_tol ? 1 : 0;
    if (fp.dim_ker != zero_count) ++kernel_mismatch;
    if (fp.index != 0) ++nonzero_index;

    Matrix l = gallery::random_gaussian(d, d, mix(seed, 3, t));
    if (d >= 2 && t % 4 == 1)
      for (std::size_t i = 0; i < d; ++i) l(i, d - 1) = l(i, 0);
    const SelfAdjointOperator susp = lagrangian::suspension(l);
    const auto& ev = susp.spectral().eigenvalues;
    for (std::size_t k = 0; k < ev.size(); ++k) sym_res = std::max(sym_res, std::abs(ev[k] + ev[ev.size() - 1 - k]));
    const std::vector<double> sv = linalg::singular_values(l);
    for (std::size_t k = 0; k < d; ++k) sv_res = std::max(sv_res, std::abs(ev[ev.size() - 1 - k] - sv[k]));
    Matrix grading = Matrix::identity(2 * d);
    for (std::size_t i = d; i < 2 * d; ++i) grading(i, i) = -1.0;
    anti = std::max(anti, (grading * susp.matrix() + susp.matrix() * grading).max_abs());
    const std::size_t rank_l = linalg::numerical_rank(l, tol);
    const double scale = std::max(1.0, sv.front());
    std::size_t susp_kernel = 0;
    for (double v : ev) susp_kernel += std::abs(v) <= tol.rank_tol * scale ? 1 : 0;
    if (susp_kernel != 2 * (d - rank_l)) ++susp_kernel_mismatch;

    if (d >= 2 && lagrangian::is_lagrangian(lagrangian::graph_of(gallery::random_gaussian(d, d, mix(seed, 4, t))), dbl)) {
      ++nonsym_accepted;
    }
  }
  const std::string param = kv("trials", trials) + ";" + kv("max_dim", dim);
  rep.add_expected("graph oracles", param, "max_projection_mismatch", proj_gap, 0.0, 1e-10);
  rep.add_expected("graph oracles", param, "max_lagrangian_residual", lag_res, 0.0, 1e-10);
  rep.add_expected("graph oracles", param, "graphs_not_lagrangian", static_cast<double>(not_lagrangian), 0.0, 0.0);
  rep.add_expected("graph oracles", param, "kernel_count_mismatches", static_cast<double>(kernel_mismatch), 0.0, 0.0);
  rep.add_expected("graph oracles", param, "nonzero_pair_indices", static_cast<double>(nonzero_index), 0.0, 0.0);
  rep.add_expected("graph oracles", param, "nonsymmetric_graphs_accepted", static_cast<double>(nonsym_accepted), 0.0, 0.0);
  rep.add_expected("suspension", param, "max_spectral_asymmetry", sym_res, 0.0, 1e-10);
  rep.add_expected("suspension", param, "max_singular_value_mismatch", sv_res, 0.0, 1e-10);
  rep.add_expected("suspension", param, "max_anticommutator", anti, 0.0, 0.0);
  rep.add_expected("suspension", param, "kernel_dim_mismatches", static_cast<double>(susp_kernel_mismatch), 0.0, 0.0);

  // Joint convergence of δ(graphs) and γ.
  constexpr double threshold = 1e-3;
  {
    std::vector<double> deltas, gammas;
    double ratio_dev = 0.0;
    for (std::size_t k = 0; k <= 14; ++k) {
      const std::size_t n = std::size_t{1} << k;
      const auto m = topology::diagonal_profile(gallery::fuglede_diagonal({n, 4 * n}),
                                                gallery::fuglede_diagonal({0, 4 * n}), {});
      deltas.push_back(m.delta_graphs);
      gammas.push_back(m.gamma);
      ratio_dev = std::max(ratio_dev, std::abs(m.gamma / m.delta_graphs - 2.0));
      rep.add("kato fuglede", kv("n", n), "delta_graphs", m.delta_graphs);
      rep.add("kato fuglede", kv("n", n), "gamma", m.gamma);
    }
    rep.add_expected("kato fuglede", "n=2^k;k<=14", "gamma_over_delta_minus_2", ratio_dev, 0.0, 1e-9);
    rep.add("kato fuglede", "n=2^k;k<=14", "first_k_delta_below_1e-3", first_below(deltas, threshold));
    rep.add("kato fuglede", "n=2^k;k<=14", "first_k_gamma_below_1e-3", first_below(gammas, threshold));
    rep.add_check("kato fuglede", "n=2^k;k<=14", "both_below_1e-3_at_last", deltas.back() < threshold && gammas.back() < threshold);
    rep.add_check("kato fuglede", "n=2^k;k<=14", "same_indices_below_1e-3", same_indices_below(deltas, gammas, threshold));
  }
  const std::size_t families = 5;
  std::vector<double> schedule;
  for (int k = 1; k <= 20; ++k) schedule.push_back(std::ldexp(1.0, -k));
  for (std::size_t f = 0; f < families; ++f) {
    const SelfAdjointOperator base = gallery::random_selfadjoint(20, mix(seed, 5, f), {-10.0, 10.0});
    const auto fam = gallery::perturbation_family(base, mix(seed, 6, f), schedule);
    std::vector<double> deltas, gammas;
    double ratio_dev = 0.0;
    for (const Matrix& s : fam.deltas) {
      const auto kp = lagrangian::kato_consistency(SelfAdjointOperator(base.matrix() + s), base);
      deltas.push_back(kp.delta);
      gammas.push_back(kp.gamma);
      ratio_dev = std::max(ratio_dev, std::abs(kp.gamma / kp.delta - 2.0));
    }
    const std::string label = "kato perturbation " + std::to_string(f);
    rep.add(label, "c=2^-k;k<=20", "max_gamma_over_delta_minus_2", ratio_dev);
    rep.add(label, "c=2^-k;k<=20", "first_k_delta_below_1e-3", first_below(deltas, threshold) + 1.0);
    rep.add(label, "c=2^-k;k<=20", "first_k_gamma_below_1e-3", first_below(gammas, threshold) + 1.0);
    rep.add_check(label, "c=2^-k;k<=20", "both_below_1e-3_at_last", deltas.back() < threshold && gammas.back() < threshold);
    rep.add_check(label, "c=2^-k;k<=20", "same_indices_below_1e-3", same_indices_below(deltas, gammas, threshold));
  }
  return rep;
}

ConvergenceReport run_perturb(std::size_t dim, std::span<const std::size_t> exponents, std::uint64_t seed,
                              std::size_t bases) {
  if (dim == 0) fail(ErrorCode::ConfigError, "perturb needs dim >= 1");
  if (bases == 0) fail(ErrorCode::ConfigError, "perturb needs at least one base");
  if (exponents.empty()) fail(ErrorCode::ConfigError, "perturb needs at least one exponent");
  for (std::size_t i = 1; i < exponents.size(); ++i) {
    if (exponents[i] <= exponents[i - 1]) fail(ErrorCode::ConfigError, "perturb exponents must increase");
  }
  std::vector<double> schedule;
  for (std::size_t e : exponents) schedule.push_back(std::ldexp(1.0, -static_cast<int>(e)));

  const ScalarFunction alpha = ScalarFunction::alpha_ramp(0.5);
  std::vector<double> rho_max(schedule.size(), 0.0), gamma_max(schedule.size(), 0.0), alpha_max(schedule.size(), 0.0);
  double bound_res = 0.0;
  double ratio_max = 0.0;
  std::size_t above_at_last = 0;
  bool all_decreasing = true;
  for (std::size_t b = 0; b < bases; ++b) {
    const SelfAdjointOperator base = gallery::random_selfadjoint(dim, mix(seed, 7, b), {-10.0, 10.0});
    const auto fam = gallery::perturbation_family(base, mix(seed, 8, b), schedule);
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < schedule.size(); ++k) {
      const SelfAdjointOperator moved(base.matrix() + fam.deltas[k]);
      bound_res = std::max(bound_res, std::abs(topology::relative_bound_surrogate(base, fam.deltas[k]) - schedule[k]));
      const double rho = topology::riesz_metric(moved, base);
      all_decreasing = all_decreasing && rho < prev;
      prev = rho;
      rho_max[k] = std::max(rho_max[k], rho);
      gamma_max[k] = std::max(gamma_max[k], topology::gap_metric(moved, base));
      alpha_max[k] = std::max(alpha_max[k], topology::function_distance(moved, base, alpha));
      ratio_max = std::max(ratio_max, rho / schedule[k]);
    }
    if (prev > 1e-3) ++above_at_last;
  }
  ConvergenceReport rep("perturb");
  const std::string label = "A+S_n vs A";
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const std::string param = kv("n", exponents[k]) + ";" + kv("c", schedule[k]);
    rep.add(label, param, "max_rho", rho_max[k]);
    rep.add(label, param, "max_gamma", gamma_max[k]);
    rep.add(label, param, "max_alpha_dist", alpha_max[k]);
  }
  const std::string summary = kv("bases", bases) + ";" + kv("dim", dim);
  rep.add_expected(label, summary, "max_surrogate_mismatch", bound_res, 0.0, 1e-10);
  rep.add_check(label, summary, "rho_strictly_decreasing", all_decreasing);
  rep.add(label, summary, "max_rho_over_c", ratio_max);
  const std::string last = summary + ";" + kv("n", exponents.back());
  rep.add_expected(label, last, "max_rho_at_last", rho_max.back(), 0.0, 1e-3);
  rep.add(label, last, "bases_above_1e-3_at_last", static_cast<double>(above_at_last));
  return rep;
}

ConvergenceReport run_identities(std::size_t trials, std::uint64_t seed) {
  if (trials == 0) fail(ErrorCode::ConfigError, "identities needs trials >= 1");
  double plus = 0.0, minus = 0.0, inv_sq = 0.0, defining = 0.0, spectrum = 0.0, commute = 0.0, contraction = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t d = 1 + t % 50;
    const SelfAdjointOperator a = gallery::random_selfadjoint(d, mix(seed, 9, t), {-10.0, 10.0});
    const auto r = topology::resolvent_identity_residuals(a);
    plus = std::max(plus, r.plus);
    minus = std::max(minus, r.minus);
    inv_sq = std::max(inv_sq, r.inverse_square);
    defining = std::max(defining, r.defining_product);
    const Matrix psi = topology::riesz_map(a);
    const auto psi_eig = linalg::sym_eig(psi).eigenvalues;
    const auto& a_eig = a.spectral().eigenvalues;
    for (std::size_t i = 0; i < d; ++i) spectrum = std::max(spectrum, std::abs(psi_eig[i] - topology::riesz_profile(a_eig[i])));
    const double a_norm = std::max(std::abs(a_eig.front()), std::abs(a_eig.back()));
    commute = std::max(commute, (psi * a.matrix() - a.matrix() * psi).max_abs() / (1.0 + a_norm));
    contraction = std::max(contraction, linalg::operator_norm(psi));
  }
  ConvergenceReport rep("identities");
  const std::string param = kv("trials", trials) + ";dim<=50";
  rep.add_expected("resolvent identity", param, "max_residual_plus", plus, 0.0, 1e-10);
  rep.add_expected("resolvent identity", param, "max_residual_minus", minus, 0.0, 1e-10);
  rep.add_expected("resolvent identity", param, "max_residual_inverse_square", inv_sq, 0.0, 1e-10);
  rep.add_expected("resolvent identity", param, "max_residual_defining_product", defining, 0.0, 1e-10);
  rep.add_expected("riesz map", param, "max_spectrum_mismatch", spectrum, 0.0, 1e-12);
  rep.add_expected("riesz map", param, "max_relative_commutator", commute, 0.0, 1e-10);
  rep.add_check("riesz map", param, "contraction", contraction < 1.0);

  // ρ(A_k, A) -> 0 along A_k = Ψ⁻¹((1 - t_k) Ψ(A) + t_k Ψ(B)), t_k = 10^-k.
  const std::size_t sequences = std::min<std::size_t>(trials, 10);
  bool joint = true;
  double worst_gamma_over_rho = 0.0;
  for (std::size_t q = 0; q < sequences; ++q) {
    const std::size_t d = 2 + q % 19;
    const SelfAdjointOperator a = gallery::random_selfadjoint(d, mix(seed, 10, q), {-10.0, 10.0});
    const SelfAdjointOperator b = gallery::random_selfadjoint(d, mix(seed, 11, q), {-10.0, 10.0});
    const Matrix pa = topology::riesz_map(a);
    const Matrix pb = topology::riesz_map(b);
    double rho = 0.0, gamma = 0.0;
    for (int k = 1; k <= 10; ++k) {
      const double tk = std::pow(10.0, -k);
      const SelfAdjointOperator ak = topology::inverse_riesz_map((1.0 - tk) * pa + tk * pb);
      rho = topology::riesz_metric(ak, a);
      gamma = topology::gap_metric(ak, a);
      if (rho > 0.0) worst_gamma_over_rho = std::max(worst_gamma_over_rho, gamma / rho);
    }
    joint = joint && rho < 1e-6 && gamma < 1e-6;
  }
  const std::string seq_param = kv("sequences", sequences) + ";t=10^-k;k<=10";
  rep.add_check("rho implies gamma", seq_param, "both_below_1e-6_at_last", joint);
  rep.add("rho implies gamma", seq_param, "max_gamma_over_rho", worst_gamma_over_rho);
  return rep;
}

ConvergenceReport run_experiment(const ExperimentConfig& cfg) {
  const std::string& e = cfg.experiment;
  if (e == "fuglede") {
    const std::vector<std::size_t> n = cfg.n_list.value_or(std::vector<std::size_t>{1, 2, 4, 8, 16});
    return run_fuglede(n, cfg.dim_factor);
  }
  if (e == "floer") return run_floer(cfg.grid, cfg.s_count, parse_a_spec(cfg.a_spec), cfg.rho_grid);
  if (e == "graph") return run_graph(cfg.dim.value_or(20), cfg.trials, cfg.seed);
  if (e == "perturb") {
    std::vector<std::size_t> ex(10);
    for (std::size_t i = 0; i < 10; ++i) ex[i] = i + 1;
    return run_perturb(cfg.dim.value_or(20), cfg.n_list.value_or(ex), cfg.seed, cfg.trials);
  }
  if (e == "identities") return run_identities(cfg.trials, cfg.seed);
  fail(ErrorCode::ConfigError, "unknown experiment '" + e + "'");
}

}  // namespace fredlab::cli
