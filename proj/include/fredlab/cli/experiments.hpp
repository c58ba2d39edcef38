#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fredlab/floer/floer.hpp"
#include "fredlab/report/report.hpp"

namespace fredlab::cli {

enum class Format { csv, json };

/// Everything one invocation needs. Optional fields fall back to the
/// experiment's own default.
struct ExperimentConfig {
  std::string experiment;
  std::optional<std::vector<std::size_t>> n_list;
  std::size_t dim_factor = 4;
  std::size_t grid = 400;
  std::size_t s_count = 128;
  std::string a_spec = "0";
  std::size_t trials = 100;
  std::uint64_t seed = 7;
  std::optional<std::size_t> dim;
  std::size_t rho_grid = 24;
  Format format = Format::csv;
  std::string out;
  bool strict = false;
};

/// "0", "const:p,q" or "samples:PATH". Throws ConfigError.
floer::AProfile parse_a_spec(const std::string& spec);

/// Fuglede pairs (A_n, A_0) with N = dim_factor·n: resolvent branches, ρ,
/// α and generator distances against their closed forms.
report::ConvergenceReport run_fuglede(std::span<const std::size_t> n_list, std::size_t dim_factor);

/// Floer family: spectrum against the shooting oracle at M and M/2,
/// spectral flow over s ∈ [0, 2π] in both directions, the gauge chain and
/// neighbor distances ρ, γ, ν at three step sizes on a grid of rho_grid elements.
report::ConvergenceReport run_floer(std::size_t grid_m, std::size_t s_count, const floer::AProfile& a,
                                    std::size_t rho_grid = 24);

/// Graph oracles over random symmetric A of dimension 1..dim, then joint
/// convergence of δ(graphs) and γ along the Fuglede family and along
/// perturbation rays.
report::ConvergenceReport run_graph(std::size_t dim, std::size_t trials, std::uint64_t seed);

/// ρ(A + S_n, A) for c_n = 2^{-e} over the exponents e, on `bases` random
/// bases of dimension dim.
report::ConvergenceReport run_perturb(std::size_t dim, std::span<const std::size_t> exponents, std::uint64_t seed,
                                      std::size_t bases);

/// Resolvent identity residuals over random symmetric matrices of dimension
/// up to 50, and joint decay of ρ and γ along Ψ-interpolated sequences.
report::ConvergenceReport run_identities(std::size_t trials, std::uint64_t seed);

/// Validates the configuration (ConfigError) and runs the experiment.
report::ConvergenceReport run_experiment(const ExperimentConfig& cfg);

}  // namespace fredlab::cli
