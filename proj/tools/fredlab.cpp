// fredlab: runs one experiment and writes its report as CSV or JSON.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fredlab/cli/experiments.hpp"
#include "fredlab/error.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTolerance = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

bool is_config_error(fredlab::ErrorCode c) {
  using fredlab::ErrorCode;
  return c == ErrorCode::ConfigError || c == ErrorCode::InvalidConfig || c == ErrorCode::InvalidSpec;
}

}  // namespace

int main(int argc, char** argv) {
  using fredlab::cli::ExperimentConfig;
  using fredlab::cli::Format;

  CLI::App app{"Operator topology experiments: gap and Riesz metrics, graphs, Floer boundary value families"};
  ExperimentConfig cfg;
  std::vector<std::size_t> n_list;
  std::size_t dim = 0;
  std::string format = "csv";

  app.add_option("experiment", cfg.experiment, "fuglede | floer | graph | perturb | identities")
      ->required()
      ->check(CLI::IsMember({"fuglede", "floer", "graph", "perturb", "identities"}));
  app.add_option("--n-list", n_list, "fuglede: flipped indices n; perturb: exponents e of c = 2^-e")->delimiter(',');
  app.add_option("--dim-factor", cfg.dim_factor, "fuglede truncation N = dim-factor * n")->capture_default_str();
  app.add_option("--grid", cfg.grid, "floer: number of elements M")->capture_default_str();
  app.add_option("--s-count", cfg.s_count, "floer: samples of s in [0, 2pi]")->capture_default_str();
  app.add_option("--a", cfg.a_spec, "floer: a(t) as 0, const:p,q or samples:PATH")->capture_default_str();
  app.add_option("--trials", cfg.trials, "random trials (perturb: number of bases)")->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--dim", dim, "graph: largest dimension; perturb: base dimension (default 20)");
  app.add_option("--rho-grid", cfg.rho_grid, "floer: elements for the dense neighbor-distance sweep")->capture_default_str();
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--out", cfg.out, "output file (default: standard output)");
  app.add_flag("--strict", cfg.strict, "exit 1 when a row exceeds its tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  if (!n_list.empty()) cfg.n_list = n_list;
  if (app.count("--dim") > 0) cfg.dim = dim;
  cfg.format = format == "json" ? Format::json : Format::csv;

  try {
    const fredlab::report::ConvergenceReport rep = fredlab::cli::run_experiment(cfg);
    std::ostringstream text;
    if (cfg.format == Format::json) {
      fredlab::report::write_json(text, rep);
    } else {
      fredlab::report::write_csv(text, rep);
    }
    if (cfg.out.empty()) {
      std::cout << text.str();
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) {
        std::cerr << "fredlab: cannot write '" << cfg.out << "'\n";
        return kExitConfig;
      }
      file << text.str();
    }
    const std::size_t bad = rep.violations();
    if (bad > 0) std::cerr << "fredlab: " << bad << " row(s) outside tolerance\n";
    return cfg.strict && bad > 0 ? kExitTolerance : kExitOk;
  } catch (const fredlab::Error& e) {
    std::cerr << "fredlab: " << e.what() << '\n';
    return is_config_error(e.code()) ? kExitConfig : kExitNumerical;
  }
}
