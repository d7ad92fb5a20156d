// Command-line driver: utility-region, alpha-sweep and network experiments
// for the power-controlled forwarder's dilemma, plus a single-lambda solver
// and the desk-scale verification suite.

#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fd/experiments.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  unsigned threads = 1;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config_path, "JSON config file (defaults used when absent)");
  cmd->add_option("--seed", opt.seed, "override the config seed");
  cmd->add_option("--out", opt.out_dir, "output directory");
  cmd->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
}

fd::ExperimentConfig load(const CommonOptions& opt) {
  fd::ExperimentConfig config =
      opt.config_path.empty() ? fd::default_config() : fd::load_config_file(opt.config_path);
  if (opt.seed) config.seed = *opt.seed;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"power control policies for the forwarder's dilemma with partial channel knowledge"};
  app.require_subcommand(1);

  CommonOptions region_opt, alpha_opt, network_opt, solve_opt, verify_opt;
  double lambda = 0.5;

  CLI::App* region = app.add_subcommand("region", "achievable utility region (Pareto sweep)");
  add_common(region, region_opt);
  CLI::App* alpha = app.add_subcommand("alpha-sweep", "utility against 1/alpha");
  add_common(alpha, alpha_opt);
  CLI::App* network = app.add_subcommand("network", "mixed-population ad hoc network sweep");
  add_common(network, network_opt);
  CLI::App* solve = app.add_subcommand("solve", "single weighted-utility solve");
  add_common(solve, solve_opt);
  solve->add_option("--lambda", lambda, "weight on node 1's utility")
      ->check(CLI::Range(0.0, 1.0));
  CLI::App* verify = app.add_subcommand("verify", "desk-scale oracle and property suite");
  add_common(verify, verify_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (region->parsed()) {
      fd::run_region(load(region_opt), region_opt.out_dir, region_opt.threads);
    } else if (alpha->parsed()) {
      fd::run_alpha_sweep(load(alpha_opt), alpha_opt.out_dir, alpha_opt.threads);
    } else if (network->parsed()) {
      fd::run_network(load(network_opt), network_opt.out_dir, network_opt.threads);
    } else if (solve->parsed()) {
      fd::run_solve(load(solve_opt), lambda, solve_opt.out_dir, solve_opt.threads);
    } else if (verify->parsed()) {
      const fd::ExperimentConfig config = load(verify_opt);
      const fd::VerifyReport report = fd::run_oracle_suite(config.seed, verify_opt.threads);
      for (const auto& check : report.checks)
        std::printf("[%s] %s%s%s (%.2fs)\n", check.pass ? "PASS" : "FAIL", check.name.c_str(),
                    check.detail.empty() ? "" : ": ", check.detail.c_str(), check.seconds);
      std::printf("oracle match rate: %.3f\n", report.oracle_match_rate);
      if (!report.all_pass()) return 2;
    }
  } catch (const fd::GuardExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const fd::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
