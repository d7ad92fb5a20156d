#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "fd/baselines.hpp"
#include "fd/config.hpp"
#include "fd/network.hpp"
#include "fd/optimizer.hpp"

namespace fd {

struct RegionReport {
  std::vector<std::pair<std::string, RegionResult>> regions;  // per csi mode
  NashBaseline ne;
};

struct AlphaSweepRow {
  double r = 0.0;
  double alpha = 0.0;
  double u_advanced = 0.0;
  double u_ne = 0.0;
  bool converged = true;
};

struct AlphaSweepReport {
  std::vector<AlphaSweepRow> rows;
};

struct NetworkReport {
  SolveResult advanced;
  NashBaseline ne;
  std::vector<FractionStats> stats;
  LinearFit fit;
};

struct SolveReport {
  std::string csi_mode;
  SolveResult result;
  std::size_t restart_index = 0;
};

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  double oracle_match_rate = 0.0;  // fraction of suite cases where BR hits the optimum
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Utility-region experiment: Pareto sweep per CSI mode plus the equilibrium
// point; writes region.csv, hull.csv, summary.json, timings.json.
RegionReport run_region(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                        unsigned threads = 1);

// Energy-price sweep: lambda = 0.5 local-CSI solve and the equilibrium
// baseline for every (r, alpha); writes alpha_sweep.csv, summary.json,
// timings.json.
AlphaSweepReport run_alpha_sweep(const ExperimentConfig& config,
                                 const std::filesystem::path& out_dir, unsigned threads = 1);

// Ad hoc network experiment: mixed population sweep over advanced-node
// fractions; writes network.csv, summary.json, timings.json.
NetworkReport run_network(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                          unsigned threads = 1);

// Single-lambda solve under the config's CSI mode; writes solve.csv,
// summary.json, timings.json.
SolveReport run_solve(const ExperimentConfig& config, double lambda,
                      const std::filesystem::path& out_dir, unsigned threads = 1);

// Desk-scale verification: normalization of the induced joint, best response
// vs. the exhaustive oracle, monotone convergence, vertex sufficiency, and
// information ordering.
VerifyReport run_oracle_suite(std::uint64_t seed, unsigned threads = 1);

// A seeded small random instance used by the verification suite and tests.
Problem random_desk_problem(std::uint64_t seed, const std::string& csi_mode,
                            std::size_t max_gain_levels = 3, std::size_t max_power_levels = 3,
                            std::size_t max_lottery = 2);

}  // namespace fd
