#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fd/optimizer.hpp"

namespace fd {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GainConfig {
  std::size_t n = 20;
  double g_min = 0.01;
  double g_max = 10.0;
  std::string law = "exponential";  // exponential | uniform
  std::array<double, 4> means{1.0, 1.9, 1.0, 1.9};  // order g1, g1', g2, g2'
};

struct PowerConfig {
  std::size_t m = 25;
  double p_min_db = -20.0;
  double p_max_db = 20.0;
};

struct EfficiencyConfig {
  std::string kind = "exp_ratio";  // exp_ratio | packet_success
  double r = 1.0;                  // spectral efficiency for exp_ratio
  int l = 1;                       // symbols per packet for packet_success
};

struct AlphaSweepConfig {
  std::vector<double> alphas{10.0, 1.0, 0.1, 0.01};
  std::vector<double> r_values{1.0, 3.0};
};

struct NetworkConfig {
  std::size_t n_nodes = 50;
  std::size_t n_interactions = 25;
  std::vector<double> fractions;  // default {0, 0.1, ..., 1}
  std::size_t replications = 10;
};

struct RegionConfig {
  std::vector<std::string> csi_modes{"global", "local"};
};

struct ExperimentConfig {
  GainConfig gains;
  PowerConfig powers;
  double sigma2 = 1.0;
  double alpha = 0.1;
  EfficiencyConfig efficiency;
  std::string csi = "local";  // global | local | blind | custom
  std::string kernel_file;    // required when csi == "custom"
  std::size_t lottery_size = 1;
  std::vector<double> lambda_grid;  // default {0, 0.05, ..., 1}
  RegionConfig region;
  AlphaSweepConfig alpha_sweep;
  NetworkConfig network;
  std::size_t restarts = 8;
  std::size_t max_sweeps = 100;
  std::uint64_t seed = 1;
};

// The built-in defaults (the standard simulation setup).
ExperimentConfig default_config();

// Strict parse: unknown fields are rejected with their path; missing fields
// fall back to defaults.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path);

nlohmann::json to_json(const ExperimentConfig& config);

// FNV-1a of the canonical serialization, as a 16-digit hex string.
std::string config_hash(const ExperimentConfig& config);

// Model/problem construction from a config; alpha and the efficiency rate
// can be overridden for sweeps.
GameModel make_model(const ExperimentConfig& config);
GameModel make_model(const ExperimentConfig& config, double alpha, double rate);
StateDistribution make_state_distribution(const ExperimentConfig& config,
                                          const GameModel& model);
ObservationStructure make_observation(const ExperimentConfig& config, const GameModel& model,
                                      const std::string& csi_mode);
Problem make_problem(const ExperimentConfig& config, const std::string& csi_mode);
Problem make_problem(const ExperimentConfig& config, const std::string& csi_mode, double alpha,
                     double rate);

}  // namespace fd
