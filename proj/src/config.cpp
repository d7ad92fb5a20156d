#include "fd/config.hpp"

#include <cstdio>
#include <fstream>

namespace fd {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (key == a) {
        known = true;
        break;
      }
    if (!known) throw ConfigError(path + "." + key + ": unknown field");
  }
}

template <typename T>
void read(const json& j, const char* key, const std::string& path, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(path + "." + key + ": invalid value");
  }
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(static_cast<double>(i) / 20.0);
  return grid;
}

std::vector<double> default_fractions() {
  std::vector<double> f;
  for (int i = 0; i <= 10; ++i) f.push_back(static_cast<double>(i) / 10.0);
  return f;
}

}  // namespace

ExperimentConfig default_config() {
  ExperimentConfig config;
  config.lambda_grid = default_lambda_grid();
  config.network.fractions = default_fractions();
  return config;
}

ExperimentConfig parse_config(const json& j) {
  ExperimentConfig config = default_config();
  reject_unknown(j, "config",
                 {"gains", "powers", "sigma2", "alpha", "efficiency", "csi", "kernel_file",
                  "lottery_size", "lambda_grid", "region", "alpha_sweep", "network", "restarts",
                  "max_sweeps", "seed"});

  if (j.contains("gains")) {
    const auto& g = j.at("gains");
    reject_unknown(g, "config.gains", {"n", "g_min", "g_max", "law", "means"});
    read(g, "n", "config.gains", config.gains.n);
    read(g, "g_min", "config.gains", config.gains.g_min);
    read(g, "g_max", "config.gains", config.gains.g_max);
    read(g, "law", "config.gains", config.gains.law);
    read(g, "means", "config.gains", config.gains.means);
    if (config.gains.law != "exponential" && config.gains.law != "uniform")
      throw ConfigError("config.gains.law: must be 'exponential' or 'uniform'");
  }
  if (j.contains("powers")) {
    const auto& p = j.at("powers");
    reject_unknown(p, "config.powers", {"m", "p_min_db", "p_max_db"});
    read(p, "m", "config.powers", config.powers.m);
    read(p, "p_min_db", "config.powers", config.powers.p_min_db);
    read(p, "p_max_db", "config.powers", config.powers.p_max_db);
  }
  read(j, "sigma2", "config", config.sigma2);
  read(j, "alpha", "config", config.alpha);
  if (!(config.sigma2 > 0.0)) throw ConfigError("config.sigma2: must be > 0");
  if (!(config.alpha >= 0.0)) throw ConfigError("config.alpha: must be >= 0");

  if (j.contains("efficiency")) {
    const auto& e = j.at("efficiency");
    reject_unknown(e, "config.efficiency", {"kind", "r", "l"});
    read(e, "kind", "config.efficiency", config.efficiency.kind);
    read(e, "r", "config.efficiency", config.efficiency.r);
    read(e, "l", "config.efficiency", config.efficiency.l);
    if (config.efficiency.kind != "exp_ratio" && config.efficiency.kind != "packet_success")
      throw ConfigError("config.efficiency.kind: must be 'exp_ratio' or 'packet_success'");
  }

  read(j, "csi", "config", config.csi);
  read(j, "kernel_file", "config", config.kernel_file);
  if (config.csi != "global" && config.csi != "local" && config.csi != "blind" &&
      config.csi != "custom")
    throw ConfigError("config.csi: must be 'global', 'local', 'blind' or 'custom'");
  if (config.csi == "custom" && config.kernel_file.empty())
    throw ConfigError("config.kernel_file: required when csi is 'custom'");

  read(j, "lottery_size", "config", config.lottery_size);
  if (config.lottery_size == 0) throw ConfigError("config.lottery_size: must be >= 1");
  read(j, "lambda_grid", "config", config.lambda_grid);
  if (config.lambda_grid.empty()) throw ConfigError("config.lambda_grid: must be nonempty");
  for (double l : config.lambda_grid)
    if (!(l >= 0.0 && l <= 1.0))
      throw ConfigError("config.lambda_grid: values must lie in [0, 1]");

  if (j.contains("region")) {
    const auto& r = j.at("region");
    reject_unknown(r, "config.region", {"csi_modes"});
    read(r, "csi_modes", "config.region", config.region.csi_modes);
    if (config.region.csi_modes.empty())
      throw ConfigError("config.region.csi_modes: must be nonempty");
  }
  if (j.contains("alpha_sweep")) {
    const auto& a = j.at("alpha_sweep");
    reject_unknown(a, "config.alpha_sweep", {"alphas", "r_values"});
    read(a, "alphas", "config.alpha_sweep", config.alpha_sweep.alphas);
    read(a, "r_values", "config.alpha_sweep", config.alpha_sweep.r_values);
    if (config.alpha_sweep.alphas.empty())
      throw ConfigError("config.alpha_sweep.alphas: must be nonempty");
    for (double a_value : config.alpha_sweep.alphas)
      if (!(a_value > 0.0)) throw ConfigError("config.alpha_sweep.alphas: must be > 0");
  }
  if (j.contains("network")) {
    const auto& n = j.at("network");
    reject_unknown(n, "config.network",
                   {"n_nodes", "n_interactions", "fractions", "replications"});
    read(n, "n_nodes", "config.network", config.network.n_nodes);
    read(n, "n_interactions", "config.network", config.network.n_interactions);
    read(n, "fractions", "config.network", config.network.fractions);
    read(n, "replications", "config.network", config.network.replications);
    for (double f : config.network.fractions)
      if (!(f >= 0.0 && f <= 1.0))
        throw ConfigError("config.network.fractions: values must lie in [0, 1]");
  }
  read(j, "restarts", "config", config.restarts);
  read(j, "max_sweeps", "config", config.max_sweeps);
  read(j, "seed", "config", config.seed);
  if (config.restarts == 0) throw ConfigError("config.restarts: must be >= 1");
  if (config.max_sweeps == 0) throw ConfigError("config.max_sweeps: must be >= 1");
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return parse_config(j);
}

nlohmann::json to_json(const ExperimentConfig& c) {
  json j;
  j["gains"] = {{"n", c.gains.n},
                {"g_min", c.gains.g_min},
                {"g_max", c.gains.g_max},
                {"law", c.gains.law},
                {"means", c.gains.means}};
  j["powers"] = {{"m", c.powers.m},
                 {"p_min_db", c.powers.p_min_db},
                 {"p_max_db", c.powers.p_max_db}};
  j["sigma2"] = c.sigma2;
  j["alpha"] = c.alpha;
  j["efficiency"] = {{"kind", c.efficiency.kind}, {"r", c.efficiency.r}, {"l", c.efficiency.l}};
  j["csi"] = c.csi;
  if (!c.kernel_file.empty()) j["kernel_file"] = c.kernel_file;
  j["lottery_size"] = c.lottery_size;
  j["lambda_grid"] = c.lambda_grid;
  j["region"] = {{"csi_modes", c.region.csi_modes}};
  j["alpha_sweep"] = {{"alphas", c.alpha_sweep.alphas}, {"r_values", c.alpha_sweep.r_values}};
  j["network"] = {{"n_nodes", c.network.n_nodes},
                  {"n_interactions", c.network.n_interactions},
                  {"fractions", c.network.fractions},
                  {"replications", c.network.replications}};
  j["restarts"] = c.restarts;
  j["max_sweeps"] = c.max_sweeps;
  j["seed"] = c.seed;
  return j;
}

std::string config_hash(const ExperimentConfig& config) {
  const std::string canonical = to_json(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

GameModel make_model(const ExperimentConfig& config) {
  return make_model(config, config.alpha, config.efficiency.r);
}

GameModel make_model(const ExperimentConfig& config, double alpha, double rate) {
  const GainGrid grid = build_gain_grid(config.gains.g_min, config.gains.g_max, config.gains.n);
  const PowerGrid powers =
      build_power_grid(config.powers.p_min_db, config.powers.p_max_db, config.powers.m);
  UtilityParams params;
  params.alpha = alpha;
  params.sigma2 = config.sigma2;
  params.phi = config.efficiency.kind == "exp_ratio"
                   ? Efficiency::exp_ratio_from_rate(rate)
                   : Efficiency::packet_success(config.efficiency.l);
  return GameModel(grid, grid, grid, grid, powers, params);
}

StateDistribution make_state_distribution(const ExperimentConfig& config,
                                          const GameModel& model) {
  auto marginal = [&](const GainGrid& grid, double mean) {
    GainLaw law;
    law.kind = config.gains.law == "uniform" ? GainLaw::Kind::Uniform
                                             : GainLaw::Kind::Exponential;
    law.mean = mean;
    return discretized_marginal(grid, law);
  };
  return product_state_distribution(marginal(model.g1(), config.gains.means[0]),
                                    marginal(model.g1p(), config.gains.means[1]),
                                    marginal(model.g2(), config.gains.means[2]),
                                    marginal(model.g2p(), config.gains.means[3]));
}

ObservationStructure make_observation(const ExperimentConfig& config, const GameModel& model,
                                      const std::string& csi_mode) {
  if (csi_mode == "global") return global_csi(model);
  if (csi_mode == "local") return local_csi(model);
  if (csi_mode == "blind") return blind_csi(model);
  if (csi_mode == "custom") {
    std::ifstream in(config.kernel_file);
    if (!in) throw ConfigError("cannot open kernel file: " + config.kernel_file);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ConfigError("kernel file parse error: " + std::string(e.what()));
    }
    reject_unknown(j, "kernel", {"k1", "k2"});
    if (!j.contains("k1") || !j.contains("k2"))
      throw ConfigError("kernel file must contain 'k1' and 'k2'");
    try {
      return product_kernel(j.at("k1").get<std::vector<std::vector<double>>>(),
                            j.at("k2").get<std::vector<std::vector<double>>>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError("kernel file invalid: " + std::string(e.what()));
    }
  }
  throw ConfigError("unknown csi mode: " + csi_mode);
}

Problem make_problem(const ExperimentConfig& config, const std::string& csi_mode) {
  return make_problem(config, csi_mode, config.alpha, config.efficiency.r);
}

Problem make_problem(const ExperimentConfig& config, const std::string& csi_mode, double alpha,
                     double rate) {
  GameModel model = make_model(config, alpha, rate);
  StateDistribution dist = make_state_distribution(config, model);
  ObservationStructure obs = make_observation(config, model, csi_mode);
  return Problem(std::move(model), std::move(dist), std::move(obs),
                 uniform_lottery(config.lottery_size));
}

}  // namespace fd
