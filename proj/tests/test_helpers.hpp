#pragma once

#include <vector>

#include "fd/optimizer.hpp"

namespace fd::testing {

// tiny symmetric model: shared gain grid, shared power grid
inline GameModel tiny_model(std::size_t n_gains = 2, std::size_t m_powers = 2,
                            double alpha = 0.1, double sigma2 = 1.0, double g_min = 1.0,
                            double g_max = 2.0, double p_min_db = -10.0,
                            double p_max_db = 0.0) {
  UtilityParams params;
  params.alpha = alpha;
  params.sigma2 = sigma2;
  params.phi = Efficiency::exp_ratio(1.0);
  const GainGrid grid = build_gain_grid(g_min, n_gains == 1 ? g_min : g_max, n_gains);
  return GameModel(grid, grid, grid, grid,
                   build_power_grid(p_min_db, m_powers == 1 ? p_min_db : p_max_db, m_powers),
                   params);
}

inline StateDistribution uniform_dist(const GameModel& model) {
  auto uniform = [](std::size_t n) {
    return std::vector<double>(n, 1.0 / static_cast<double>(n));
  };
  return product_state_distribution(uniform(model.g1().size()), uniform(model.g1p().size()),
                                    uniform(model.g2().size()), uniform(model.g2p().size()));
}

inline Problem tiny_problem(const std::string& csi = "global", std::size_t n_gains = 2,
                            std::size_t m_powers = 2, std::size_t lottery = 1,
                            double alpha = 0.1) {
  GameModel model = tiny_model(n_gains, m_powers, alpha);
  StateDistribution dist = uniform_dist(model);
  ObservationStructure obs = csi == "global"  ? global_csi(model)
                             : csi == "local" ? local_csi(model)
                                              : blind_csi(model);
  return Problem(std::move(model), std::move(dist), std::move(obs), uniform_lottery(lottery));
}

}  // namespace fd::testing
