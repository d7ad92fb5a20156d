#include "fd/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace fd {

GainGrid build_gain_grid(double g_min, double g_max, std::size_t n) {
  if (n == 0) throw std::invalid_argument("gain grid: n must be >= 1");
  if (!(g_min > 0.0)) throw std::invalid_argument("gain grid: g_min must be > 0");
  if (g_min > g_max) throw std::invalid_argument("gain grid: g_min > g_max");
  if (n == 1 && g_min != g_max)
    throw std::invalid_argument("gain grid: n = 1 requires g_min == g_max");

  GainGrid grid;
  grid.levels.resize(n);
  if (n == 1) {
    grid.levels[0] = g_min;
    return grid;
  }
  const double step = (g_max - g_min) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k)
    grid.levels[k] = g_min + step * static_cast<double>(k);
  grid.levels.front() = g_min;
  grid.levels.back() = g_max;
  return grid;
}

PowerGrid build_power_grid(double p_min_db, double p_max_db, std::size_t m) {
  if (m == 0) throw std::invalid_argument("power grid: m must be >= 1");
  if (p_min_db > p_max_db) throw std::invalid_argument("power grid: p_min_db > p_max_db");
  if (m == 1 && p_min_db != p_max_db)
    throw std::invalid_argument("power grid: m = 1 requires p_min_db == p_max_db");

  PowerGrid grid;
  grid.levels_db.resize(m);
  grid.levels.resize(m);
  if (m == 1) {
    grid.levels_db[0] = p_min_db;
  } else {
    const double step = (p_max_db - p_min_db) / static_cast<double>(m - 1);
    for (std::size_t k = 0; k < m; ++k)
      grid.levels_db[k] = p_min_db + step * static_cast<double>(k);
    grid.levels_db.front() = p_min_db;
    grid.levels_db.back() = p_max_db;
  }
  for (std::size_t k = 0; k < m; ++k)
    grid.levels[k] = std::pow(10.0, grid.levels_db[k] / 10.0);
  return grid;
}

}  // namespace fd
