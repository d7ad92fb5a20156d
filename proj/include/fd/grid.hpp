#pragma once

#include <cstddef>
#include <vector>

namespace fd {

// Discrete set of channel power gains, strictly increasing.
struct GainGrid {
  std::vector<double> levels;

  std::size_t size() const { return levels.size(); }
  double operator[](std::size_t k) const { return levels[k]; }
  double min() const { return levels.front(); }
  double max() const { return levels.back(); }
};

// Discrete set of transmit powers, uniform in dB; linear values kept alongside.
struct PowerGrid {
  std::vector<double> levels;     // linear
  std::vector<double> levels_db;  // 10*log10(levels)

  std::size_t size() const { return levels.size(); }
  double operator[](std::size_t k) const { return levels[k]; }
  double min() const { return levels.front(); }
  double max() const { return levels.back(); }
};

// Uniform grid over [g_min, g_max] with n levels and exact endpoints.
// Throws std::invalid_argument on g_min <= 0, g_min > g_max, n == 0,
// or n == 1 with g_min != g_max.
GainGrid build_gain_grid(double g_min, double g_max, std::size_t n);

// dB-uniform grid from p_min_db to p_max_db with m levels; linear values
// are 10^(dB/10). Throws std::invalid_argument on p_min_db > p_max_db or
// m == 0 (m == 1 requires p_min_db == p_max_db).
PowerGrid build_power_grid(double p_min_db, double p_max_db, std::size_t m);

}  // namespace fd
