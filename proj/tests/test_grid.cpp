#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fd/grid.hpp"

using namespace fd;

TEST_CASE("gain grid matches the default simulation setup") {
  const GainGrid grid = build_gain_grid(0.01, 10.0, 20);
  REQUIRE(grid.size() == 20);
  CHECK(grid[0] == 0.01);
  CHECK(grid[19] == 10.0);
  const double step = (10.0 - 0.01) / 19.0;
  CHECK(grid[1] - grid[0] == doctest::Approx(step).epsilon(1e-12));
  CHECK(step == doctest::Approx(0.52578947368421).epsilon(1e-10));
  for (std::size_t k = 1; k < grid.size(); ++k) CHECK(grid[k] > grid[k - 1]);
}

TEST_CASE("degenerate and midpoint gain grids") {
  const GainGrid single = build_gain_grid(1.0, 1.0, 1);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == 1.0);

  const GainGrid three = build_gain_grid(1.0, 3.0, 3);
  CHECK(three[0] == 1.0);
  CHECK(three[1] == doctest::Approx(2.0));
  CHECK(three[2] == 3.0);
}

TEST_CASE("gain grid rejects bad arguments") {
  CHECK_THROWS_AS(build_gain_grid(0.0, 1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_gain_grid(-1.0, 1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_gain_grid(2.0, 1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_gain_grid(1.0, 2.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_gain_grid(1.0, 2.0, 1), std::invalid_argument);
}

TEST_CASE("power grid is dB-uniform with exact linear endpoints") {
  const PowerGrid grid = build_power_grid(-20.0, 20.0, 25);
  REQUIRE(grid.size() == 25);
  CHECK(grid.levels_db[1] - grid.levels_db[0] == doctest::Approx(40.0 / 24.0).epsilon(1e-12));
  CHECK(grid[0] == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(grid[24] == doctest::Approx(100.0).epsilon(1e-12));
  for (std::size_t k = 0; k < grid.size(); ++k)
    CHECK(grid[k] == doctest::Approx(std::pow(10.0, grid.levels_db[k] / 10.0)).epsilon(1e-15));
}

TEST_CASE("small power grids") {
  const PowerGrid three = build_power_grid(-20.0, 20.0, 3);
  CHECK(three[0] == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(three[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(three[2] == doctest::Approx(100.0).epsilon(1e-12));

  const PowerGrid one = build_power_grid(0.0, 0.0, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == 1.0);

  CHECK_THROWS_AS(build_power_grid(0.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_power_grid(1.0, 0.0, 2), std::invalid_argument);
}
