#include <doctest.h>

#include <cmath>

#include "fd/rng.hpp"
#include "fd/stochastic.hpp"
#include "test_helpers.hpp"

using namespace fd;
using fd::testing::tiny_model;

TEST_CASE("exponential marginal over a two-level grid") {
  GainGrid grid;
  grid.levels = {1.0, 2.0};
  GainLaw law;
  law.kind = GainLaw::Kind::Exponential;
  law.mean = 1.0;
  const auto pmf = discretized_marginal(grid, law);
  // Voronoi cells [0, 1.5) and [1.5, inf)
  CHECK(pmf[0] == doctest::Approx(1.0 - std::exp(-1.5)).epsilon(1e-12));
  CHECK(pmf[1] == doctest::Approx(std::exp(-1.5)).epsilon(1e-12));
}

TEST_CASE("degenerate and uniform marginals") {
  GainGrid single;
  single.levels = {5.0};
  GainLaw law;
  law.kind = GainLaw::Kind::Exponential;
  law.mean = 2.0;
  CHECK(discretized_marginal(single, law) == std::vector<double>{1.0});

  GainGrid grid = build_gain_grid(0.5, 4.0, 8);
  GainLaw uniform;
  uniform.kind = GainLaw::Kind::Uniform;
  for (double p : discretized_marginal(grid, uniform)) CHECK(p == doctest::Approx(0.125));
}

TEST_CASE("explicit marginal validation") {
  GainGrid grid = build_gain_grid(1.0, 2.0, 2);
  GainLaw law;
  law.kind = GainLaw::Kind::Explicit;
  law.pmf = {0.25, 0.75};
  CHECK(discretized_marginal(grid, law) == law.pmf);

  law.pmf = {0.5, 0.6};
  CHECK_THROWS_AS(discretized_marginal(grid, law), std::invalid_argument);
  law.pmf = {-0.1, 1.1};
  CHECK_THROWS_AS(discretized_marginal(grid, law), std::invalid_argument);
  law.pmf = {1.0};
  CHECK_THROWS_AS(discretized_marginal(grid, law), std::invalid_argument);
}

TEST_CASE("discretized exponential mean lands within one grid step") {
  const GainGrid grid = build_gain_grid(0.01, 10.0, 20);
  const double step = grid[1] - grid[0];
  for (double mean : {0.5, 1.0, 1.9, 2.0}) {
    GainLaw law;
    law.kind = GainLaw::Kind::Exponential;
    law.mean = mean;
    const auto pmf = discretized_marginal(grid, law);
    double got = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) got += pmf[k] * grid[k];
    CHECK(std::abs(got - mean) < step);
  }
}

TEST_CASE("product state distribution") {
  SUBCASE("point mass") {
    const auto d = product_state_distribution({1.0}, {1.0}, {1.0}, {1.0});
    CHECK(d.mass(ChannelState{0, 0, 0, 0}) == 1.0);
  }
  SUBCASE("two states with mass one half") {
    const auto d = product_state_distribution({0.5, 0.5}, {1.0}, {1.0}, {1.0});
    CHECK(d.mass(ChannelState{0, 0, 0, 0}) == 0.5);
    CHECK(d.mass(ChannelState{1, 0, 0, 0}) == 0.5);
  }
  SUBCASE("sixteen uniform states") {
    const std::vector<double> half{0.5, 0.5};
    const auto d = product_state_distribution(half, half, half, half);
    const GameModel model = tiny_model(2, 2);
    const auto rho = d.flatten(model);
    REQUIRE(rho.size() == 16);
    double total = 0.0;
    for (double p : rho) {
      CHECK(p == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
      total += p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("invalid marginals rejected") {
    CHECK_THROWS_AS(product_state_distribution({0.5, 0.4}, {1.0}, {1.0}, {1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(product_state_distribution({}, {1.0}, {1.0}, {1.0}), std::invalid_argument);
  }
}

TEST_CASE("global CSI is the identity observation") {
  const GameModel model = tiny_model(2, 2);
  const auto obs = global_csi(model);
  CHECK(obs.s1_space.cardinality == 16);
  CHECK(obs.s2_space.cardinality == 16);
  for (std::size_t x0 = 0; x0 < model.num_states(); ++x0) {
    CHECK(obs.h1[x0] == x0);
    CHECK(obs.h2[x0] == x0);
    for (std::size_t s1 = 0; s1 < 16; ++s1)
      for (std::size_t s2 = 0; s2 < 16; ++s2)
        CHECK(obs.joint(x0, s1, s2) == ((s1 == x0 && s2 == x0) ? 1.0 : 0.0));
  }
}

TEST_CASE("local CSI projects onto the node's own link gains") {
  const GameModel model = tiny_model(2, 2);
  const auto obs = local_csi(model);
  CHECK(obs.s1_space.cardinality == 4);
  CHECK(obs.s2_space.cardinality == 4);
  // two states differing only in (g2, g2') give the same signal to node 1
  const ChannelState a{1, 0, 0, 0};
  const ChannelState b{1, 0, 1, 1};
  CHECK(obs.h1[model.state_index(a)] == obs.h1[model.state_index(b)]);
  CHECK(obs.h2[model.state_index(a)] != obs.h2[model.state_index(b)]);

  // full-scale cardinality: N = 20 gives 400 local signals
  const GameModel big = tiny_model(20, 2);
  CHECK(local_csi(big).s1_space.cardinality == 400);
}

TEST_CASE("global CSI refines local CSI") {
  const GameModel model = tiny_model(2, 2);
  const auto global = global_csi(model);
  const auto local = local_csi(model);
  // the local signal must be a function of the global signal
  std::vector<int> mapped(global.s1_space.cardinality, -1);
  for (std::size_t x0 = 0; x0 < model.num_states(); ++x0) {
    const auto g = global.h1[x0];
    if (mapped[g] == -1)
      mapped[g] = static_cast<int>(local.h1[x0]);
    else
      CHECK(mapped[g] == static_cast<int>(local.h1[x0]));
  }
}

TEST_CASE("joint kernel normalizes for every structure and state") {
  const GameModel model = tiny_model(2, 2);
  Rng rng(3);
  std::vector<std::vector<double>> k1, k2;
  for (std::size_t x0 = 0; x0 < model.num_states(); ++x0) {
    std::vector<double> r1(3), r2(2);
    double s1 = 0.0, s2 = 0.0;
    for (auto& v : r1) s1 += v = rng.next_exponential();
    for (auto& v : r2) s2 += v = rng.next_exponential();
    for (auto& v : r1) v /= s1;
    for (auto& v : r2) v /= s2;
    k1.push_back(r1);
    k2.push_back(r2);
  }
  for (const auto& obs : {global_csi(model), local_csi(model), blind_csi(model),
                          product_kernel(k1, k2)}) {
    for (std::size_t x0 = 0; x0 < model.num_states(); ++x0) {
      double total = 0.0;
      for (std::size_t s1 = 0; s1 < obs.s1_space.cardinality; ++s1)
        for (std::size_t s2 = 0; s2 < obs.s2_space.cardinality; ++s2)
          total += obs.joint(x0, s1, s2);
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("product kernel special cases") {
  const GameModel model = tiny_model(2, 1);
  const std::size_t n = model.num_states();

  SUBCASE("identity rows equal global CSI") {
    std::vector<std::vector<double>> k(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) k[i][i] = 1.0;
    const auto kernel = product_kernel(k, k);
    const auto global = global_csi(model);
    for (std::size_t x0 = 0; x0 < n; ++x0)
      for (std::size_t s1 = 0; s1 < n; ++s1)
        for (std::size_t s2 = 0; s2 < n; ++s2)
          CHECK(kernel.joint(x0, s1, s2) == global.joint(x0, s1, s2));
  }
  SUBCASE("constant rows carry no information") {
    std::vector<std::vector<double>> k(n, std::vector<double>{0.3, 0.7});
    const auto kernel = product_kernel(k, k);
    for (std::size_t x0 = 1; x0 < n; ++x0)
      for (std::size_t s = 0; s < 2; ++s) CHECK(kernel.k1[x0][s] == kernel.k1[0][s]);
  }
  SUBCASE("binary symmetric flip") {
    std::vector<std::vector<double>> k{{0.9, 0.1}, {0.1, 0.9}};
    const auto kernel = product_kernel(k, k);
    CHECK(kernel.joint(0, 0, 0) == doctest::Approx(0.81));
    CHECK(kernel.joint(0, 1, 1) == doctest::Approx(0.01));
  }
  SUBCASE("non-stochastic rows rejected") {
    std::vector<std::vector<double>> bad(n, std::vector<double>{0.5, 0.6});
    CHECK_THROWS_AS(product_kernel(bad, bad), std::invalid_argument);
  }
}

TEST_CASE("uniform lottery") {
  CHECK(uniform_lottery(1).pmf == std::vector<double>{1.0});
  const auto four = uniform_lottery(4);
  for (double p : four.pmf) CHECK(p == 0.25);
  CHECK_THROWS_AS(uniform_lottery(0), std::invalid_argument);
}

TEST_CASE("signal descriptions decode") {
  const GameModel model = tiny_model(2, 2);
  const auto local = local_csi(model);
  CHECK(local.s1_space.describe(model, 3) == "(g[1],g'[1])");
  const auto blind = blind_csi(model);
  CHECK(blind.s1_space.describe(model, 0) == "none");
}
