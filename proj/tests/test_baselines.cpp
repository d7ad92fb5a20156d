#include <doctest.h>

#include <cmath>

#include "fd/baselines.hpp"
#include "test_helpers.hpp"

using namespace fd;
using fd::testing::tiny_problem;

TEST_CASE("constant profile utilities match the policy evaluator") {
  const Problem problem = tiny_problem("global", 2, 2);
  for (std::size_t a1 = 0; a1 < problem.num_actions(); ++a1)
    for (std::size_t a2 = 0; a2 < problem.num_actions(); ++a2) {
      const auto f1 = DecisionPolicy::constant(1, problem.signals(1), 1,
                                               static_cast<std::uint32_t>(a1));
      const auto f2 = DecisionPolicy::constant(2, problem.signals(2), 1,
                                               static_cast<std::uint32_t>(a2));
      const auto [pu1, pu2] = expected_utilities(problem, f1, f2);
      const auto [bu1, bu2] = expected_profile_utilities(problem, problem.model().action_at(a1),
                                                         problem.model().action_at(a2));
      CHECK(bu1 == doctest::Approx(pu1).epsilon(1e-12));
      CHECK(bu2 == doctest::Approx(pu2).epsilon(1e-12));
    }
}

TEST_CASE("hub equilibrium is the all-minimum-power profile") {
  const Problem problem = tiny_problem("local", 2, 2);
  const auto ne = hub_nash(problem);
  CHECK(ne.a1.ip == 0);
  CHECK(ne.a1.ipp == 0);
  CHECK(ne.a2.ip == 0);
  CHECK(ne.a2.ipp == 0);
  const auto [u1, u2] = expected_profile_utilities(problem, Action{0, 0}, Action{0, 0});
  CHECK(ne.u1 == u1);
  CHECK(ne.u2 == u2);
  CHECK(ne.converged);
}

TEST_CASE("large energy prices push the one-shot equilibrium to all-min") {
  // alpha large enough that any transmit power costs more than it can earn
  const Problem problem = tiny_problem("global", 2, 2, 1, 50.0);
  const auto ne = one_shot_nash(problem, 50);
  CHECK(ne.converged);
  CHECK(ne.a1.ip == 0);
  CHECK(ne.a1.ipp == 0);
  CHECK(ne.a2.ip == 0);
  CHECK(ne.a2.ipp == 0);
  CHECK(ne.u1 == hub_nash(problem).u1);
  CHECK(ne.u2 == hub_nash(problem).u2);
}

TEST_CASE("a converged one-shot profile is a mutual best response") {
  for (double alpha : {0.01, 0.1, 1.0}) {
    const Problem problem = tiny_problem("local", 2, 3, 1, alpha);
    const auto ne = one_shot_nash(problem, 100);
    if (!ne.converged) continue;
    const std::size_t a1 = problem.model().action_index(ne.a1);
    const std::size_t a2 = problem.model().action_index(ne.a2);
    const auto [u1, u2] = expected_profile_utilities(problem, ne.a1, ne.a2);
    CHECK(ne.u1 == doctest::Approx(u1));
    CHECK(ne.u2 == doctest::Approx(u2));
    // no unilateral constant deviation improves either node
    for (std::size_t a = 0; a < problem.num_actions(); ++a) {
      const auto [d1, unused2] = expected_profile_utilities(
          problem, problem.model().action_at(a), ne.a2);
      CHECK(d1 <= ne.u1 + 1e-12);
      const auto [unused1, d2] = expected_profile_utilities(problem, ne.a1,
                                                            problem.model().action_at(a));
      CHECK(d2 <= ne.u2 + 1e-12);
    }
    (void)a1;
    (void)a2;
  }
}

TEST_CASE("single-action grids trivially converge") {
  const Problem problem = tiny_problem("global", 2, 1);
  const auto ne = one_shot_nash(problem, 10);
  CHECK(ne.converged);
  CHECK(ne.iterations == 1);
  CHECK(ne.u1 == hub_nash(problem).u1);
}

TEST_CASE("max_iters validation") {
  const Problem problem = tiny_problem("global", 2, 2);
  CHECK_THROWS_AS(one_shot_nash(problem, 0), std::invalid_argument);
}

TEST_CASE("the hub point is dominated by the optimal weighted solve") {
  const Problem problem = tiny_problem("local", 2, 2, 1, 0.05);
  const auto ne = hub_nash(problem);
  const auto [best, index] = solve_lambda(problem, 0.5, 4, 11, 100);
  (void)index;
  CHECK(best.w >= 0.5 * (ne.u1 + ne.u2) - 1e-12);
}
