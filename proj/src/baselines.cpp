#include "fd/baselines.hpp"

#include <limits>
#include <stdexcept>

namespace fd {

std::pair<double, double> expected_profile_utilities(const Problem& problem, const Action& a1,
                                                     const Action& a2) {
  const auto& rho = problem.rho();
  const std::size_t fa1 = problem.model().action_index(a1);
  const std::size_t fa2 = problem.model().action_index(a2);
  double u1 = 0.0, u2 = 0.0;
  for (std::size_t x0 = 0; x0 < problem.num_states(); ++x0) {
    if (rho[x0] == 0.0) continue;
    u1 += rho[x0] * problem.utility(1, x0, fa1, fa2);
    u2 += rho[x0] * problem.utility(2, x0, fa1, fa2);
  }
  return {u1, u2};
}

NashBaseline hub_nash(const Problem& problem) {
  NashBaseline ne;
  ne.a1 = Action{0, 0};
  ne.a2 = Action{0, 0};
  auto [u1, u2] = expected_profile_utilities(problem, ne.a1, ne.a2);
  ne.u1 = u1;
  ne.u2 = u2;
  ne.converged = true;
  ne.iterations = 0;
  return ne;
}

namespace {

// argmax over constant actions of node's expected utility, other action fixed
std::size_t constant_best_response(const Problem& problem, int node, std::size_t other_action) {
  const std::size_t n_actions = problem.num_actions();
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < n_actions; ++a) {
    const std::size_t a1 = node == 1 ? a : other_action;
    const std::size_t a2 = node == 1 ? other_action : a;
    double value = 0.0;
    const auto& rho = problem.rho();
    for (std::size_t x0 = 0; x0 < problem.num_states(); ++x0) {
      if (rho[x0] == 0.0) continue;
      value += rho[x0] * problem.utility(node, x0, a1, a2);
    }
    if (value > best_value) {
      best_value = value;
      best = a;
    }
  }
  return best;
}

}  // namespace

NashBaseline one_shot_nash(const Problem& problem, std::size_t max_iters) {
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  std::size_t a1 = 0, a2 = 0;  // all-min start
  NashBaseline ne;
  ne.converged = false;
  for (std::size_t it = 1; it <= max_iters; ++it) {
    const std::size_t na1 = constant_best_response(problem, 1, a2);
    const std::size_t na2 = constant_best_response(problem, 2, na1);
    ne.iterations = it;
    const bool fixed = na1 == a1 && na2 == a2;
    a1 = na1;
    a2 = na2;
    if (fixed) {
      ne.converged = true;
      break;
    }
  }
  ne.a1 = problem.model().action_at(a1);
  ne.a2 = problem.model().action_at(a2);
  auto [u1, u2] = expected_profile_utilities(problem, ne.a1, ne.a2);
  ne.u1 = u1;
  ne.u2 = u2;
  return ne;
}

}  // namespace fd
