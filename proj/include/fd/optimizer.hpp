#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fd/game.hpp"
#include "fd/rng.hpp"
#include "fd/stochastic.hpp"

namespace fd {

// Thrown when an exhaustive enumeration would exceed its work guard.
struct GuardExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Stationary decision function f_i: (signal, lottery outcome) -> action.
struct DecisionPolicy {
  int node = 1;  // 1 or 2
  std::size_t n_signals = 0;
  std::size_t n_lottery = 0;
  std::vector<std::uint32_t> table;  // flat action index, entry (s * n_lottery + v)

  std::uint32_t operator()(std::size_t s, std::size_t v) const {
    return table[s * n_lottery + v];
  }
  void set(std::size_t s, std::size_t v, std::uint32_t a) { table[s * n_lottery + v] = a; }

  static DecisionPolicy constant(int node, std::size_t n_signals, std::size_t n_lottery,
                                 std::uint32_t action) {
    DecisionPolicy f;
    f.node = node;
    f.n_signals = n_signals;
    f.n_lottery = n_lottery;
    f.table.assign(n_signals * n_lottery, action);
    return f;
  }

  bool operator==(const DecisionPolicy&) const = default;
};

// A solvable instance: model + state distribution + observation structure +
// lottery, with the lookup tables that make expectation sums cheap.
class Problem {
 public:
  Problem(GameModel model, StateDistribution dist, ObservationStructure obs, Lottery lottery);

  const GameModel& model() const { return model_; }
  const StateDistribution& dist() const { return dist_; }
  const ObservationStructure& obs() const { return obs_; }
  const Lottery& lottery() const { return lottery_; }
  const std::vector<double>& rho() const { return rho_; }
  const ChannelState& state(std::size_t flat) const { return states_[flat]; }

  std::size_t num_states() const { return model_.num_states(); }
  std::size_t num_actions() const { return model_.num_actions(); }
  std::size_t signals(int node) const {
    return node == 1 ? obs_.s1_space.cardinality : obs_.s2_space.cardinality;
  }

  // phi(SNR_1) as a function of (ig1, ig2p, ip1, ipp2); likewise for node 2
  double phi1(std::uint32_t ig1, std::uint32_t ig2p, std::uint32_t ip1,
              std::uint32_t ipp2) const {
    return phi1_[((static_cast<std::size_t>(ig1) * model_.g2p().size() + ig2p) * m_ + ip1) * m_ +
                 ipp2];
  }
  double phi2(std::uint32_t ig2, std::uint32_t ig1p, std::uint32_t ip2,
              std::uint32_t ipp1) const {
    return phi2_[((static_cast<std::size_t>(ig2) * model_.g1p().size() + ig1p) * m_ + ip2) * m_ +
                 ipp1];
  }
  // alpha * (p + p') for a flat action index
  double action_cost(std::size_t a) const { return cost_[a]; }

  // table-backed utility, identical to GameModel::utility
  double utility(int node, std::size_t x0, std::size_t a1, std::size_t a2) const;
  // lambda * u1 + (1 - lambda) * u2
  double weighted_utility(double lambda, std::size_t x0, std::size_t a1, std::size_t a2) const;

  // Deterministic observation structures only: flat states grouped by signal.
  const std::vector<std::vector<std::uint32_t>>& preimages(int node) const {
    return node == 1 ? pre1_ : pre2_;
  }

  DecisionPolicy all_min_policy(int node) const;
  DecisionPolicy all_max_policy(int node) const;
  DecisionPolicy random_policy(int node, Rng& rng) const;

 private:
  GameModel model_;
  StateDistribution dist_;
  ObservationStructure obs_;
  Lottery lottery_;
  std::vector<double> rho_;
  std::vector<ChannelState> states_;
  std::vector<double> phi1_, phi2_, cost_;
  std::vector<std::vector<std::uint32_t>> pre1_, pre2_;
  std::size_t m_;
};

// Sparse joint distribution Q(x0, a1, a2); key = (flat state, flat a1, flat a2).
struct JointDistribution {
  std::map<std::array<std::uint32_t, 3>, double> mass;
  double total() const;
};

struct SolveResult {
  double lambda = 0.0;
  double w = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;
  DecisionPolicy f1, f2;
  std::size_t sweeps = 0;
  bool converged = true;
  std::vector<double> trace;  // weighted utility after each policy update
};

struct RegionResult {
  std::vector<SolveResult> points;                // one per lambda
  std::vector<std::size_t> best_restart;          // init index of the best run
  std::vector<std::size_t> hull;                  // indices into points, u1 increasing
};

// The Q induced by (rho, obs, lottery, f1, f2): each conditional action law is
// a point mass at f_i(s_i, v).
JointDistribution induced_joint(const Problem& problem, const DecisionPolicy& f1,
                                const DecisionPolicy& f2);

// (E_Q(u1), E_Q(u2)) without materializing Q.
std::pair<double, double> expected_utilities(const Problem& problem, const DecisionPolicy& f1,
                                             const DecisionPolicy& f2);

// Exact per-(signal, lottery) argmax of the weighted utility with the other
// node's policy fixed. Ties break to the lowest flat action index, i.e.
// row-major (ip, ipp) order.
DecisionPolicy best_response(const Problem& problem, int node, double lambda,
                             const DecisionPolicy& other);

// Alternates best responses (node 1, then node 2) until a full sweep changes
// neither table or max_sweeps is hit.
SolveResult sequential_best_response(const Problem& problem, double lambda,
                                     const DecisionPolicy& init1, const DecisionPolicy& init2,
                                     std::size_t max_sweeps);

// Globally optimal deterministic policy pair. Decomposes over lottery values
// and over connected components of the signal graph, enumerating the smaller
// side of each component with the other side inner-optimized exactly.
// Throws GuardExceeded when a component enumeration exceeds `guard` assignments.
SolveResult exhaustive_search(const Problem& problem, double lambda,
                              std::size_t guard = 10'000'000);

// Weighted utility of a stochastic policy pair P_i(a | s, v) via the full
// factorized sum; row layout matches DecisionPolicy (entry (s * |V| + v)).
struct StochasticPolicy {
  std::vector<std::vector<double>> rows;  // rows[(s * |V| + v)][a]
};
double evaluate_stochastic_pair(const Problem& problem, double lambda,
                                const StochasticPolicy& p1, const StochasticPolicy& p2);
StochasticPolicy random_stochastic_policy(const Problem& problem, int node, Rng& rng);

// Best multi-restart solve for one lambda: `restarts` seeded random inits plus
// all-min and all-max. Returns the best result and the index of its init
// (0..restarts-1 random, restarts = all-min, restarts + 1 = all-max).
std::pair<SolveResult, std::size_t> solve_lambda(const Problem& problem, double lambda,
                                                 std::size_t restarts, std::uint64_t seed,
                                                 std::size_t max_sweeps);

// Sweeps lambda over the grid and builds the upper-right hull of the
// (u1, u2) cloud.
RegionResult pareto_sweep(const Problem& problem, const std::vector<double>& lambda_grid,
                          std::size_t restarts, std::uint64_t seed, std::size_t max_sweeps,
                          unsigned threads = 1);

// Vertices of the upper-right (Pareto) part of the convex hull; returned as
// indices into `points`, ordered by increasing first coordinate.
std::vector<std::size_t> upper_right_hull(const std::vector<std::pair<double, double>>& points);

}  // namespace fd
