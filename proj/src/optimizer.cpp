#include "fd/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fd/parallel.hpp"

namespace fd {

namespace {

void check_lottery(const Lottery& lottery) {
  if (lottery.size() == 0) throw std::invalid_argument("lottery is empty");
  double sum = 0.0;
  for (double v : lottery.pmf) {
    if (v < 0.0) throw std::invalid_argument("lottery has a negative mass");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("lottery does not sum to 1");
}

void check_policy(const Problem& problem, const DecisionPolicy& f, int node) {
  if (f.node != node) throw std::invalid_argument("policy assigned to the wrong node");
  if (f.n_signals != problem.signals(node) || f.n_lottery != problem.lottery().size() ||
      f.table.size() != f.n_signals * f.n_lottery)
    throw std::invalid_argument("policy table does not match the observation structure");
  for (std::uint32_t a : f.table)
    if (a >= problem.num_actions())
      throw std::invalid_argument("policy table contains an invalid action");
}

}  // namespace

Problem::Problem(GameModel model, StateDistribution dist, ObservationStructure obs,
                 Lottery lottery)
    : model_(std::move(model)),
      dist_(std::move(dist)),
      obs_(std::move(obs)),
      lottery_(std::move(lottery)) {
  if (obs_.num_states() != model_.num_states())
    throw std::invalid_argument("observation structure does not match the state space");
  check_lottery(lottery_);
  rho_ = dist_.flatten(model_);

  const std::size_t n = model_.num_states();
  states_.resize(n);
  for (std::size_t i = 0; i < n; ++i) states_[i] = model_.state_at(i);

  m_ = model_.powers().size();
  const auto& p = model_.powers();
  const auto& phi = model_.params().phi;
  const double s2 = model_.params().sigma2;

  phi1_.resize(model_.g1().size() * model_.g2p().size() * m_ * m_);
  std::size_t idx = 0;
  for (std::size_t ig1 = 0; ig1 < model_.g1().size(); ++ig1)
    for (std::size_t ig2p = 0; ig2p < model_.g2p().size(); ++ig2p)
      for (std::size_t ip1 = 0; ip1 < m_; ++ip1)
        for (std::size_t ipp2 = 0; ipp2 < m_; ++ipp2)
          phi1_[idx++] = phi(p[ip1] * model_.g1()[ig1] * p[ipp2] * model_.g2p()[ig2p] / s2);

  phi2_.resize(model_.g2().size() * model_.g1p().size() * m_ * m_);
  idx = 0;
  for (std::size_t ig2 = 0; ig2 < model_.g2().size(); ++ig2)
    for (std::size_t ig1p = 0; ig1p < model_.g1p().size(); ++ig1p)
      for (std::size_t ip2 = 0; ip2 < m_; ++ip2)
        for (std::size_t ipp1 = 0; ipp1 < m_; ++ipp1)
          phi2_[idx++] = phi(p[ip2] * model_.g2()[ig2] * p[ipp1] * model_.g1p()[ig1p] / s2);

  cost_.resize(m_ * m_);
  for (std::size_t a = 0; a < cost_.size(); ++a) {
    const Action act = model_.action_at(a);
    cost_[a] = model_.params().alpha * (p[act.ip] + p[act.ipp]);
  }

  if (obs_.kind == ObservationStructure::Kind::Deterministic) {
    pre1_.assign(obs_.s1_space.cardinality, {});
    pre2_.assign(obs_.s2_space.cardinality, {});
    for (std::size_t i = 0; i < n; ++i) {
      pre1_[obs_.h1[i]].push_back(static_cast<std::uint32_t>(i));
      pre2_[obs_.h2[i]].push_back(static_cast<std::uint32_t>(i));
    }
  }
}

double Problem::utility(int node, std::size_t x0, std::size_t a1, std::size_t a2) const {
  const ChannelState& x = states_[x0];
  const Action A1 = model_.action_at(a1);
  const Action A2 = model_.action_at(a2);
  if (node == 1) return phi1(x.ig1, x.ig2p, A1.ip, A2.ipp) - cost_[a1];
  return phi2(x.ig2, x.ig1p, A2.ip, A1.ipp) - cost_[a2];
}

double Problem::weighted_utility(double lambda, std::size_t x0, std::size_t a1,
                                 std::size_t a2) const {
  return lambda * utility(1, x0, a1, a2) + (1.0 - lambda) * utility(2, x0, a1, a2);
}

DecisionPolicy Problem::all_min_policy(int node) const {
  return DecisionPolicy::constant(node, signals(node), lottery_.size(), 0);
}

DecisionPolicy Problem::all_max_policy(int node) const {
  return DecisionPolicy::constant(node, signals(node), lottery_.size(),
                                  static_cast<std::uint32_t>(num_actions() - 1));
}

DecisionPolicy Problem::random_policy(int node, Rng& rng) const {
  DecisionPolicy f = all_min_policy(node);
  const auto n_actions = static_cast<std::uint32_t>(num_actions());
  for (auto& a : f.table) a = rng.next_below(n_actions);
  return f;
}

double JointDistribution::total() const {
  double sum = 0.0;
  for (const auto& [key, value] : mass) sum += value;
  return sum;
}

JointDistribution induced_joint(const Problem& problem, const DecisionPolicy& f1,
                                const DecisionPolicy& f2) {
  check_policy(problem, f1, 1);
  check_policy(problem, f2, 2);
  const auto& obs = problem.obs();
  const auto& rho = problem.rho();
  JointDistribution q;
  for (std::size_t v = 0; v < problem.lottery().size(); ++v) {
    const double pv = problem.lottery().pmf[v];
    if (pv == 0.0) continue;
    for (std::size_t x0 = 0; x0 < problem.num_states(); ++x0) {
      const double w = rho[x0] * pv;
      if (w == 0.0) continue;
      if (obs.kind == ObservationStructure::Kind::Deterministic) {
        const std::uint32_t a1 = f1(obs.h1[x0], v);
        const std::uint32_t a2 = f2(obs.h2[x0], v);
        q.mass[{static_cast<std::uint32_t>(x0), a1, a2}] += w;
      } else {
        for (std::size_t s1 = 0; s1 < obs.s1_space.cardinality; ++s1) {
          const double w1 = w * obs.k1[x0][s1];
          if (w1 == 0.0) continue;
          for (std::size_t s2 = 0; s2 < obs.s2_space.cardinality; ++s2) {
            const double w12 = w1 * obs.k2[x0][s2];
            if (w12 == 0.0) continue;
            q.mass[{static_cast<std::uint32_t>(x0), f1(s1, v), f2(s2, v)}] += w12;
          }
        }
      }
    }
  }
  return q;
}

std::pair<double, double> expected_utilities(const Problem& problem, const DecisionPolicy& f1,
                                             const DecisionPolicy& f2) {
  check_policy(problem, f1, 1);
  check_policy(problem, f2, 2);
  const auto& obs = problem.obs();
  const auto& rho = problem.rho();
  double u1 = 0.0, u2 = 0.0;
  for (std::size_t v = 0; v < problem.lottery().size(); ++v) {
    const double pv = problem.lottery().pmf[v];
    if (pv == 0.0) continue;
    for (std::size_t x0 = 0; x0 < problem.num_states(); ++x0) {
      const double w = rho[x0] * pv;
      if (w == 0.0) continue;
      if (obs.kind == ObservationStructure::Kind::Deterministic) {
        const std::uint32_t a1 = f1(obs.h1[x0], v);
        const std::uint32_t a2 = f2(obs.h2[x0], v);
        u1 += w * problem.utility(1, x0, a1, a2);
        u2 += w * problem.utility(2, x0, a1, a2);
      } else {
        for (std::size_t s1 = 0; s1 < obs.s1_space.cardinality; ++s1) {
          const double w1 = w * obs.k1[x0][s1];
          if (w1 == 0.0) continue;
          for (std::size_t s2 = 0; s2 < obs.s2_space.cardinality; ++s2) {
            const double w12 = w1 * obs.k2[x0][s2];
            if (w12 == 0.0) continue;
            const std::uint32_t a1 = f1(s1, v);
            const std::uint32_t a2 = f2(s2, v);
            u1 += w12 * problem.utility(1, x0, a1, a2);
            u2 += w12 * problem.utility(2, x0, a1, a2);
          }
        }
      }
    }
  }
  return {u1, u2};
}

// The per-cell score is separable: node i's phi-term depends on its action
// only through the own-packet power, the other node's phi-term only through
// the relay power, and the energy cost splits per component. Each coordinate
// is maximized independently; the lowest-index tie-break per coordinate
// equals the row-major (ip, ipp) tie-break of the joint argmax.
DecisionPolicy best_response(const Problem& problem, int node, double lambda,
                             const DecisionPolicy& other) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("lambda must lie in [0, 1]");
  const int other_node = node == 1 ? 2 : 1;
  check_policy(problem, other, other_node);

  const auto& obs = problem.obs();
  const auto& rho = problem.rho();
  const auto& p = problem.model().powers();
  const std::size_t m = p.size();
  const double own_w = node == 1 ? lambda : 1.0 - lambda;
  const double oth_w = 1.0 - own_w;
  const double alpha = problem.model().params().alpha;

  DecisionPolicy f;
  f.node = node;
  f.n_signals = problem.signals(node);
  f.n_lottery = problem.lottery().size();
  f.table.assign(f.n_signals * f.n_lottery, 0);

  std::vector<double> own_phi(m), oth_phi(m);
  for (std::size_t s = 0; s < f.n_signals; ++s) {
    for (std::size_t v = 0; v < f.n_lottery; ++v) {
      std::fill(own_phi.begin(), own_phi.end(), 0.0);
      std::fill(oth_phi.begin(), oth_phi.end(), 0.0);
      double mass = 0.0;

      auto accumulate = [&](std::size_t x0, double w, const Action& a_oth) {
        const ChannelState& x = problem.state(x0);
        if (node == 1) {
          for (std::size_t ip = 0; ip < m; ++ip)
            own_phi[ip] += w * problem.phi1(x.ig1, x.ig2p, static_cast<std::uint32_t>(ip),
                                            a_oth.ipp);
          for (std::size_t ipp = 0; ipp < m; ++ipp)
            oth_phi[ipp] += w * problem.phi2(x.ig2, x.ig1p, a_oth.ip,
                                             static_cast<std::uint32_t>(ipp));
        } else {
          for (std::size_t ip = 0; ip < m; ++ip)
            own_phi[ip] += w * problem.phi2(x.ig2, x.ig1p, static_cast<std::uint32_t>(ip),
                                            a_oth.ipp);
          for (std::size_t ipp = 0; ipp < m; ++ipp)
            oth_phi[ipp] += w * problem.phi1(x.ig1, x.ig2p, a_oth.ip,
                                             static_cast<std::uint32_t>(ipp));
        }
      };

      if (obs.kind == ObservationStructure::Kind::Deterministic) {
        const auto& pre = problem.preimages(node)[s];
        const auto& h_oth = node == 1 ? obs.h2 : obs.h1;
        for (std::uint32_t x0 : pre) {
          const double w = rho[x0];
          const Action a_oth = problem.model().action_at(other(h_oth[x0], v));
          accumulate(x0, w, a_oth);
          mass += w;
        }
      } else {
        const auto& k_own = node == 1 ? obs.k1 : obs.k2;
        const auto& k_oth = node == 1 ? obs.k2 : obs.k1;
        const std::size_t s_oth_count = problem.signals(other_node);
        for (std::size_t x0 = 0; x0 < problem.num_states(); ++x0) {
          const double w0 = rho[x0] * k_own[x0][s];
          if (w0 == 0.0) continue;
          for (std::size_t s_oth = 0; s_oth < s_oth_count; ++s_oth) {
            const double w = w0 * k_oth[x0][s_oth];
            if (w == 0.0) continue;
            const Action a_oth = problem.model().action_at(other(s_oth, v));
            accumulate(x0, w, a_oth);
          }
          mass += w0;
        }
      }

      std::uint32_t best_ip = 0, best_ipp = 0;
      double best_p = own_w * own_phi[0] - own_w * alpha * p[0] * mass;
      double best_q = oth_w * oth_phi[0] - own_w * alpha * p[0] * mass;
      for (std::size_t k = 1; k < m; ++k) {
        const double sp = own_w * own_phi[k] - own_w * alpha * p[k] * mass;
        if (sp > best_p) {
          best_p = sp;
          best_ip = static_cast<std::uint32_t>(k);
        }
        const double sq = oth_w * oth_phi[k] - own_w * alpha * p[k] * mass;
        if (sq > best_q) {
          best_q = sq;
          best_ipp = static_cast<std::uint32_t>(k);
        }
      }
      f.set(s, v, static_cast<std::uint32_t>(best_ip * m + best_ipp));
    }
  }
  return f;
}

SolveResult sequential_best_response(const Problem& problem, double lambda,
                                     const DecisionPolicy& init1, const DecisionPolicy& init2,
                                     std::size_t max_sweeps) {
  if (max_sweeps < 1) throw std::invalid_argument("max_sweeps must be >= 1");
  check_policy(problem, init1, 1);
  check_policy(problem, init2, 2);

  SolveResult result;
  result.lambda = lambda;
  result.f1 = init1;
  result.f2 = init2;
  result.converged = false;

  for (std::size_t sweep = 1; sweep <= max_sweeps; ++sweep) {
    DecisionPolicy nf1 = best_response(problem, 1, lambda, result.f2);
    const bool changed1 = nf1.table != result.f1.table;
    result.f1 = std::move(nf1);
    auto [u1a, u2a] = expected_utilities(problem, result.f1, result.f2);
    result.trace.push_back(lambda * u1a + (1.0 - lambda) * u2a);

    DecisionPolicy nf2 = best_response(problem, 2, lambda, result.f1);
    const bool changed2 = nf2.table != result.f2.table;
    result.f2 = std::move(nf2);
    auto [u1b, u2b] = expected_utilities(problem, result.f1, result.f2);
    result.trace.push_back(lambda * u1b + (1.0 - lambda) * u2b);

    result.sweeps = sweep;
    result.u1 = u1b;
    result.u2 = u2b;
    if (!changed1 && !changed2) {
      result.converged = true;
      break;
    }
  }
  result.w = lambda * result.u1 + (1.0 - lambda) * result.u2;
  return result;
}

namespace {

// union-find over the bipartite signal graph of one lottery value
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

struct Entry {
  std::uint32_t x0;
  std::uint32_t s1;
  std::uint32_t s2;
  double weight;
};

}  // namespace

SolveResult exhaustive_search(const Problem& problem, double lambda, std::size_t guard) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("lambda must lie in [0, 1]");
  const auto& obs = problem.obs();
  const auto& rho = problem.rho();
  const std::size_t n_actions = problem.num_actions();
  const std::size_t s1_count = problem.signals(1);
  const std::size_t s2_count = problem.signals(2);

  SolveResult result;
  result.lambda = lambda;
  result.f1 = problem.all_min_policy(1);
  result.f2 = problem.all_min_policy(2);
  result.sweeps = 0;
  result.converged = true;

  double total_u1 = 0.0, total_u2 = 0.0;

  // Positive-probability (x0, s1, s2) triples; states with rho = 0 cannot
  // affect the objective and unreached signals keep action 0.
  std::vector<Entry> entries;
  for (std::size_t x0 = 0; x0 < problem.num_states(); ++x0) {
    if (rho[x0] == 0.0) continue;
    if (obs.kind == ObservationStructure::Kind::Deterministic) {
      entries.push_back({static_cast<std::uint32_t>(x0), obs.h1[x0], obs.h2[x0], rho[x0]});
    } else {
      for (std::size_t s1 = 0; s1 < s1_count; ++s1) {
        if (obs.k1[x0][s1] == 0.0) continue;
        for (std::size_t s2 = 0; s2 < s2_count; ++s2) {
          const double w = rho[x0] * obs.k1[x0][s1] * obs.k2[x0][s2];
          if (w == 0.0) continue;
          entries.push_back({static_cast<std::uint32_t>(x0), static_cast<std::uint32_t>(s1),
                             static_cast<std::uint32_t>(s2), w});
        }
      }
    }
  }

  // Components of the bipartite signal graph; identical for every lottery
  // value, so computed once.
  DisjointSets sets(s1_count + s2_count);
  for (const Entry& e : entries) sets.unite(e.s1, s1_count + e.s2);
  std::map<std::size_t, std::vector<std::size_t>> component_entries;  // root -> entry ids
  for (std::size_t i = 0; i < entries.size(); ++i)
    component_entries[sets.find(entries[i].s1)].push_back(i);

  for (std::size_t v = 0; v < problem.lottery().size(); ++v) {
    const double pv = problem.lottery().pmf[v];

    for (const auto& [root, entry_ids] : component_entries) {
      // signals present in this component
      std::vector<std::uint32_t> sig1, sig2;
      for (std::size_t i : entry_ids) {
        sig1.push_back(entries[i].s1);
        sig2.push_back(entries[i].s2);
      }
      std::sort(sig1.begin(), sig1.end());
      sig1.erase(std::unique(sig1.begin(), sig1.end()), sig1.end());
      std::sort(sig2.begin(), sig2.end());
      sig2.erase(std::unique(sig2.begin(), sig2.end()), sig2.end());

      // Enumerate the smaller side; best-respond on the other per signal.
      const bool enumerate_side1 = sig1.size() <= sig2.size();
      const auto& small = enumerate_side1 ? sig1 : sig2;
      const auto& big = enumerate_side1 ? sig2 : sig1;

      double count = 1.0;
      for (std::size_t i = 0; i < small.size(); ++i) {
        count *= static_cast<double>(n_actions);
        if (count > static_cast<double>(guard))
          throw GuardExceeded("exhaustive search component exceeds the enumeration guard");
      }

      // entries grouped by big-side signal, each tagged with the position of
      // its small-side signal in `small`
      std::vector<std::size_t> small_pos(enumerate_side1 ? s1_count : s2_count, 0);
      for (std::size_t i = 0; i < small.size(); ++i) small_pos[small[i]] = i;
      struct BigEntry {
        std::uint32_t x0;
        std::uint32_t small_index;
        double weight;
      };
      std::vector<std::vector<BigEntry>> by_big(big.size());
      std::vector<std::size_t> big_pos(enumerate_side1 ? s2_count : s1_count, 0);
      for (std::size_t i = 0; i < big.size(); ++i) big_pos[big[i]] = i;
      for (std::size_t i : entry_ids) {
        const Entry& e = entries[i];
        const std::uint32_t sb = enumerate_side1 ? e.s2 : e.s1;
        const std::uint32_t ss = enumerate_side1 ? e.s1 : e.s2;
        by_big[big_pos[sb]].push_back(
            {e.x0, static_cast<std::uint32_t>(small_pos[ss]), e.weight});
      }

      auto score = [&](std::size_t x0, std::uint32_t a_small, std::uint32_t a_big) {
        const std::size_t a1 = enumerate_side1 ? a_small : a_big;
        const std::size_t a2 = enumerate_side1 ? a_big : a_small;
        return problem.weighted_utility(lambda, x0, a1, a2);
      };

      std::vector<std::uint32_t> assignment(small.size(), 0);
      std::vector<std::uint32_t> best_assignment(small.size(), 0);
      std::vector<std::uint32_t> big_actions(big.size(), 0);
      std::vector<std::uint32_t> best_big_actions(big.size(), 0);
      double best_value = -std::numeric_limits<double>::infinity();

      for (;;) {
        double value = 0.0;
        for (std::size_t b = 0; b < big.size(); ++b) {
          double best_here = -std::numeric_limits<double>::infinity();
          std::uint32_t best_a = 0;
          for (std::uint32_t a = 0; a < n_actions; ++a) {
            double acc = 0.0;
            for (const BigEntry& e : by_big[b])
              acc += e.weight * score(e.x0, assignment[e.small_index], a);
            if (acc > best_here) {
              best_here = acc;
              best_a = a;
            }
          }
          big_actions[b] = best_a;
          value += best_here;
        }
        if (value > best_value) {
          best_value = value;
          best_assignment = assignment;
          best_big_actions = big_actions;
        }
        // odometer, lexicographic from the last signal
        bool wrapped = true;
        for (std::size_t pos = small.size(); pos > 0;) {
          --pos;
          if (++assignment[pos] < n_actions) {
            wrapped = false;
            break;
          }
          assignment[pos] = 0;
        }
        if (wrapped) break;
      }

      // install the winner and accumulate its utility contributions
      DecisionPolicy& f_small = enumerate_side1 ? result.f1 : result.f2;
      DecisionPolicy& f_big = enumerate_side1 ? result.f2 : result.f1;
      for (std::size_t i = 0; i < small.size(); ++i)
        f_small.set(small[i], v, best_assignment[i]);
      for (std::size_t b = 0; b < big.size(); ++b) f_big.set(big[b], v, best_big_actions[b]);
      for (std::size_t i : entry_ids) {
        const Entry& e = entries[i];
        const std::uint32_t a1 = result.f1(e.s1, v);
        const std::uint32_t a2 = result.f2(e.s2, v);
        total_u1 += pv * e.weight * problem.utility(1, e.x0, a1, a2);
        total_u2 += pv * e.weight * problem.utility(2, e.x0, a1, a2);
      }
    }
  }

  result.u1 = total_u1;
  result.u2 = total_u2;
  result.w = lambda * total_u1 + (1.0 - lambda) * total_u2;
  result.trace = {result.w};
  return result;
}

double evaluate_stochastic_pair(const Problem& problem, double lambda,
                                const StochasticPolicy& p1, const StochasticPolicy& p2) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("lambda must lie in [0, 1]");
  const auto& obs = problem.obs();
  const auto& rho = problem.rho();
  const std::size_t n_actions = problem.num_actions();
  const std::size_t nv = problem.lottery().size();
  if (p1.rows.size() != problem.signals(1) * nv || p2.rows.size() != problem.signals(2) * nv)
    throw std::invalid_argument("stochastic policy dimensions do not match");

  double value = 0.0;
  auto cell = [&](std::size_t x0, std::size_t s1, std::size_t s2, std::size_t v, double w) {
    const auto& row1 = p1.rows[s1 * nv + v];
    const auto& row2 = p2.rows[s2 * nv + v];
    double acc = 0.0;
    for (std::size_t a1 = 0; a1 < n_actions; ++a1) {
      if (row1[a1] == 0.0) continue;
      for (std::size_t a2 = 0; a2 < n_actions; ++a2) {
        if (row2[a2] == 0.0) continue;
        acc += row1[a1] * row2[a2] * problem.weighted_utility(lambda, x0, a1, a2);
      }
    }
    value += w * acc;
  };

  for (std::size_t v = 0; v < nv; ++v) {
    const double pv = problem.lottery().pmf[v];
    if (pv == 0.0) continue;
    for (std::size_t x0 = 0; x0 < problem.num_states(); ++x0) {
      const double w = rho[x0] * pv;
      if (w == 0.0) continue;
      if (obs.kind == ObservationStructure::Kind::Deterministic) {
        cell(x0, obs.h1[x0], obs.h2[x0], v, w);
      } else {
        for (std::size_t s1 = 0; s1 < problem.signals(1); ++s1) {
          if (obs.k1[x0][s1] == 0.0) continue;
          for (std::size_t s2 = 0; s2 < problem.signals(2); ++s2) {
            const double w12 = w * obs.k1[x0][s1] * obs.k2[x0][s2];
            if (w12 == 0.0) continue;
            cell(x0, s1, s2, v, w12);
          }
        }
      }
    }
  }
  return value;
}

StochasticPolicy random_stochastic_policy(const Problem& problem, int node, Rng& rng) {
  StochasticPolicy p;
  const std::size_t rows = problem.signals(node) * problem.lottery().size();
  const std::size_t n_actions = problem.num_actions();
  p.rows.resize(rows);
  for (auto& row : p.rows) {
    row.resize(n_actions);
    double sum = 0.0;
    for (auto& x : row) {
      x = rng.next_exponential();
      sum += x;
    }
    for (auto& x : row) x /= sum;
  }
  return p;
}

std::pair<SolveResult, std::size_t> solve_lambda(const Problem& problem, double lambda,
                                                 std::size_t restarts, std::uint64_t seed,
                                                 std::size_t max_sweeps) {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  SolveResult best;
  std::size_t best_index = 0;
  bool have_best = false;
  for (std::size_t r = 0; r < restarts + 2; ++r) {
    DecisionPolicy f1, f2;
    if (r < restarts) {
      Rng rng(Rng::derive(seed, r));
      f1 = problem.random_policy(1, rng);
      f2 = problem.random_policy(2, rng);
    } else if (r == restarts) {
      f1 = problem.all_min_policy(1);
      f2 = problem.all_min_policy(2);
    } else {
      f1 = problem.all_max_policy(1);
      f2 = problem.all_max_policy(2);
    }
    SolveResult run = sequential_best_response(problem, lambda, f1, f2, max_sweeps);
    if (!have_best || run.w > best.w) {
      best = std::move(run);
      best_index = r;
      have_best = true;
    }
  }
  return {std::move(best), best_index};
}

RegionResult pareto_sweep(const Problem& problem, const std::vector<double>& lambda_grid,
                          std::size_t restarts, std::uint64_t seed, std::size_t max_sweeps,
                          unsigned threads) {
  if (lambda_grid.empty()) throw std::invalid_argument("lambda grid is empty");
  for (double l : lambda_grid)
    if (!(l >= 0.0 && l <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");

  RegionResult region;
  region.points.resize(lambda_grid.size());
  region.best_restart.resize(lambda_grid.size());
  parallel_for(lambda_grid.size(), threads, [&](std::size_t i) {
    auto [result, index] =
        solve_lambda(problem, lambda_grid[i], restarts, Rng::derive(seed, i), max_sweeps);
    region.points[i] = std::move(result);
    region.best_restart[i] = index;
  });

  std::vector<std::pair<double, double>> cloud;
  cloud.reserve(region.points.size());
  for (const auto& p : region.points) cloud.emplace_back(p.u1, p.u2);
  region.hull = upper_right_hull(cloud);
  return region;
}

std::vector<std::size_t> upper_right_hull(const std::vector<std::pair<double, double>>& points) {
  if (points.empty()) return {};

  // keep only Pareto-nondominated points, deduplicated
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].first != points[b].first) return points[a].first > points[b].first;
    if (points[a].second != points[b].second) return points[a].second > points[b].second;
    return a < b;
  });
  std::vector<std::size_t> frontier;  // u1 descending, u2 strictly increasing
  double best_u2 = -std::numeric_limits<double>::infinity();
  double last_u1 = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i : order) {
    if (points[i].first == last_u1) continue;  // dominated or duplicate at this u1
    if (points[i].second > best_u2) {
      frontier.push_back(i);
      best_u2 = points[i].second;
      last_u1 = points[i].first;
    }
  }
  std::reverse(frontier.begin(), frontier.end());  // u1 ascending, u2 descending
  if (frontier.size() <= 2) return frontier;

  // upper hull of the staircase: drop vertices under a chord
  auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
    const double ax = points[a].first - points[o].first;
    const double ay = points[a].second - points[o].second;
    const double bx = points[b].first - points[o].first;
    const double by = points[b].second - points[o].second;
    return ax * by - ay * bx;
  };
  std::vector<std::size_t> hull;
  for (std::size_t i : frontier) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), i) >= 0.0)
      hull.pop_back();
    hull.push_back(i);
  }
  return hull;
}

}  // namespace fd
