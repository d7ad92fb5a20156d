#include "fd/network.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "fd/parallel.hpp"
#include "fd/rng.hpp"

namespace fd {

std::vector<Interaction> build_network(std::size_t n_nodes, std::size_t n_interactions,
                                       std::uint64_t seed) {
  if (n_nodes < 4) throw std::invalid_argument("network needs at least 4 nodes");
  if (n_interactions < 1) throw std::invalid_argument("n_interactions must be >= 1");
  const double distinct_tuples = static_cast<double>(n_nodes) * (n_nodes - 1) *
                                 (n_nodes - 2) * (n_nodes - 3);
  if (static_cast<double>(n_interactions) > distinct_tuples)
    throw std::invalid_argument("more interactions requested than distinct 4-node tuples");

  Rng rng(seed);
  std::vector<Interaction> interactions;
  interactions.reserve(n_interactions);
  std::set<std::array<std::uint32_t, 4>> seen;
  while (interactions.size() < n_interactions) {
    std::array<std::uint32_t, 4> ids{};
    for (std::size_t k = 0; k < 4; ++k) {
      for (;;) {
        const std::uint32_t id = rng.next_below(static_cast<std::uint32_t>(n_nodes));
        if (std::find(ids.begin(), ids.begin() + k, id) == ids.begin() + k) {
          ids[k] = id;
          break;
        }
      }
    }
    if (!seen.insert(ids).second) continue;  // exact duplicate (same ids, same roles)
    interactions.push_back({ids[0], ids[1], ids[2], ids[3]});
  }
  return interactions;
}

namespace {

// expected sum-utility of one interaction given the two source types
struct PairValues {
  double values[2][2];  // [type1][type2], type 1 = advanced
};

PairValues interaction_values(const PopulationContext& ctx) {
  const Problem& problem = *ctx.problem;
  const std::uint32_t ne_flat =
      static_cast<std::uint32_t>(problem.model().action_index(ctx.ne_action));
  const DecisionPolicy ne1 =
      DecisionPolicy::constant(1, problem.signals(1), problem.lottery().size(), ne_flat);
  const DecisionPolicy ne2 =
      DecisionPolicy::constant(2, problem.signals(2), problem.lottery().size(), ne_flat);

  auto sum_of = [&](const DecisionPolicy& f1, const DecisionPolicy& f2) {
    auto [u1, u2] = expected_utilities(problem, f1, f2);
    return u1 + u2;
  };

  PairValues pv;
  pv.values[0][0] = sum_of(ne1, ne2);
  pv.values[0][1] = sum_of(ne1, ctx.advanced2);
  pv.values[1][0] = sum_of(ctx.advanced1, ne2);
  pv.values[1][1] = sum_of(ctx.advanced1, ctx.advanced2);
  return pv;
}

}  // namespace

MixRun mixed_population_run(const std::vector<Interaction>& interactions, std::size_t n_nodes,
                            double fraction, const PopulationContext& ctx, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw std::invalid_argument("fraction must lie in [0, 1]");
  if (ctx.problem == nullptr) throw std::invalid_argument("population context has no problem");

  const auto k = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(n_nodes)));

  // seeded size-k subset via partial Fisher-Yates
  std::vector<std::uint32_t> ids(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) ids[i] = static_cast<std::uint32_t>(i);
  Rng rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j =
        i + rng.next_below(static_cast<std::uint32_t>(n_nodes - i));
    std::swap(ids[i], ids[j]);
  }
  MixRun run;
  run.fraction = fraction;
  run.advanced.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(run.advanced.begin(), run.advanced.end());

  std::vector<char> is_advanced(n_nodes, 0);
  for (std::uint32_t id : run.advanced) is_advanced[id] = 1;

  const PairValues pv = interaction_values(ctx);
  run.interaction_sums.reserve(interactions.size());
  for (const Interaction& it : interactions) {
    const double value = pv.values[is_advanced[it.source1]][is_advanced[it.source2]];
    run.interaction_sums.push_back(value);
    run.total += value;
  }
  return run;
}

std::vector<FractionStats> fraction_sweep(const std::vector<Interaction>& interactions,
                                          std::size_t n_nodes,
                                          const std::vector<double>& fractions,
                                          std::size_t replications, const PopulationContext& ctx,
                                          std::uint64_t seed, unsigned threads) {
  if (fractions.empty()) throw std::invalid_argument("fraction list is empty");
  if (replications < 1) throw std::invalid_argument("replications must be >= 1");

  std::vector<FractionStats> stats(fractions.size());
  parallel_for(fractions.size(), threads, [&](std::size_t fi) {
    FractionStats st;
    st.fraction = fractions[fi];
    st.replications = replications;
    double sum = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t ri = 0; ri < replications; ++ri) {
      const MixRun run = mixed_population_run(interactions, n_nodes, fractions[fi], ctx,
                                              Rng::derive(seed, fi, ri));
      sum += run.total;
      lo = std::min(lo, run.total);
      hi = std::max(hi, run.total);
    }
    st.mean = sum / static_cast<double>(replications);
    st.min = lo;
    st.max = hi;
    stats[fi] = st;
  });
  return stats;
}

LinearFit fit_line(const std::vector<FractionStats>& stats) {
  LinearFit fit;
  const auto n = static_cast<double>(stats.size());
  if (stats.size() < 2) {
    fit.intercept = stats.empty() ? 0.0 : stats.front().mean;
    return fit;
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& st : stats) {
    sx += st.fraction;
    sy += st.mean;
    sxx += st.fraction * st.fraction;
    sxy += st.fraction * st.mean;
  }
  const double denom = n * sxx - sx * sx;
  fit.slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0.0, ss_tot = 0.0;
  const double mean_y = sy / n;
  for (const auto& st : stats) {
    const double pred = fit.intercept + fit.slope * st.fraction;
    ss_res += (st.mean - pred) * (st.mean - pred);
    ss_tot += (st.mean - mean_y) * (st.mean - mean_y);
  }
  fit.r2 = ss_tot != 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace fd
