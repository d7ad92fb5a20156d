#pragma once

#include <cstdint>
#include <vector>

#include "fd/optimizer.hpp"

namespace fd {

// One four-node interaction: two sources and their destinations.
struct Interaction {
  std::uint32_t source1 = 0;
  std::uint32_t source2 = 0;
  std::uint32_t dest1 = 0;
  std::uint32_t dest2 = 0;
};

// Result of evaluating the network at one advanced-node fraction.
struct MixRun {
  double fraction = 0.0;
  std::vector<std::uint32_t> advanced;          // node ids playing the solved policy
  std::vector<double> interaction_sums;         // expected u1 + u2 per interaction
  double total = 0.0;
};

struct FractionStats {
  double fraction = 0.0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t replications = 0;
};

// Samples n_interactions distinct role-assigned 4-tuples of node ids,
// rejecting exact duplicates; overlaps of up to three nodes are allowed.
std::vector<Interaction> build_network(std::size_t n_nodes, std::size_t n_interactions,
                                       std::uint64_t seed);

// Everything a mixed-population evaluation needs: the per-interaction channel
// instance, the solved advanced policy pair and the equilibrium action.
struct PopulationContext {
  const Problem* problem = nullptr;
  DecisionPolicy advanced1;  // role source1
  DecisionPolicy advanced2;  // role source2
  Action ne_action;
};

// Draws a seeded advanced set of size round(fraction * n_nodes) and evaluates
// every interaction exactly (channel draws integrated out, never sampled).
MixRun mixed_population_run(const std::vector<Interaction>& interactions, std::size_t n_nodes,
                            double fraction, const PopulationContext& ctx, std::uint64_t seed);

// Means and min/max envelopes of the total expected sum-utility over seeded
// advanced-set draws, one entry per fraction.
std::vector<FractionStats> fraction_sweep(const std::vector<Interaction>& interactions,
                                          std::size_t n_nodes,
                                          const std::vector<double>& fractions,
                                          std::size_t replications, const PopulationContext& ctx,
                                          std::uint64_t seed, unsigned threads = 1);

// Least-squares line through (fraction, mean) with its R^2.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
};
LinearFit fit_line(const std::vector<FractionStats>& stats);

}  // namespace fd
