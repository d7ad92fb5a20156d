#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fd/game.hpp"
#include "fd/grid.hpp"

namespace fd {

// Fading law for one channel gain, discretized onto its grid.
struct GainLaw {
  enum class Kind { Exponential, Uniform, Explicit };
  Kind kind = Kind::Exponential;
  double mean = 1.0;          // Exponential
  std::vector<double> pmf;    // Explicit
};

// Probability mass over the grid levels. Exponential laws are binned by the
// Voronoi cells of the levels (first cell starts at 0, last extends to
// infinity) and renormalized exactly.
std::vector<double> discretized_marginal(const GainGrid& grid, const GainLaw& law);

// Product-form distribution of x0 = (g1, g1', g2, g2'): the four gains are
// mutually independent.
struct StateDistribution {
  // marginals in state order: g1, g1', g2, g2'
  std::vector<double> m1, m1p, m2, m2p;

  double mass(const ChannelState& x) const {
    return m1[x.ig1] * m1p[x.ig1p] * m2[x.ig2] * m2p[x.ig2p];
  }
  // flat vector indexed like GameModel::state_index
  std::vector<double> flatten(const GameModel& model) const;
};

StateDistribution product_state_distribution(std::vector<double> m1, std::vector<double> m1p,
                                             std::vector<double> m2, std::vector<double> m2p);

// What a signal index encodes, for human-readable decoding.
struct SignalSpace {
  enum class Content { FullState, OwnLinks, Single, Abstract };
  std::size_t cardinality = 1;
  Content content = Content::Abstract;

  std::string describe(const GameModel& model, std::size_t signal) const;
};

// Observation structure: the memoryless channel producing each node's signal
// from the global state. Deterministic maps cover global CSI (identity) and
// local CSI (projection onto the node's own link gains); row-stochastic
// product kernels cover generic conditionally independent observations.
struct ObservationStructure {
  enum class Kind { Deterministic, ProductKernel };

  Kind kind = Kind::Deterministic;
  SignalSpace s1_space, s2_space;
  // Deterministic: per flat state, the signal each node receives.
  std::vector<std::uint32_t> h1, h2;
  // ProductKernel: k1[x0][s1], k2[x0][s2]; rows sum to 1.
  std::vector<std::vector<double>> k1, k2;

  std::size_t num_states() const { return kind == Kind::Deterministic ? h1.size() : k1.size(); }

  // joint kernel value; Deterministic is the indicator of (h1(x0), h2(x0))
  double joint(std::size_t x0, std::size_t s1, std::size_t s2) const {
    if (kind == Kind::Deterministic)
      return (h1[x0] == s1 && h2[x0] == s2) ? 1.0 : 0.0;
    return k1[x0][s1] * k2[x0][s2];
  }
};

// Both nodes observe the full state: s_i = x0.
ObservationStructure global_csi(const GameModel& model);
// Node i observes the gains of the two links it transmits on: (g_i, g'_i).
ObservationStructure local_csi(const GameModel& model);
// No channel knowledge: a single constant signal for each node.
ObservationStructure blind_csi(const GameModel& model);
// Generic conditionally independent observation channels; rows must sum to 1
// within 1e-9.
ObservationStructure product_kernel(std::vector<std::vector<double>> k1,
                                    std::vector<std::vector<double>> k2);

// Auxiliary shared lottery P_V.
struct Lottery {
  std::vector<double> pmf;
  std::size_t size() const { return pmf.size(); }
};

Lottery uniform_lottery(std::size_t size);

}  // namespace fd
