#pragma once

#include <cstddef>
#include <cstdint>

#include "fd/grid.hpp"

namespace fd {

// Global channel state x0 = (g1, g1', g2, g2') as grid indices.
struct ChannelState {
  std::uint32_t ig1 = 0;
  std::uint32_t ig1p = 0;
  std::uint32_t ig2 = 0;
  std::uint32_t ig2p = 0;

  bool operator==(const ChannelState&) const = default;
};

// A node's action: indices of (own-packet power, relay power) in its power grid.
struct Action {
  std::uint32_t ip = 0;
  std::uint32_t ipp = 0;

  bool operator==(const Action&) const = default;
};

// Communication efficiency function phi: SNR -> [0, 1], nondecreasing.
struct Efficiency {
  enum class Kind { ExpRatio, PacketSuccess };

  Kind kind = Kind::ExpRatio;
  double c = 1.0;  // ExpRatio: phi(x) = exp(-c/x), phi(0) = 0
  int l = 1;       // PacketSuccess: phi(x) = (1 - exp(-x))^l

  static Efficiency exp_ratio(double c);
  // c = 2^r - 1, r the spectral efficiency in bit/s/Hz
  static Efficiency exp_ratio_from_rate(double r);
  static Efficiency packet_success(int l);

  double operator()(double x) const;
};

struct UtilityParams {
  double alpha = 0.1;   // energy weight, >= 0
  double sigma2 = 1.0;  // noise variance, > 0
  Efficiency phi;
};

// One four-node interaction: grids for the four links, the (shared) power
// grid, and the utility parameters. State/action flattening lives here so
// every module indexes them the same way.
class GameModel {
 public:
  GameModel(GainGrid g1, GainGrid g1p, GainGrid g2, GainGrid g2p,
            PowerGrid powers, UtilityParams params);

  const GainGrid& g1() const { return g1_; }
  const GainGrid& g1p() const { return g1p_; }
  const GainGrid& g2() const { return g2_; }
  const GainGrid& g2p() const { return g2p_; }
  const PowerGrid& powers() const { return powers_; }
  const UtilityParams& params() const { return params_; }

  std::size_t num_states() const { return n_states_; }
  std::size_t num_actions() const { return powers_.size() * powers_.size(); }

  std::size_t state_index(const ChannelState& x) const {
    return ((static_cast<std::size_t>(x.ig1) * g1p_.size() + x.ig1p) * g2_.size() +
            x.ig2) * g2p_.size() + x.ig2p;
  }
  ChannelState state_at(std::size_t flat) const;

  std::size_t action_index(const Action& a) const {
    return static_cast<std::size_t>(a.ip) * powers_.size() + a.ipp;
  }
  Action action_at(std::size_t flat) const {
    const auto m = static_cast<std::uint32_t>(powers_.size());
    return Action{static_cast<std::uint32_t>(flat) / m,
                  static_cast<std::uint32_t>(flat) % m};
  }

  // Node i's SNR uses its own packet power, its own direct gain, and the
  // OTHER node's relay power and relay gain: p_i g_i p'_{-i} g'_{-i} / sigma^2.
  double snr(int node, const ChannelState& x, const Action& a1, const Action& a2) const;

  // phi(SNR_i); separated so tests can check the u = phi-term + energy-term split
  double phi_term(int node, const ChannelState& x, const Action& a1, const Action& a2) const;
  // -alpha * (p_i + p'_i)
  double energy_term(int node, const Action& a) const;
  double utility(int node, const ChannelState& x, const Action& a1, const Action& a2) const;

 private:
  GainGrid g1_, g1p_, g2_, g2p_;
  PowerGrid powers_;
  UtilityParams params_;
  std::size_t n_states_;
};

}  // namespace fd
