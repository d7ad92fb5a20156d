#include "fd/game.hpp"

#include <cmath>
#include <stdexcept>

namespace fd {

Efficiency Efficiency::exp_ratio(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("efficiency: c must be > 0");
  Efficiency e;
  e.kind = Kind::ExpRatio;
  e.c = c;
  return e;
}

Efficiency Efficiency::exp_ratio_from_rate(double r) {
  return exp_ratio(std::exp2(r) - 1.0);
}

Efficiency Efficiency::packet_success(int l) {
  if (l < 1) throw std::invalid_argument("efficiency: L must be >= 1");
  Efficiency e;
  e.kind = Kind::PacketSuccess;
  e.l = l;
  return e;
}

double Efficiency::operator()(double x) const {
  switch (kind) {
    case Kind::ExpRatio:
      if (x <= 0.0) return 0.0;  // continuous extension at zero SNR
      return std::exp(-c / x);
    case Kind::PacketSuccess:
      return std::pow(1.0 - std::exp(-x), static_cast<double>(l));
  }
  return 0.0;
}

GameModel::GameModel(GainGrid g1, GainGrid g1p, GainGrid g2, GainGrid g2p,
                     PowerGrid powers, UtilityParams params)
    : g1_(std::move(g1)),
      g1p_(std::move(g1p)),
      g2_(std::move(g2)),
      g2p_(std::move(g2p)),
      powers_(std::move(powers)),
      params_(params) {
  if (!(params_.alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (!(params_.sigma2 > 0.0)) throw std::invalid_argument("sigma2 must be > 0");
  if (g1_.size() == 0 || g1p_.size() == 0 || g2_.size() == 0 || g2p_.size() == 0 ||
      powers_.size() == 0)
    throw std::invalid_argument("empty grid");
  n_states_ = g1_.size() * g1p_.size() * g2_.size() * g2p_.size();
}

ChannelState GameModel::state_at(std::size_t flat) const {
  ChannelState x;
  x.ig2p = static_cast<std::uint32_t>(flat % g2p_.size());
  flat /= g2p_.size();
  x.ig2 = static_cast<std::uint32_t>(flat % g2_.size());
  flat /= g2_.size();
  x.ig1p = static_cast<std::uint32_t>(flat % g1p_.size());
  flat /= g1p_.size();
  x.ig1 = static_cast<std::uint32_t>(flat);
  return x;
}

double GameModel::snr(int node, const ChannelState& x, const Action& a1,
                      const Action& a2) const {
  if (node == 1)
    return powers_[a1.ip] * g1_[x.ig1] * powers_[a2.ipp] * g2p_[x.ig2p] / params_.sigma2;
  return powers_[a2.ip] * g2_[x.ig2] * powers_[a1.ipp] * g1p_[x.ig1p] / params_.sigma2;
}

double GameModel::phi_term(int node, const ChannelState& x, const Action& a1,
                           const Action& a2) const {
  return params_.phi(snr(node, x, a1, a2));
}

double GameModel::energy_term(int node, const Action& a) const {
  (void)node;
  return -params_.alpha * (powers_[a.ip] + powers_[a.ipp]);
}

double GameModel::utility(int node, const ChannelState& x, const Action& a1,
                          const Action& a2) const {
  return phi_term(node, x, a1, a2) + energy_term(node, node == 1 ? a1 : a2);
}

}  // namespace fd
