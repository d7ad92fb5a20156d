#include "fd/stochastic.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fd {

std::vector<double> discretized_marginal(const GainGrid& grid, const GainLaw& law) {
  const std::size_t n = grid.size();
  std::vector<double> pmf(n, 0.0);
  switch (law.kind) {
    case GainLaw::Kind::Uniform: {
      const double p = 1.0 / static_cast<double>(n);
      for (auto& v : pmf) v = p;
      return pmf;
    }
    case GainLaw::Kind::Explicit: {
      if (law.pmf.size() != n)
        throw std::invalid_argument("explicit pmf length does not match grid size");
      double sum = 0.0;
      for (double v : law.pmf) {
        if (v < 0.0) throw std::invalid_argument("explicit pmf has a negative entry");
        sum += v;
      }
      if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("explicit pmf does not sum to 1");
      pmf = law.pmf;
      for (auto& v : pmf) v /= sum;
      return pmf;
    }
    case GainLaw::Kind::Exponential: {
      if (!(law.mean > 0.0))
        throw std::invalid_argument("exponential law requires mean > 0");
      if (n == 1) {
        pmf[0] = 1.0;
        return pmf;
      }
      const double rate = 1.0 / law.mean;
      // Voronoi cell boundaries: midpoints between levels; [0, b0), ..., [b_{n-2}, inf)
      double lower_cdf = 0.0;  // CDF at lower boundary of current cell
      for (std::size_t k = 0; k + 1 < n; ++k) {
        const double upper = 0.5 * (grid[k] + grid[k + 1]);
        const double upper_cdf = 1.0 - std::exp(-rate * upper);
        pmf[k] = upper_cdf - lower_cdf;
        lower_cdf = upper_cdf;
      }
      pmf[n - 1] = 1.0 - lower_cdf;
      const double sum = std::accumulate(pmf.begin(), pmf.end(), 0.0);
      for (auto& v : pmf) v /= sum;
      return pmf;
    }
  }
  throw std::logic_error("unreachable");
}

static void check_pmf(const std::vector<double>& pmf, const char* what) {
  if (pmf.empty()) throw std::invalid_argument(std::string(what) + ": empty pmf");
  double sum = 0.0;
  for (double v : pmf) {
    if (v < 0.0) throw std::invalid_argument(std::string(what) + ": negative entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument(std::string(what) + ": pmf does not sum to 1");
}

StateDistribution product_state_distribution(std::vector<double> m1, std::vector<double> m1p,
                                             std::vector<double> m2, std::vector<double> m2p) {
  check_pmf(m1, "marginal g1");
  check_pmf(m1p, "marginal g1'");
  check_pmf(m2, "marginal g2");
  check_pmf(m2p, "marginal g2'");
  StateDistribution d;
  d.m1 = std::move(m1);
  d.m1p = std::move(m1p);
  d.m2 = std::move(m2);
  d.m2p = std::move(m2p);
  return d;
}

std::vector<double> StateDistribution::flatten(const GameModel& model) const {
  if (m1.size() != model.g1().size() || m1p.size() != model.g1p().size() ||
      m2.size() != model.g2().size() || m2p.size() != model.g2p().size())
    throw std::invalid_argument("state distribution does not match model grids");
  std::vector<double> rho(model.num_states());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = mass(model.state_at(i));
  return rho;
}

std::string SignalSpace::describe(const GameModel& model, std::size_t signal) const {
  switch (content) {
    case Content::FullState: {
      const ChannelState x = model.state_at(signal);
      return "x0=(g1[" + std::to_string(x.ig1) + "],g1'[" + std::to_string(x.ig1p) +
             "],g2[" + std::to_string(x.ig2) + "],g2'[" + std::to_string(x.ig2p) + "])";
    }
    case Content::OwnLinks: {
      // signal = ig * Np + igp for the observing node's two link gains
      return "(g[" + std::to_string(signal / model.g1p().size()) + "],g'[" +
             std::to_string(signal % model.g1p().size()) + "])";
    }
    case Content::Single:
      return "none";
    case Content::Abstract:
      return "s" + std::to_string(signal);
  }
  return {};
}

ObservationStructure global_csi(const GameModel& model) {
  ObservationStructure obs;
  obs.kind = ObservationStructure::Kind::Deterministic;
  const std::size_t n = model.num_states();
  obs.h1.resize(n);
  obs.h2.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    obs.h1[i] = obs.h2[i] = static_cast<std::uint32_t>(i);
  obs.s1_space = {n, SignalSpace::Content::FullState};
  obs.s2_space = {n, SignalSpace::Content::FullState};
  return obs;
}

ObservationStructure local_csi(const GameModel& model) {
  ObservationStructure obs;
  obs.kind = ObservationStructure::Kind::Deterministic;
  const std::size_t n = model.num_states();
  obs.h1.resize(n);
  obs.h2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ChannelState x = model.state_at(i);
    obs.h1[i] = static_cast<std::uint32_t>(x.ig1 * model.g1p().size() + x.ig1p);
    obs.h2[i] = static_cast<std::uint32_t>(x.ig2 * model.g2p().size() + x.ig2p);
  }
  obs.s1_space = {model.g1().size() * model.g1p().size(), SignalSpace::Content::OwnLinks};
  obs.s2_space = {model.g2().size() * model.g2p().size(), SignalSpace::Content::OwnLinks};
  return obs;
}

ObservationStructure blind_csi(const GameModel& model) {
  ObservationStructure obs;
  obs.kind = ObservationStructure::Kind::Deterministic;
  obs.h1.assign(model.num_states(), 0);
  obs.h2.assign(model.num_states(), 0);
  obs.s1_space = {1, SignalSpace::Content::Single};
  obs.s2_space = {1, SignalSpace::Content::Single};
  return obs;
}

static void check_rows(const std::vector<std::vector<double>>& k, const char* what) {
  if (k.empty()) throw std::invalid_argument(std::string(what) + ": empty kernel");
  const std::size_t cols = k.front().size();
  if (cols == 0) throw std::invalid_argument(std::string(what) + ": empty rows");
  for (const auto& row : k) {
    if (row.size() != cols)
      throw std::invalid_argument(std::string(what) + ": ragged kernel");
    double sum = 0.0;
    for (double v : row) {
      if (v < 0.0) throw std::invalid_argument(std::string(what) + ": negative entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::invalid_argument(std::string(what) + ": row does not sum to 1");
  }
}

ObservationStructure product_kernel(std::vector<std::vector<double>> k1,
                                    std::vector<std::vector<double>> k2) {
  check_rows(k1, "kernel 1");
  check_rows(k2, "kernel 2");
  if (k1.size() != k2.size())
    throw std::invalid_argument("kernels have different state counts");
  ObservationStructure obs;
  obs.kind = ObservationStructure::Kind::ProductKernel;
  obs.s1_space = {k1.front().size(), SignalSpace::Content::Abstract};
  obs.s2_space = {k2.front().size(), SignalSpace::Content::Abstract};
  obs.k1 = std::move(k1);
  obs.k2 = std::move(k2);
  return obs;
}

Lottery uniform_lottery(std::size_t size) {
  if (size == 0) throw std::invalid_argument("lottery: size must be >= 1");
  Lottery v;
  v.pmf.assign(size, 1.0 / static_cast<double>(size));
  return v;
}

}  // namespace fd
