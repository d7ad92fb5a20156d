#pragma once

#include <cstddef>

#include "fd/optimizer.hpp"

namespace fd {

// One-shot equilibrium reference point over constant (CSI-free) actions.
struct NashBaseline {
  Action a1, a2;
  double u1 = 0.0;  // expected utilities under rho
  double u2 = 0.0;
  bool converged = true;
  std::size_t iterations = 0;
};

// The "don't transmit" equilibrium of the original dilemma, embedded on the
// discrete grid as the all-minimum-power profile.
NashBaseline hub_nash(const Problem& problem);

// Alternating exact best response on the expected one-shot game over constant
// actions, starting from all-min; lowest-index tie-break. converged = false
// when no fixed point is reached within max_iters.
NashBaseline one_shot_nash(const Problem& problem, std::size_t max_iters);

// Expected one-shot utility of a constant action profile under rho.
std::pair<double, double> expected_profile_utilities(const Problem& problem, const Action& a1,
                                                     const Action& a2);

}  // namespace fd
