#pragma once

#include <optional>
#include <vector>

#include "enpar/game.hpp"
#include "enpar/simplex.hpp"
#include "enpar/strategy.hpp"

namespace enpar {

struct BiasSolution {
  bool feasible = false;
  Rational gain;
  std::vector<std::optional<Rational>> biases;  // per state of the input game
  // representation-size check: largest component vs 4 m^2 (m+1) (S+1)
  std::size_t max_bits = 0;
  std::size_t bit_bound = 0;
};

// Gain-bias program of a BSCC of a Markov chain: one gain variable g plus a
// bias per component state, b_u = sum prob(u,v) (b_v + cost(u,v)) - g,
// maximize g. The optimal g is the exact mean payoff of the component.
// Throws GameError("not-a-bscc") when `component` is not a BSCC of mc.
BiasSolution leaf_gain_lp(const Game& mc, const std::vector<StateId>& component);

// The trade-in bias program: nonnegative biases with the strict rows
//   b_u < b_{tau(u)} + cost(u,tau(u)) - 2        (Min states)
//   b_u < b_{sigma(u)} + cost(u,sigma(u)) - 2    (Max states)
//   b_u < sum prob(u,v) (b_v + cost(u,v)) - 2    (Random states)
// for every state with strict_states[u], objective minimize sum of biases.
// Variables exist for strict states and every state they reference; `exempt`
// states get only the nonnegativity row (the collapsed awesome state).
// Infeasibility is a value (feasible = false), signalling a broken caller
// precondition.
BiasSolution tau_bias_program(const Game& h, const MDStrategy& sigma,
                              const MDStrategy& tau,
                              const std::vector<char>& strict_states,
                              const std::vector<char>& exempt);

}  // namespace enpar
