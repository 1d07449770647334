#pragma once

#include <vector>

#include "enpar/game.hpp"

namespace enpar {

// Exact probability of reaching `targets` in a Markov chain, per state.
std::vector<Rational> chain_reach_probs(const Game& mc,
                                        const std::vector<char>& targets);

// Exact maximal probability of reaching `targets` when `chooser` resolves
// its states' choices (all other non-random states must be frozen).
// Policy iteration with exact chain evaluation.
std::vector<Rational> mdp_max_reach(const Game& mdp, Owner chooser,
                                    const std::vector<char>& targets);

}  // namespace enpar
