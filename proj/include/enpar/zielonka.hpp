#pragma once

#include "enpar/game.hpp"
#include "enpar/strategy.hpp"

#include <vector>

namespace enpar {

struct ParityResult {
  std::vector<char> win_max, win_min;
  MDStrategy strat_max;  // defined on win_max's Max states
  MDStrategy strat_min;  // defined on win_min's Min states
};

// Recursive Zielonka on a non-stochastic parity game, min-even convention:
// Max wins a play iff the minimal priority seen infinitely often is even.
// Throws GameError("stochastic-game") when random states are present.
ParityResult zielonka(const Game& pg);

}  // namespace enpar
