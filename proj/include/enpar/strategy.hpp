#pragma once

#include <optional>
#include <vector>

#include "enpar/game.hpp"

namespace enpar {

// Memoryless deterministic strategy: one outgoing edge per state of `owner`.
struct MDStrategy {
  Owner owner = Owner::Max;
  // Indexed by state; holds an edge index for states of `owner`, nullopt else.
  std::vector<std::optional<int>> choice;

  bool total_on(const Game& g) const;
  // Throws GameError if a choice references a foreign or missing edge.
  void validate(const Game& g) const;
};

// Finite-memory deterministic strategy (Mealy machine). Memory values are
// dense 0-based ints; `init_for[s]` is the initial memory when starting at s.
struct FDStrategy {
  Owner owner = Owner::Max;
  int memory_size = 1;
  std::vector<int> init_for;            // state -> initial memory
  // choice[m * S + s] = edge index for (memory m, state s), -1 off-domain.
  std::vector<int> choice;
  // update[m * E + e] = next memory after edge e is taken in memory m, -1 if
  // unreachable/undefined.
  std::vector<int> update;

  int choose(int mem, StateId s, int num_states) const {
    return choice[static_cast<size_t>(mem) * num_states + s];
  }
  int next_mem(int mem, int e, int num_edges) const {
    return update[static_cast<size_t>(mem) * num_edges + e];
  }
};

// Fixes `strat` in g: its owner's states keep only the chosen edge. Applying
// it for both players (twice) yields a Markov chain.
Game fix_strategy(const Game& g, const MDStrategy& strat);

// Product of out-degrees over the owner's states.
long long count_md(const Game& g, Owner owner);

// All MD strategies of `owner` in a fixed deterministic order (odometer over
// canonical out-edge lists). Throws ResourceError past `cap`.
std::vector<MDStrategy> enumerate_md(const Game& g, Owner owner, long long cap);

// Identical arena, every reward multiplied by f (f >= 1).
Game scale_rewards(const Game& g, long long f);

}  // namespace enpar
