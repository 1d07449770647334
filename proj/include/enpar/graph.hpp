#pragma once

#include <vector>

#include "enpar/game.hpp"
#include "enpar/strategy.hpp"

namespace enpar {

enum class ComponentKind { SCC, MEC, BSCC, LeafComponent };

struct ComponentSet {
  ComponentKind kind = ComponentKind::SCC;
  std::vector<std::vector<StateId>> components;  // disjoint, each sorted

  // component index per state, -1 if in none.
  std::vector<int> index_of(int num_states) const;
};

struct TrapSet {
  std::vector<char> states;  // mask over g's states
  std::vector<char> within;
  bool maximal = false;
};

// Strongly connected components of the induced subgraph on `alive`
// (edges with both endpoints alive). Singleton components only count as
// strongly connected when they carry a self-loop, except in raw SCC output
// where every alive state lands in exactly one component.
ComponentSet sccs(const Game& g, const std::vector<char>& alive);

struct AttractorResult {
  std::vector<char> set;
  // Attractor strategy for the forcing player on set \ targets (edge index).
  std::vector<std::optional<int>> strategy;
};

// Classical alternating attractor of `player` to `targets`. Random states are
// treated as the opposing player's universal choice when `random_as_opponent`
// (sure forcing); with random_as_ally they count existentially (positive-
// probability forcing). Non-stochastic games are unaffected by the flag.
enum class RandomTreatment { AsOpponent, AsAlly };
AttractorResult attractor_forced(const Game& g, Owner player,
                                 const std::vector<char>& targets,
                                 RandomTreatment random_treatment,
                                 const std::vector<char>* alive = nullptr);

struct ReachResult {
  std::vector<char> win;
  MDStrategy strategy;  // memoryless witness on win
};

// Almost-sure reachability for Max against every minimizer strategy.
// Qualitative iteration: repeatedly remove states from which Min can force a
// positive probability of leaving the candidate region; <= |V| rounds.
ReachResult as_reach(const Game& g, const std::vector<char>& targets,
                     const std::vector<char>* alive = nullptr);

// Maximal end components of an MDP (Min frozen: out-degree one Min states are
// treated like Random for closure). Throws if a Min state still has choices.
ComponentSet max_end_components(const Game& mdp,
                                const std::vector<char>* alive = nullptr);

// Bottom SCCs of a Markov chain (both players frozen).
ComponentSet bsccs(const Game& mc);

// Unique maximal minimizer-trap contained in `within`: Min/Random states keep
// all successors inside, Max states keep at least one.
TrapSet maximal_trap(const Game& g, const std::vector<char>& within);

}  // namespace enpar
