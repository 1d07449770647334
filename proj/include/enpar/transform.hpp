#pragma once

#include <optional>
#include <vector>

#include "enpar/game.hpp"

namespace enpar {

enum class TransformKind {
  Restrict,
  EnergyTrade,
  Negotiation,
  Blowup,
  Normalize,
  TradeIn,
  Prune,
  Collapse,
};

// A game transformation result. Original states map to themselves where they
// survive; gadget states map to nullopt.
struct Transform {
  Game output;
  TransformKind kind = TransformKind::Restrict;
  // output state -> originating state of the input game (nullopt for fresh
  // gadget states).
  std::vector<std::optional<StateId>> origin;

  // Input state -> output state carrying it (nullopt if dropped/merged away).
  // Inverse of `origin` restricted to surviving originals.
  std::vector<std::optional<StateId>> image;
};

// Composes provenance: origin of `second` followed by origin of `first`.
std::vector<std::optional<StateId>> compose_origin(
    const std::vector<std::optional<StateId>>& first,
    const std::vector<std::optional<StateId>>& second);

// Subgame over `keep`. Kept Min/Random states must have all successors kept;
// kept Max states need at least one kept successor (edges into removed states
// are dropped only from Max states).
Transform restrict_game(const Game& g, const std::vector<char>& keep);

// Shrinks `keep` to the largest subset on which restrict_game is legal
// (possibly empty). Returns the mask.
std::vector<char> legalize_subgame(const Game& g, std::vector<char> keep);

// Builds a Game while tracking where each canonical edge came from:
// perm[i] = index into the input edge vector for output edge i.
struct TrackedGame {
  Game game;
  std::vector<int> perm;
};
TrackedGame build_game_tracked(std::string name, std::vector<State> states,
                               std::vector<Edge> edges);

}  // namespace enpar
