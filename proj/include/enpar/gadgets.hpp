#pragma once

#include <vector>

#include "enpar/gain_bias.hpp"
#include "enpar/game.hpp"
#include "enpar/storage.hpp"
#include "enpar/strategy.hpp"
#include "enpar/transform.hpp"

namespace enpar {

// G -> G': every edge s -> t with reward a > 0 becomes the 4-edge gadget
//   s -> s' (0),  s' -> t (+a),  s' -> t' (0),  t' -> t (0)
// with s' Max-owned at priority(s) and t' Max-owned at priority 0, letting
// maximizer trade an energy increase for a visit to the best priority.
Transform energy_trade(const Game& g);

// G' -> G'': random states replaced by two-player negotiation gadgets.
// Maximizer announces an even priority gamma; minimizer either concedes it
// (passing a priority-gamma state and choosing the successor) or charges
// gamma+1 and hands the successor choice to maximizer. Rewards ride on the
// final gadget edge, so transition rewards are preserved. The output is
// non-stochastic and almost-sure parity is preserved state by state.
Transform negotiation(const Game& g);

// Every random state gets exactly two successor edges (distributions are
// binarized through fresh intermediate random states, exact probabilities)
// and a unique Max-owned predecessor relay (priority = max priority of g,
// zero-reward pass-through).
Transform normalize_random(const Game& g);

struct BlowupResult {
  Transform transform;
  long long factor = 1;
};

// G -> G1: rewards scaled by f = 1 + floor(2 / p_min) where p_min is the
// minimal positive leaf-component gain over all (sigma, tau, leaf) triples,
// or f = 3 when no positive leaf exists.
BlowupResult blowup(const Game& g, const SolveCaps& caps = {});

// Union of the awesome end components of g1[tau_star] that admit no
// MP>0 & Parity strategy, merged into one absorbing state u_a with even
// priority and a +3 self-loop. Identity when no such component exists.
struct CollapseResult {
  Transform transform;
  std::vector<char> collapsed;     // input states merged away
  std::optional<StateId> awesome;  // id of u_a in the output, if any
};
CollapseResult collapse_awesome_zero(const Game& g1, const MDStrategy& tau_star,
                                     const SolveCaps& caps = {});

// One trade-in alternative for a random state of a normalized game: the
// fresh random state mirrors `base`'s branch probabilities with rebalanced
// branch rewards floor(1 + b_s - b_t).
struct TradeInSpec {
  StateId base = 0;
  std::vector<long long> rewards;  // per canonical out-edge of base
};

// Builds the trade-in family for one minimizer strategy from its bias
// solution; random states without biases contribute nothing. Throws
// GameError("missing-bias") when a covered state's successor bias is absent.
std::vector<TradeInSpec> trade_in_specs(const Game& gU,
                                        const BiasSolution& biases);

// gU plus one fresh random state per spec, wired through the unique Max
// predecessor. spec_of_state maps output states to spec indices (-1 for
// base states); edge_origin maps output edges to base edges (-1 for fresh).
struct ComposedGame {
  Game game;
  std::vector<std::optional<StateId>> origin;
  std::vector<int> spec_of_state;
  std::vector<int> edge_origin;
};
ComposedGame compose_tradeins(const Game& gU,
                              const std::vector<TradeInSpec>& specs);

// Exact expected branch reward of a spec vs its base state (the trade-in
// sacrifice check: expected new <= expected old - 1).
Rational tradein_expected_reward(const Game& gU, const TradeInSpec& spec);
Rational base_expected_reward(const Game& gU, StateId s);

// Keeps base states plus selected trade-ins; drops originals where
// keep_original is false. Enforces the per-state bound (at most
// 2 * |gU states| trade-ins per random state) and rejects blocked relays.
ComposedGame prune_to_candidate(const Game& gU,
                                const std::vector<TradeInSpec>& specs,
                                const std::vector<char>& keep_spec,
                                const std::vector<char>& keep_original);

}  // namespace enpar
