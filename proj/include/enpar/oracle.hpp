#pragma once

#include <vector>

#include "enpar/game.hpp"
#include "enpar/storage.hpp"
#include "enpar/strategy.hpp"

namespace enpar {

// Finite realization of EN(k): energy saturates at B above, transitions
// below 0 enter an absorbing odd-priority sink. Saturation only hurts the
// maximizer, so capped verdicts are sound.
struct CappedProduct {
  Game product;
  int base_states = 0;
  long long cap = 0;
  int dead = 0;
  int pid(StateId s, long long e) const {
    return static_cast<int>(e) * base_states + s;
  }
};

CappedProduct build_capped_product(const Game& g, long long B,
                                   const SolveCaps& caps = {});

// Ground truth a.s. parity winning set of an SSG by exhaustive MD-strategy
// enumeration (both players have MD optimal strategies for parity).
std::vector<char> as_parity_enum(const Game& g, const SolveCaps& caps = {});

// a.s. parity via the negotiation gadget and zielonka; scales to products
// where enumeration cannot go.
std::vector<char> as_parity_negotiation(const Game& g);

// True iff Max wins a.s. parity in the capped product from (s, min(k, B)).
// Sound for a.s. EN(k) & Parity in g; completeness is empirical in B.
bool capped_as_energy_parity(const Game& g, StateId s, long long k,
                             long long B, const SolveCaps& caps = {});

struct ChainVerdict {
  bool sure_energy = false;  // every path keeps k + cost >= 0
  bool as_parity = false;    // every reachable BSCC has even min priority
};

// Exact analysis of a Markov chain: in a finite chain every finite path has
// positive probability, so a.s. EN(k) means all paths are safe.
ChainVerdict chain_analyze(const Game& mc, StateId s, long long k);

}  // namespace enpar
