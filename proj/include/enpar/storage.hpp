#pragma once

#include <optional>
#include <vector>

#include "enpar/game.hpp"
#include "enpar/strategy.hpp"

namespace enpar {

// Resource caps, overridable via ENPAR_CAPS (see cli).
struct SolveCaps {
  long long max_product_states = 2'000'000;
  long long max_md_strategies = 1 << 14;
  long long khat_cap = 4096;
};

// nV * c * R with every factor clamped to >= 1: the saturation bound for
// non-stochastic energy-parity on this game.
long long bound_K(const Game& g);

// Saturated-store product of a non-stochastic game: states (s, r) with
// r in [0, l], update r' = min(r + reward, l), transitions below 0 enter an
// absorbing odd-priority sink. A run satisfies ES(k, l) iff the counter
// started at min(k, l) never goes negative.
struct StorageProduct {
  Game product;
  int base_states = 0;
  long long levels = 0;  // store values 0..levels-1... see pid()
  int dead = 0;          // sink product id

  int pid(StateId s, long long r) const {
    return static_cast<int>(r) * base_states + s;
  }
  // product edge index -> base edge index (-1 for the sink loop)
  std::vector<int> edge_origin;
};

StorageProduct build_storage_product(const Game& g, long long l,
                                     const SolveCaps& caps = {});

struct StorageResult {
  std::vector<char> win;  // base states winning ES(k,l) & Parity surely
  FDStrategy witness;     // memory = store values 0..l
  // least start level r with (s, r) winning, per base state
  std::vector<std::optional<long long>> min_level;
  long long store_bound = 0;  // the l used
};

// Sure winning of ES(k,l) & Parity in a non-stochastic game; FD witness with
// memory = store values.
StorageResult storage_parity(const Game& g, long long k, long long l,
                             const SolveCaps& caps = {});

// Winning EN(k) & Parity for arbitrary k via saturation at K = bound_K(g):
// equals storage_parity(g, min(k, K), K).
StorageResult energy_parity(const Game& g, long long k,
                            const SolveCaps& caps = {});

struct CreditTable {
  // minimal winning initial credit per state; nullopt = unwinnable
  std::vector<std::optional<long long>> credit;
};

// Least k with s winning EN(k) & Parity, by binary search over [0, K].
CreditTable minimal_credit(const Game& g, const SolveCaps& caps = {});

}  // namespace enpar
