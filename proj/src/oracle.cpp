#include "enpar/oracle.hpp"

#include <algorithm>
#include <limits>

#include "enpar/gadgets.hpp"
#include "enpar/graph.hpp"
#include "enpar/zielonka.hpp"

namespace enpar {

CappedProduct build_capped_product(const Game& g, long long B,
                                   const SolveCaps& caps) {
  if (B < 0) throw GameError("bad-bound", "cap must be >= 0");
  const int n = g.num_states();
  long long rows = B + 1;
  long long total = rows * n + 1;
  if (total > caps.max_product_states)
    throw ResourceError("capped product would have " + std::to_string(total) +
                        " states");
  CappedProduct cp;
  cp.base_states = n;
  cp.cap = B;
  cp.dead = static_cast<int>(rows * n);
  std::vector<State> states(total);
  for (long long e = 0; e < rows; ++e)
    for (int s = 0; s < n; ++s) states[cp.pid(s, e)] = g.state(s);
  states[cp.dead] = {Owner::Max, 1};
  std::vector<Edge> edges;
  for (long long lvl = 0; lvl < rows; ++lvl) {
    for (int s = 0; s < n; ++s) {
      for (int ei : g.out(s)) {
        const Edge& e = g.edge(ei);
        long long ne = lvl + e.reward;
        int dst = ne < 0 ? cp.dead : cp.pid(e.dst, std::min(ne, B));
        edges.push_back({cp.pid(s, lvl), dst, e.reward, e.prob});
      }
    }
  }
  edges.push_back({cp.dead, cp.dead, 0, std::nullopt});
  cp.product = Game(g.name() + "@cap", std::move(states), std::move(edges));
  return cp;
}

namespace {

// reachable BSCCs all even, for one fixed chain
bool chain_as_parity_from(const Game& chain, StateId start) {
  ComponentSet leafs = bsccs(chain);
  std::vector<int> leaf_of = leafs.index_of(chain.num_states());
  std::vector<char> seen(chain.num_states(), 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    if (leaf_of[s] >= 0) {
      int mp = chain.priority(s);
      for (StateId t : leafs.components[leaf_of[s]])
        mp = std::min(mp, chain.priority(t));
      if (mp % 2 != 0) return false;
    }
    for (int ei : chain.out(s)) {
      int t = chain.edge(ei).dst;
      if (!seen[t]) {
        seen[t] = 1;
        stack.push_back(t);
      }
    }
  }
  return true;
}

}  // namespace

std::vector<char> as_parity_enum(const Game& g, const SolveCaps& caps) {
  auto sigmas = enumerate_md(g, Owner::Max, caps.max_md_strategies);
  auto taus = enumerate_md(g, Owner::Min, caps.max_md_strategies);
  const int n = g.num_states();
  std::vector<char> win(n, 0);
  for (const auto& sigma : sigmas) {
    Game gs = fix_strategy(g, sigma);
    std::vector<char> ok(n, 1);
    for (const auto& tau : taus) {
      Game chain = fix_strategy(gs, tau);
      for (int s = 0; s < n; ++s)
        if (ok[s] && !chain_as_parity_from(chain, s)) ok[s] = 0;
    }
    for (int s = 0; s < n; ++s) win[s] |= ok[s];
  }
  return win;
}

std::vector<char> as_parity_negotiation(const Game& g) {
  Transform t = negotiation(g);
  ParityResult pr = zielonka(t.output);
  std::vector<char> win(g.num_states(), 0);
  for (int s = 0; s < g.num_states(); ++s)
    win[s] = pr.win_max[*t.image[s]];
  return win;
}

bool capped_as_energy_parity(const Game& g, StateId s, long long k,
                             long long B, const SolveCaps& caps) {
  if (B < k) throw GameError("bad-bound", "cap below initial credit");
  CappedProduct cp = build_capped_product(g, B, caps);
  std::vector<char> win = as_parity_negotiation(cp.product);
  return win[cp.pid(s, std::min(k, B))];
}

ChainVerdict chain_analyze(const Game& mc, StateId s, long long k) {
  if (!mc.is_chain() || !mc.min_is_frozen())
    throw GameError("free-player-states", "chain analysis needs a chain");
  const int n = mc.num_states();
  ChainVerdict v;

  // minimal cumulative cost over walks from s (Bellman-Ford with negative
  // cycle detection); a violation anywhere on any path kills sure energy.
  const long long inf = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> dist(n, inf);
  dist[s] = 0;
  bool negative_cycle = false;
  for (int round = 0; round < n && !negative_cycle; ++round) {
    bool relaxed = false;
    for (const Edge& e : mc.edges()) {
      if (dist[e.src] >= inf) continue;
      if (dist[e.src] + e.reward < dist[e.dst]) {
        dist[e.dst] = dist[e.src] + e.reward;
        relaxed = true;
        if (round == n - 1) negative_cycle = true;
      }
    }
    if (!relaxed) break;
  }
  v.sure_energy = !negative_cycle;
  if (v.sure_energy)
    for (int t = 0; t < n; ++t)
      if (dist[t] < inf && k + dist[t] < 0) v.sure_energy = false;

  v.as_parity = chain_as_parity_from(mc, s);
  return v;
}

}  // namespace enpar
