#include "enpar/storage.hpp"

#include <algorithm>

#include "enpar/zielonka.hpp"

namespace enpar {

long long bound_K(const Game& g) {
  long long n = std::max(1, g.num_states());
  long long c = std::max(1, g.max_priority());
  long long r = std::max<long long>(1, g.max_abs_reward());
  if (n > 0 && c > std::numeric_limits<long long>::max() / n)
    throw ResourceError("K bound overflows");
  long long nc = n * c;
  if (r > std::numeric_limits<long long>::max() / nc)
    throw ResourceError("K bound overflows");
  return nc * r;
}

StorageProduct build_storage_product(const Game& g, long long l,
                                     const SolveCaps& caps) {
  if (l < 0) throw GameError("bad-bound", "store bound must be >= 0");
  const int n = g.num_states();
  long long rows = l + 1;
  long long total = rows * n + 1;
  if (total > caps.max_product_states)
    throw ResourceError("storage product would have " + std::to_string(total) +
                        " states (cap " +
                        std::to_string(caps.max_product_states) + ")");

  StorageProduct sp;
  sp.base_states = n;
  sp.levels = rows;
  sp.dead = static_cast<int>(rows * n);

  std::vector<State> states(total);
  for (long long r = 0; r < rows; ++r)
    for (int s = 0; s < n; ++s) states[sp.pid(s, r)] = g.state(s);
  states[sp.dead] = {Owner::Max, 1};  // absorbing, odd: losing for Max

  // Build edges together with their base-edge provenance, then map through
  // the Game's canonical reordering.
  std::vector<Edge> edges;
  std::vector<int> origin_unsorted;
  for (long long r = 0; r < rows; ++r) {
    for (int s = 0; s < n; ++s) {
      for (int ei : g.out(s)) {
        const Edge& e = g.edge(ei);
        long long nr = r + e.reward;
        int dst = nr < 0 ? sp.dead : sp.pid(e.dst, std::min(nr, l));
        edges.push_back({sp.pid(s, r), dst, e.reward, e.prob});
        origin_unsorted.push_back(ei);
      }
    }
  }
  edges.push_back({sp.dead, sp.dead, 0, std::nullopt});
  origin_unsorted.push_back(-1);

  // Pair up before canonical sorting so provenance survives.
  std::vector<int> order(edges.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  auto key = [&](int i) {
    const Edge& e = edges[i];
    return std::tuple(e.src, e.dst, e.reward,
                      e.prob ? numerator(*e.prob) : Int(0),
                      e.prob ? denominator(*e.prob) : Int(0), i);
  };
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return key(a) < key(b); });
  std::vector<Edge> sorted;
  sorted.reserve(edges.size());
  sp.edge_origin.reserve(edges.size());
  for (int i : order) {
    sorted.push_back(edges[i]);
    sp.edge_origin.push_back(origin_unsorted[i]);
  }
  sp.product = Game(g.name() + "@store", std::move(states), std::move(sorted));
  // Game keeps a stable sort of an already-sorted sequence, so indices align;
  // verify to be safe.
  for (int i = 0; i < sp.product.num_edges(); ++i) {
    const Edge& a = sp.product.edge(i);
    const Edge& b = edges[order[i]];
    if (!(a == b)) throw GameError("internal", "product edge order drifted");
  }
  return sp;
}

StorageResult storage_parity(const Game& g, long long k, long long l,
                             const SolveCaps& caps) {
  if (g.has_random_states())
    throw GameError("stochastic-game", "storage_parity needs a non-stochastic game");
  if (k < 0 || l < 0) throw GameError("bad-bound", "k and l must be >= 0");
  StorageProduct sp = build_storage_product(g, l, caps);
  ParityResult pr = zielonka(sp.product);

  const int n = g.num_states();
  long long start = std::min(k, l);
  StorageResult res;
  res.store_bound = l;
  res.win.assign(n, 0);
  res.min_level.assign(n, std::nullopt);
  for (int s = 0; s < n; ++s) {
    res.win[s] = pr.win_max[sp.pid(s, start)];
    for (long long r = 0; r <= l; ++r) {
      if (pr.win_max[sp.pid(s, r)]) {
        res.min_level[s] = r;
        break;
      }
    }
  }

  // FD witness: memory = store level; choices projected from the product.
  FDStrategy& fd = res.witness;
  fd.owner = Owner::Max;
  fd.memory_size = static_cast<int>(l + 1);
  fd.init_for.assign(n, static_cast<int>(start));
  fd.choice.assign(static_cast<size_t>(fd.memory_size) * n, -1);
  fd.update.assign(static_cast<size_t>(fd.memory_size) * g.num_edges(), -1);
  for (long long r = 0; r <= l; ++r) {
    for (int e = 0; e < g.num_edges(); ++e) {
      long long nr = r + g.edge(e).reward;
      if (nr < 0) continue;  // losing move; never taken from winning states
      fd.update[static_cast<size_t>(r) * g.num_edges() + e] =
          static_cast<int>(std::min(nr, l));
    }
    for (int s = 0; s < n; ++s) {
      if (g.owner(s) != Owner::Max) continue;
      auto pc = pr.strat_max.choice[sp.pid(s, r)];
      if (!pc) continue;
      int base_edge = sp.edge_origin[*pc];
      if (base_edge >= 0)
        fd.choice[static_cast<size_t>(r) * n + s] = base_edge;
    }
  }
  return res;
}

StorageResult energy_parity(const Game& g, long long k, const SolveCaps& caps) {
  long long K = bound_K(g);
  return storage_parity(g, std::min(k, K), K, caps);
}

CreditTable minimal_credit(const Game& g, const SolveCaps& caps) {
  long long K = bound_K(g);
  StorageResult full = storage_parity(g, K, K, caps);
  CreditTable table;
  table.credit.assign(g.num_states(), std::nullopt);
  for (int s = 0; s < g.num_states(); ++s) {
    if (!full.min_level[s]) continue;  // unwinnable at every level
    // Binary search the least winning k over the monotone predicate
    // "s wins EN(k) & Parity", read off the solved product rows.
    long long lo = 0, hi = K;
    auto wins_at = [&](long long k) { return *full.min_level[s] <= std::min(k, K); };
    if (!wins_at(K)) continue;
    while (lo < hi) {
      long long mid = lo + (hi - lo) / 2;
      if (wins_at(mid)) hi = mid;
      else lo = mid + 1;
    }
    table.credit[s] = lo;
  }
  return table;
}

}  // namespace enpar
