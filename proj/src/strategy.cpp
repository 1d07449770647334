#include "enpar/strategy.hpp"

#include <limits>

namespace enpar {

long long count_md(const Game& g, Owner owner) {
  long long count = 1;
  for (int s = 0; s < g.num_states(); ++s) {
    if (g.owner(s) != owner) continue;
    long long deg = static_cast<long long>(g.out(s).size());
    if (count > std::numeric_limits<long long>::max() / deg)
      return std::numeric_limits<long long>::max();
    count *= deg;
  }
  return count;
}

std::vector<MDStrategy> enumerate_md(const Game& g, Owner owner,
                                     long long cap) {
  long long total = count_md(g, owner);
  if (total > cap)
    throw ResourceError("strategy count " + std::to_string(total) +
                        " exceeds cap " + std::to_string(cap));
  std::vector<int> owned;
  for (int s = 0; s < g.num_states(); ++s)
    if (g.owner(s) == owner) owned.push_back(s);
  std::vector<MDStrategy> out;
  out.reserve(static_cast<size_t>(total));
  std::vector<size_t> pick(owned.size(), 0);
  for (;;) {
    MDStrategy st;
    st.owner = owner;
    st.choice.assign(g.num_states(), std::nullopt);
    for (size_t i = 0; i < owned.size(); ++i)
      st.choice[owned[i]] = g.out(owned[i])[pick[i]];
    out.push_back(std::move(st));
    size_t i = 0;
    for (; i < owned.size(); ++i) {
      if (++pick[i] < g.out(owned[i]).size()) break;
      pick[i] = 0;
    }
    if (i == owned.size()) break;
  }
  return out;
}

bool MDStrategy::total_on(const Game& g) const {
  for (int s = 0; s < g.num_states(); ++s)
    if (g.owner(s) == owner && (static_cast<size_t>(s) >= choice.size() || !choice[s]))
      return false;
  return true;
}

void MDStrategy::validate(const Game& g) const {
  for (int s = 0; s < g.num_states(); ++s) {
    if (g.owner(s) != owner) continue;
    if (static_cast<size_t>(s) >= choice.size() || !choice[s]) {
      throw GameError("partial-strategy",
                      "strategy undefined on state " + std::to_string(s));
    }
    int e = *choice[s];
    if (e < 0 || e >= g.num_edges() || g.edge(e).src != s) {
      throw GameError("bad-strategy-edge",
                      "strategy maps state " + std::to_string(s) +
                          " to a missing edge");
    }
  }
}

Game fix_strategy(const Game& g, const MDStrategy& strat) {
  strat.validate(g);
  std::vector<Edge> edges;
  for (int s = 0; s < g.num_states(); ++s) {
    if (g.owner(s) == strat.owner) {
      edges.push_back(g.edge(*strat.choice[s]));
    } else {
      for (int ei : g.out(s)) edges.push_back(g.edge(ei));
    }
  }
  return Game(g.name(), g.states(), std::move(edges));
}

Game scale_rewards(const Game& g, long long f) {
  if (f < 1) throw GameError("bad-factor", "scale factor must be >= 1");
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) {
    // 64-bit overflow guard; desk-scale inputs never get near this.
    if (e.reward != 0 &&
        (e.reward > std::numeric_limits<long long>::max() / f ||
         e.reward < std::numeric_limits<long long>::min() / f)) {
      throw ResourceError("reward scaling overflows");
    }
    e.reward *= f;
  }
  return Game(g.name(), g.states(), std::move(edges));
}

}  // namespace enpar
