#include "enpar/transform.hpp"

#include <algorithm>
#include <tuple>

namespace enpar {

TrackedGame build_game_tracked(std::string name, std::vector<State> states,
                               std::vector<Edge> edges) {
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
  for (int i : order) sorted.push_back(edges[i]);
  TrackedGame out{Game(std::move(name), std::move(states), std::move(sorted)),
                  std::move(order)};
  return out;
}

std::vector<std::optional<StateId>> compose_origin(
    const std::vector<std::optional<StateId>>& first,
    const std::vector<std::optional<StateId>>& second) {
  std::vector<std::optional<StateId>> out(second.size());
  for (size_t s = 0; s < second.size(); ++s) {
    if (second[s] && *second[s] >= 0 &&
        static_cast<size_t>(*second[s]) < first.size()) {
      out[s] = first[*second[s]];
    }
  }
  return out;
}

Transform restrict_game(const Game& g, const std::vector<char>& keep) {
  const int n = g.num_states();
  std::vector<StateId> new_id(n, -1);
  std::vector<State> states;
  std::vector<std::optional<StateId>> origin;
  for (int s = 0; s < n; ++s) {
    if (!keep[s]) continue;
    new_id[s] = static_cast<StateId>(states.size());
    states.push_back(g.state(s));
    origin.push_back(s);
  }
  std::vector<Edge> edges;
  for (int s = 0; s < n; ++s) {
    if (!keep[s]) continue;
    bool has_kept_succ = false;
    for (int ei : g.out(s)) {
      const Edge& e = g.edge(ei);
      if (keep[e.dst]) {
        has_kept_succ = true;
        edges.push_back(
            {new_id[s], new_id[e.dst], e.reward, e.prob});
      } else if (g.owner(s) != Owner::Max) {
        throw GameError("illegal-restriction",
                        std::string(owner_name(g.owner(s))) + " state " +
                            std::to_string(s) + " has successor " +
                            std::to_string(e.dst) + " outside the subgame");
      }
    }
    if (!has_kept_succ) {
      throw GameError("illegal-restriction",
                      "state " + std::to_string(s) +
                          " would be blocked in the subgame");
    }
  }
  Transform t;
  t.kind = TransformKind::Restrict;
  t.output = Game(g.name(), std::move(states), std::move(edges));
  t.origin = std::move(origin);
  t.image.assign(n, std::nullopt);
  for (int s = 0; s < n; ++s)
    if (new_id[s] >= 0) t.image[s] = new_id[s];
  return t;
}

std::vector<char> legalize_subgame(const Game& g, std::vector<char> keep) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < g.num_states(); ++s) {
      if (!keep[s]) continue;
      bool any_in = false, all_in = true;
      for (int ei : g.out(s)) {
        if (keep[g.edge(ei).dst]) any_in = true;
        else all_in = false;
      }
      bool ok = g.owner(s) == Owner::Max ? any_in : all_in;
      if (!ok) {
        keep[s] = 0;
        changed = true;
      }
    }
  }
  return keep;
}

}  // namespace enpar
