#include "enpar/graph.hpp"

#include <algorithm>

#include "enpar/transform.hpp"

namespace enpar {

std::vector<int> ComponentSet::index_of(int num_states) const {
  std::vector<int> idx(num_states, -1);
  for (size_t c = 0; c < components.size(); ++c)
    for (StateId s : components[c]) idx[s] = static_cast<int>(c);
  return idx;
}

// Iterative Tarjan.
ComponentSet sccs(const Game& g, const std::vector<char>& alive) {
  const int n = g.num_states();
  std::vector<int> index(n, -1), low(n, 0), on_stack(n, 0);
  std::vector<int> stack;
  ComponentSet out;
  out.kind = ComponentKind::SCC;
  int counter = 0;

  struct Frame {
    int s;
    size_t next_edge;
  };
  for (int root = 0; root < n; ++root) {
    if (!alive[root] || index[root] != -1) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next_edge < g.out(f.s).size()) {
        int t = g.edge(g.out(f.s)[f.next_edge++]).dst;
        if (!alive[t]) continue;
        if (index[t] == -1) {
          index[t] = low[t] = counter++;
          stack.push_back(t);
          on_stack[t] = 1;
          call.push_back({t, 0});
        } else if (on_stack[t]) {
          low[f.s] = std::min(low[f.s], index[t]);
        }
      } else {
        if (low[f.s] == index[f.s]) {
          std::vector<StateId> comp;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp.push_back(w);
          } while (w != f.s);
          std::sort(comp.begin(), comp.end());
          out.components.push_back(std::move(comp));
        }
        int s = f.s;
        call.pop_back();
        if (!call.empty()) low[call.back().s] = std::min(low[call.back().s], low[s]);
      }
    }
  }
  return out;
}

AttractorResult attractor_forced(const Game& g, Owner player,
                                 const std::vector<char>& targets,
                                 RandomTreatment random_treatment,
                                 const std::vector<char>* alive_in) {
  const int n = g.num_states();
  std::vector<char> alive = alive_in ? *alive_in : std::vector<char>(n, 1);
  AttractorResult res;
  res.set.assign(n, 0);
  res.strategy.assign(n, std::nullopt);

  // degree[s] = remaining alive successors not yet attracted (for universal
  // states); existential states enter as soon as one successor is attracted.
  std::vector<int> degree(n, 0);
  auto existential = [&](int s) {
    if (g.owner(s) == player) return true;
    if (g.owner(s) == Owner::Random)
      return random_treatment == RandomTreatment::AsAlly;
    return false;
  };
  std::vector<int> queue;
  for (int s = 0; s < n; ++s) {
    if (!alive[s]) continue;
    for (int ei : g.out(s))
      if (alive[g.edge(ei).dst]) ++degree[s];
    if (targets[s]) {
      res.set[s] = 1;
      queue.push_back(s);
    }
  }
  // Reverse adjacency on demand.
  std::vector<std::vector<int>> in_edges(n);
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (alive[ed.src] && alive[ed.dst]) in_edges[ed.dst].push_back(e);
  }
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int t = queue[qi];
    for (int ei : in_edges[t]) {
      int s = g.edge(ei).src;
      if (res.set[s] || targets[s]) continue;
      if (existential(s)) {
        res.set[s] = 1;
        res.strategy[s] = ei;
        queue.push_back(s);
      } else if (--degree[s] == 0) {
        res.set[s] = 1;
        queue.push_back(s);
      }
    }
  }
  return res;
}

namespace {

// States from which {player + helpers} can reach `targets` with positive
// probability while Min plays adversarially inside `alive`; this is the
// attractor with Random existential for Max and the opponent universal.
AttractorResult positive_attr(const Game& g, Owner player,
                              const std::vector<char>& targets,
                              const std::vector<char>& alive) {
  return attractor_forced(g, player, targets, RandomTreatment::AsAlly, &alive);
}

}  // namespace

ReachResult as_reach(const Game& g, const std::vector<char>& targets,
                     const std::vector<char>* alive_in) {
  const int n = g.num_states();
  std::vector<char> alive = alive_in ? *alive_in : std::vector<char>(n, 1);
  std::vector<char> region = alive;
  for (;;) {
    std::vector<char> eff_targets(n, 0);
    for (int s = 0; s < n; ++s) eff_targets[s] = region[s] && targets[s];
    AttractorResult pos = positive_attr(g, Owner::Max, eff_targets, region);
    // C: states of the region where Min avoids the targets surely.
    std::vector<char> complement(n, 0);
    bool any = false;
    for (int s = 0; s < n; ++s) {
      if (region[s] && !pos.set[s]) {
        complement[s] = 1;
        any = true;
      }
    }
    if (!any) {
      ReachResult res;
      res.win = region;
      res.strategy.owner = Owner::Max;
      res.strategy.choice.assign(n, std::nullopt);
      for (int s = 0; s < n; ++s) {
        if (!region[s] || g.owner(s) != Owner::Max) continue;
        if (pos.strategy[s]) {
          res.strategy.choice[s] = pos.strategy[s];
        } else {
          // target states: stay inside the winning region when possible
          for (int ei : g.out(s)) {
            if (region[g.edge(ei).dst]) {
              res.strategy.choice[s] = ei;
              break;
            }
          }
          if (!res.strategy.choice[s]) res.strategy.choice[s] = g.out(s)[0];
        }
      }
      return res;
    }
    // Reaching T is satisfied the moment the play stands on it, so escape
    // pressure never propagates into or through target states.
    std::vector<char> nontarget_region(n, 0);
    for (int s = 0; s < n; ++s)
      nontarget_region[s] = region[s] && !eff_targets[s];
    AttractorResult bad =
        positive_attr(g, Owner::Min, complement, nontarget_region);
    for (int s = 0; s < n; ++s)
      if (bad.set[s]) region[s] = 0;
  }
}

ComponentSet max_end_components(const Game& mdp,
                                const std::vector<char>* alive_in) {
  const int n = mdp.num_states();
  for (int s = 0; s < n; ++s) {
    if (mdp.owner(s) == Owner::Min && mdp.out(s).size() > 1 &&
        (!alive_in || (*alive_in)[s]))
      throw GameError("free-min-state",
                      "end components need Min frozen; state " +
                          std::to_string(s) + " still has choices");
  }
  std::vector<char> alive = alive_in ? *alive_in : std::vector<char>(n, 1);
  ComponentSet out;
  out.kind = ComponentKind::MEC;

  std::vector<std::vector<StateId>> work;
  {
    ComponentSet first = sccs(mdp, alive);
    work = first.components;
  }
  while (!work.empty()) {
    std::vector<StateId> comp = work.back();
    work.pop_back();
    std::vector<char> in_comp(n, 0);
    for (StateId s : comp) in_comp[s] = 1;
    // Remove states violating closure: Max needs an internal successor;
    // Min/Random need all successors internal.
    bool changed = true;
    bool removed_any = false;
    while (changed) {
      changed = false;
      for (StateId s : comp) {
        if (!in_comp[s]) continue;
        bool any_in = false, all_in = true;
        for (int ei : mdp.out(s)) {
          if (in_comp[mdp.edge(ei).dst]) any_in = true;
          else all_in = false;
        }
        bool ok = mdp.owner(s) == Owner::Max ? any_in : all_in;
        if (!ok) {
          in_comp[s] = 0;
          changed = true;
          removed_any = true;
        }
      }
    }
    std::vector<StateId> kept;
    for (StateId s : comp)
      if (in_comp[s]) kept.push_back(s);
    if (kept.empty()) continue;
    if (!removed_any) {
      // Strongly connected and closed. Reject trivial singletons without a
      // self-loop.
      if (kept.size() == 1) {
        bool self = false;
        for (int ei : mdp.out(kept[0]))
          if (mdp.edge(ei).dst == kept[0]) self = true;
        if (!self) continue;
      }
      out.components.push_back(kept);
      continue;
    }
    // Re-decompose the survivors.
    ComponentSet sub = sccs(mdp, in_comp);
    for (auto& c : sub.components) work.push_back(std::move(c));
  }
  // Canonical order: by smallest member.
  std::sort(out.components.begin(), out.components.end());
  return out;
}

ComponentSet bsccs(const Game& mc) {
  if (!mc.is_chain() || !mc.min_is_frozen())
    throw GameError("free-player-states",
                    "bottom components need both players frozen");
  const int n = mc.num_states();
  std::vector<char> alive(n, 1);
  ComponentSet all = sccs(mc, alive);
  std::vector<int> idx = all.index_of(n);
  ComponentSet out;
  out.kind = ComponentKind::BSCC;
  for (const auto& comp : all.components) {
    bool bottom = true;
    bool has_edge = false;
    for (StateId s : comp) {
      for (int ei : mc.out(s)) {
        if (idx[mc.edge(ei).dst] != idx[s]) bottom = false;
        else has_edge = true;
      }
    }
    if (bottom && has_edge) out.components.push_back(comp);
  }
  std::sort(out.components.begin(), out.components.end());
  return out;
}

// The trap fixpoint coincides with subgame legalization: Min/Random must keep
// all successors, Max keeps at least one.
TrapSet maximal_trap(const Game& g, const std::vector<char>& within) {
  TrapSet t;
  t.within = within;
  t.states = legalize_subgame(g, within);
  t.maximal = true;
  return t;
}

}  // namespace enpar
