#include "enpar/gadgets.hpp"

#include <algorithm>

#include "enpar/graph.hpp"

namespace enpar {

namespace {

Transform identity_transform(const Game& g, TransformKind kind) {
  Transform t;
  t.kind = kind;
  t.output = g;
  t.origin.resize(g.num_states());
  t.image.resize(g.num_states());
  for (int s = 0; s < g.num_states(); ++s) {
    t.origin[s] = s;
    t.image[s] = s;
  }
  return t;
}

Transform extension_transform(const Game& g, TransformKind kind,
                              std::vector<State> states,
                              std::vector<Edge> edges) {
  Transform t;
  t.kind = kind;
  t.output = Game(g.name(), std::move(states), std::move(edges));
  t.origin.assign(t.output.num_states(), std::nullopt);
  t.image.assign(g.num_states(), std::nullopt);
  for (int s = 0; s < g.num_states(); ++s) {
    t.origin[s] = s;
    t.image[s] = s;
  }
  return t;
}

}  // namespace

Transform energy_trade(const Game& g) {
  bool any_positive = false;
  for (const Edge& e : g.edges()) any_positive |= e.reward > 0;
  if (!any_positive) return identity_transform(g, TransformKind::EnergyTrade);

  std::vector<State> states = g.states();
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (e.reward <= 0) {
      edges.push_back(e);
      continue;
    }
    StateId sp = static_cast<StateId>(states.size());
    states.push_back({Owner::Max, g.priority(e.src)});
    StateId tp = static_cast<StateId>(states.size());
    states.push_back({Owner::Max, 0});
    edges.push_back({e.src, sp, 0, e.prob});
    edges.push_back({sp, e.dst, e.reward, std::nullopt});
    edges.push_back({sp, tp, 0, std::nullopt});
    edges.push_back({tp, e.dst, 0, std::nullopt});
  }
  return extension_transform(g, TransformKind::EnergyTrade, std::move(states),
                             std::move(edges));
}

Transform negotiation(const Game& g) {
  if (!g.has_random_states())
    return identity_transform(g, TransformKind::Negotiation);

  int d = g.max_priority();
  int lambda = d % 2 == 0 ? d + 2 : d + 1;  // smallest even above every prio
  std::vector<State> states = g.states();
  std::vector<Edge> edges;
  for (int s = 0; s < g.num_states(); ++s)
    if (g.owner(s) == Owner::Random) states[s].owner = Owner::Max;

  for (int s = 0; s < g.num_states(); ++s) {
    if (g.owner(s) != Owner::Random) {
      for (int ei : g.out(s)) edges.push_back(g.edge(ei));
      continue;
    }
    for (int gamma = 0; gamma <= lambda; gamma += 2) {
      StateId negotiate = static_cast<StateId>(states.size());
      states.push_back({Owner::Min, lambda + 1});
      StateId agree = static_cast<StateId>(states.size());
      states.push_back({Owner::Min, gamma});
      StateId challenge = static_cast<StateId>(states.size());
      states.push_back({Owner::Max, gamma + 1});
      edges.push_back({s, negotiate, 0, std::nullopt});
      edges.push_back({negotiate, agree, 0, std::nullopt});
      edges.push_back({negotiate, challenge, 0, std::nullopt});
      for (int ei : g.out(s)) {
        const Edge& e = g.edge(ei);
        edges.push_back({agree, e.dst, e.reward, std::nullopt});
        edges.push_back({challenge, e.dst, e.reward, std::nullopt});
      }
    }
  }
  return extension_transform(g, TransformKind::Negotiation, std::move(states),
                             std::move(edges));
}

Transform normalize_random(const Game& g) {
  const int neutral = g.max_priority();
  std::vector<State> states = g.states();
  std::vector<Edge> edges;

  // Binarize random branchings through fresh intermediate random states;
  // branch rewards ride on the final hop so path rewards are exact.
  for (int s = 0; s < g.num_states(); ++s) {
    if (g.owner(s) != Owner::Random) {
      for (int ei : g.out(s)) edges.push_back(g.edge(ei));
      continue;
    }
    std::vector<Edge> branches;
    for (int ei : g.out(s)) branches.push_back(g.edge(ei));
    if (branches.size() == 1) {
      edges.push_back({s, branches[0].dst, branches[0].reward, Rational(1, 2)});
      edges.push_back({s, branches[0].dst, branches[0].reward, Rational(1, 2)});
      continue;
    }
    StateId cur = s;
    Rational mass = 1;
    for (size_t i = 0; i + 2 < branches.size(); ++i) {
      StateId next = static_cast<StateId>(states.size());
      states.push_back({Owner::Random, neutral});
      Rational p = *branches[i].prob;
      edges.push_back({cur, branches[i].dst, branches[i].reward, p / mass});
      edges.push_back({cur, next, 0, (mass - p) / mass});
      mass -= p;
      cur = next;
    }
    size_t i = branches.size() - 2;
    edges.push_back(
        {cur, branches[i].dst, branches[i].reward, *branches[i].prob / mass});
    edges.push_back({cur, branches[i + 1].dst, branches[i + 1].reward,
                     *branches[i + 1].prob / mass});
  }

  // Insert a shared Max relay before every random state that lacks a unique
  // Max predecessor.
  int first_pass_states = static_cast<int>(states.size());
  for (int s = 0; s < first_pass_states; ++s) {
    if (states[s].owner != Owner::Random) continue;
    std::vector<int> incoming;
    for (size_t e = 0; e < edges.size(); ++e)
      if (edges[e].dst == s) incoming.push_back(static_cast<int>(e));
    bool normal = incoming.size() == 1 &&
                  states[edges[incoming[0]].src].owner == Owner::Max &&
                  edges[incoming[0]].src != s;
    if (normal) continue;
    StateId relay = static_cast<StateId>(states.size());
    states.push_back({Owner::Max, neutral});
    for (int e : incoming) edges[e].dst = relay;
    edges.push_back({relay, s, 0, std::nullopt});
  }

  return extension_transform(g, TransformKind::Normalize, std::move(states),
                             std::move(edges));
}

BlowupResult blowup(const Game& g, const SolveCaps& caps) {
  auto sigmas = enumerate_md(g, Owner::Max, caps.max_md_strategies);
  auto taus = enumerate_md(g, Owner::Min, caps.max_md_strategies);
  std::optional<Rational> p_min;
  for (const auto& tau : taus) {
    Game gtau = fix_strategy(g, tau);
    for (const auto& sigma : sigmas) {
      Game chain = fix_strategy(gtau, sigma);
      for (const auto& leaf : bsccs(chain).components) {
        BiasSolution sol = leaf_gain_lp(chain, leaf);
        if (sol.feasible && sol.gain > 0 && (!p_min || sol.gain < *p_min))
          p_min = sol.gain;
      }
    }
  }
  BlowupResult out;
  out.factor =
      p_min ? 1 + to_ll_checked(rat_floor(Rational(2) / *p_min), "blowup factor")
            : 3;
  Transform t = identity_transform(g, TransformKind::Blowup);
  t.output = scale_rewards(g, out.factor);
  out.transform = std::move(t);
  return out;
}

namespace {

// Internal Max strategies of a component: choices restricted to targets in D.
std::vector<std::vector<int>> internal_choices(const Game& g,
                                               const std::vector<StateId>& comp,
                                               const std::vector<char>& in) {
  std::vector<std::vector<int>> per_state;
  for (StateId s : comp) {
    if (g.owner(s) != Owner::Max) continue;
    std::vector<int> opts;
    for (int ei : g.out(s))
      if (in[g.edge(ei).dst]) opts.push_back(ei);
    per_state.push_back(opts);
  }
  return per_state;
}

bool is_end_component(const Game& gtau, const std::vector<StateId>& comp,
                      const std::vector<char>& in) {
  for (StateId s : comp) {
    bool any = false, all = true;
    for (int ei : gtau.out(s)) {
      if (in[gtau.edge(ei).dst]) any = true;
      else all = false;
    }
    if (gtau.owner(s) == Owner::Max ? !any : !all) return false;
  }
  // strong connectivity of the induced subgraph
  ComponentSet c = sccs(gtau, in);
  if (c.components.size() != 1) return false;
  if (comp.size() == 1) {
    for (int ei : gtau.out(comp[0]))
      if (gtau.edge(ei).dst == comp[0]) return true;
    return false;
  }
  return true;
}

struct SubsetScan {
  bool safe_leaf_able = false;  // exists sigma: D strongly connected, even
                                // min priority, no negative cycle
  Rational max_gain = 0;        // best leaf gain over internal strategies
  bool has_leaf = false;
};

// Enumerates internal Max strategies of D inside gtau and inspects the
// induced sub-chains.
SubsetScan scan_subset(const Game& gtau, const std::vector<StateId>& comp,
                       const std::vector<char>& in) {
  SubsetScan out;
  int min_prio = gtau.priority(comp[0]);
  for (StateId s : comp) min_prio = std::min(min_prio, gtau.priority(s));

  // restrict to the component; legal because D is an end component
  Transform sub = restrict_game(gtau, in);
  const Game& dsub = sub.output;
  std::vector<StateId> max_states;
  for (int s = 0; s < dsub.num_states(); ++s)
    if (dsub.owner(s) == Owner::Max) max_states.push_back(s);

  std::vector<size_t> pick(max_states.size(), 0);
  for (;;) {
    MDStrategy sigma;
    sigma.owner = Owner::Max;
    sigma.choice.assign(dsub.num_states(), std::nullopt);
    for (size_t i = 0; i < max_states.size(); ++i)
      sigma.choice[max_states[i]] = dsub.out(max_states[i])[pick[i]];
    Game chain = fix_strategy(dsub, sigma);

    for (const auto& leaf : bsccs(chain).components) {
      BiasSolution sol = leaf_gain_lp(chain, leaf);
      if (sol.feasible) {
        if (!out.has_leaf || sol.gain > out.max_gain) out.max_gain = sol.gain;
        out.has_leaf = true;
      }
    }
    if (min_prio % 2 == 0) {
      std::vector<char> all(chain.num_states(), 1);
      if (sccs(chain, all).components.size() == 1) {
        // whole component is one leaf under sigma; negative cycle test
        bool has_negative_cycle = false;
        // Bellman-Ford over the chain graph
        int n = chain.num_states();
        std::vector<long long> dist(n, 0);
        for (int round = 0; round < n && !has_negative_cycle; ++round) {
          for (const Edge& e : chain.edges()) {
            if (dist[e.src] + e.reward < dist[e.dst]) {
              dist[e.dst] = dist[e.src] + e.reward;
              if (round == n - 1) has_negative_cycle = true;
            }
          }
        }
        if (!has_negative_cycle) out.safe_leaf_able = true;
      }
    }

    size_t i = 0;
    for (; i < max_states.size(); ++i) {
      if (++pick[i] < dsub.out(max_states[i]).size()) break;
      pick[i] = 0;
    }
    if (i == max_states.size()) break;
  }
  return out;
}

}  // namespace

CollapseResult collapse_awesome_zero(const Game& g1, const MDStrategy& tau_star,
                                     const SolveCaps& caps) {
  Game gtau = fix_strategy(g1, tau_star);
  const int n = g1.num_states();
  std::vector<char> in_u(n, 0);

  for (const auto& mec : max_end_components(gtau).components) {
    if (mec.size() > 14)
      throw ResourceError("component too large for awesome-set enumeration");
    const size_t m = mec.size();
    for (size_t bits = 1; bits < (size_t{1} << m); ++bits) {
      std::vector<StateId> comp;
      std::vector<char> in(n, 0);
      for (size_t i = 0; i < m; ++i) {
        if (bits & (size_t{1} << i)) {
          comp.push_back(mec[i]);
          in[mec[i]] = 1;
        }
      }
      if (!is_end_component(gtau, comp, in)) continue;
      SubsetScan scan = scan_subset(gtau, comp, in);
      int min_prio = gtau.priority(comp[0]);
      for (StateId s : comp) min_prio = std::min(min_prio, gtau.priority(s));
      bool mp_parity = min_prio % 2 == 0 && scan.has_leaf && scan.max_gain > 0;
      if (scan.safe_leaf_able && !mp_parity)
        for (StateId s : comp) in_u[s] = 1;
    }
  }

  CollapseResult res;
  res.collapsed = in_u;
  bool any = std::find(in_u.begin(), in_u.end(), 1) != in_u.end();
  if (!any) {
    res.transform = identity_transform(g1, TransformKind::Collapse);
    return res;
  }

  std::vector<StateId> new_id(n, -1);
  std::vector<State> states;
  std::vector<std::optional<StateId>> origin;
  for (int s = 0; s < n; ++s) {
    if (in_u[s]) continue;
    new_id[s] = static_cast<StateId>(states.size());
    states.push_back(g1.state(s));
    origin.push_back(s);
  }
  StateId ua = static_cast<StateId>(states.size());
  states.push_back({Owner::Max, 0});
  origin.push_back(std::nullopt);
  std::vector<Edge> edges;
  for (const Edge& e : g1.edges()) {
    if (in_u[e.src]) continue;
    edges.push_back({new_id[e.src], in_u[e.dst] ? ua : new_id[e.dst], e.reward,
                     e.prob});
  }
  edges.push_back({ua, ua, 3, std::nullopt});

  Transform t;
  t.kind = TransformKind::Collapse;
  t.output = Game(g1.name(), std::move(states), std::move(edges));
  t.origin = std::move(origin);
  t.image.assign(n, std::nullopt);
  for (int s = 0; s < n; ++s) t.image[s] = in_u[s] ? ua : new_id[s];
  res.transform = std::move(t);
  res.awesome = ua;
  return res;
}

std::vector<TradeInSpec> trade_in_specs(const Game& gU,
                                        const BiasSolution& biases) {
  std::vector<TradeInSpec> specs;
  if (!biases.feasible) return specs;
  for (int s = 0; s < gU.num_states(); ++s) {
    if (gU.owner(s) != Owner::Random) continue;
    if (static_cast<size_t>(s) >= biases.biases.size() || !biases.biases[s])
      continue;
    TradeInSpec spec;
    spec.base = s;
    for (int ei : gU.out(s)) {
      const Edge& e = gU.edge(ei);
      if (static_cast<size_t>(e.dst) >= biases.biases.size() ||
          !biases.biases[e.dst])
        throw GameError("missing-bias", "bias absent for successor " +
                                            std::to_string(e.dst));
      Rational v = 1 + *biases.biases[s] - *biases.biases[e.dst];
      spec.rewards.push_back(to_ll_checked(rat_floor(v), "trade-in reward"));
    }
    specs.push_back(std::move(spec));
  }
  return specs;
}

namespace {

int unique_max_pred_edge(const Game& gU, StateId s) {
  int found = -1;
  for (int e = 0; e < gU.num_edges(); ++e) {
    if (gU.edge(e).dst != s) continue;
    if (found >= 0)
      throw GameError("not-normalized", "random state " + std::to_string(s) +
                                            " has several predecessors");
    found = e;
  }
  if (found < 0 || gU.owner(gU.edge(found).src) != Owner::Max ||
      gU.edge(found).src == s)
    throw GameError("not-normalized", "random state " + std::to_string(s) +
                                          " lacks a Max predecessor");
  return found;
}

}  // namespace

ComposedGame compose_tradeins(const Game& gU,
                              const std::vector<TradeInSpec>& specs) {
  const int n = gU.num_states();
  std::vector<State> states = gU.states();
  std::vector<Edge> edges = gU.edges();
  std::vector<int> origin_edge(edges.size());
  for (size_t e = 0; e < edges.size(); ++e) origin_edge[e] = static_cast<int>(e);
  std::vector<int> spec_of(n, -1);

  for (size_t si = 0; si < specs.size(); ++si) {
    const TradeInSpec& spec = specs[si];
    if (gU.owner(spec.base) != Owner::Random)
      throw GameError("bad-tradein", "trade-in base is not random");
    if (spec.rewards.size() != gU.out(spec.base).size())
      throw GameError("bad-tradein", "trade-in branch count mismatch");
    int pe = unique_max_pred_edge(gU, spec.base);
    StateId st = static_cast<StateId>(states.size());
    states.push_back({Owner::Random, gU.priority(spec.base)});
    spec_of.push_back(static_cast<int>(si));
    edges.push_back({gU.edge(pe).src, st, gU.edge(pe).reward, std::nullopt});
    origin_edge.push_back(pe);
    for (size_t b = 0; b < spec.rewards.size(); ++b) {
      const Edge& br = gU.edge(gU.out(spec.base)[b]);
      edges.push_back({st, br.dst, spec.rewards[b], br.prob});
      origin_edge.push_back(gU.out(spec.base)[b]);
    }
  }

  TrackedGame built = build_game_tracked(gU.name(), std::move(states), edges);
  ComposedGame out;
  out.game = std::move(built.game);
  out.spec_of_state = std::move(spec_of);
  out.origin.assign(out.game.num_states(), std::nullopt);
  for (int s = 0; s < n; ++s) out.origin[s] = s;
  out.edge_origin.resize(out.game.num_edges());
  for (int e = 0; e < out.game.num_edges(); ++e)
    out.edge_origin[e] = origin_edge[built.perm[e]];
  return out;
}

Rational base_expected_reward(const Game& gU, StateId s) {
  Rational sum = 0;
  for (int ei : gU.out(s)) {
    const Edge& e = gU.edge(ei);
    sum += (e.prob ? *e.prob : Rational(1)) * Rational(e.reward);
  }
  return sum;
}

Rational tradein_expected_reward(const Game& gU, const TradeInSpec& spec) {
  Rational sum = 0;
  const auto& outs = gU.out(spec.base);
  for (size_t b = 0; b < outs.size(); ++b) {
    const Edge& e = gU.edge(outs[b]);
    sum += (e.prob ? *e.prob : Rational(1)) * Rational(spec.rewards[b]);
  }
  return sum;
}

ComposedGame prune_to_candidate(const Game& gU,
                                const std::vector<TradeInSpec>& specs,
                                const std::vector<char>& keep_spec,
                                const std::vector<char>& keep_original) {
  const int n = gU.num_states();
  std::vector<int> kept_per_base(n, 0);
  std::vector<TradeInSpec> kept;
  std::vector<int> kept_index;
  for (size_t si = 0; si < specs.size(); ++si) {
    if (!keep_spec[si]) continue;
    if (++kept_per_base[specs[si].base] > 2 * n)
      throw GameError("tradein-bound",
                      "more than twice the base state count kept for state " +
                          std::to_string(specs[si].base));
    kept.push_back(specs[si]);
    kept_index.push_back(static_cast<int>(si));
  }

  // Drop de-selected original random states (and their relay edge) first.
  std::vector<char> keep_state(n, 1);
  for (int s = 0; s < n; ++s) {
    if (gU.owner(s) == Owner::Random && static_cast<size_t>(s) < keep_original.size() &&
        !keep_original[s]) {
      keep_state[s] = 0;
      bool replaced = false;
      for (const auto& spec : kept) replaced |= spec.base == s;
      if (!replaced)
        throw GameError("blocked-relay",
                        "state " + std::to_string(s) +
                            " dropped with no surviving alternative");
    }
  }

  ComposedGame full = compose_tradeins(gU, kept);
  // Map the drop set through (original ids are stable in compose_tradeins).
  std::vector<char> keep_mask(full.game.num_states(), 1);
  for (int s = 0; s < n; ++s) keep_mask[s] = keep_state[s];
  Transform sub = restrict_game(full.game, keep_mask);

  ComposedGame out;
  out.game = std::move(sub.output);
  out.origin.assign(out.game.num_states(), std::nullopt);
  out.spec_of_state.assign(out.game.num_states(), -1);
  for (int s = 0; s < out.game.num_states(); ++s) {
    StateId mid = *sub.origin[s];
    out.origin[s] = full.origin[mid];
    int local = full.spec_of_state[mid];
    out.spec_of_state[s] = local < 0 ? -1 : kept_index[local];
  }
  out.edge_origin.assign(out.game.num_edges(), -1);
  return out;
}

}  // namespace enpar
