#include "enpar/chain.hpp"

#include <algorithm>

#include "enpar/strategy.hpp"

namespace enpar {

namespace {

// Solves A x = b by Gauss-Jordan over rationals. A must be square and
// nonsingular on the given system.
std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> a,
                                   std::vector<Rational> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r) {
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) throw GameError("singular-system", "linear system is singular");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    Rational p = a[col][col];
    for (int j = 0; j < n; ++j) a[col][j] /= p;
    b[col] /= p;
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (int j = 0; j < n; ++j) a[r][j] -= f * a[col][j];
      b[r] -= f * b[col];
    }
  }
  return b;
}

std::vector<char> can_reach(const Game& g, const std::vector<char>& targets) {
  // graph-reachability backwards
  const int n = g.num_states();
  std::vector<std::vector<int>> preds(n);
  for (const Edge& e : g.edges()) preds[e.dst].push_back(e.src);
  std::vector<char> seen = targets;
  std::vector<int> queue;
  for (int s = 0; s < n; ++s)
    if (targets[s]) queue.push_back(s);
  for (size_t i = 0; i < queue.size(); ++i)
    for (int p : preds[queue[i]])
      if (!seen[p]) {
        seen[p] = 1;
        queue.push_back(p);
      }
  return seen;
}

}  // namespace

std::vector<Rational> chain_reach_probs(const Game& mc,
                                        const std::vector<char>& targets) {
  if (!mc.is_chain())
    throw GameError("free-player-states", "reach probabilities need a chain");
  const int n = mc.num_states();
  std::vector<Rational> x(n, Rational(0));
  std::vector<char> maybe = can_reach(mc, targets);
  // Unknowns: states that can reach T but are not in T. From such states the
  // chain is absorbed a.s. into T or into the cannot-reach part, so the
  // system is nonsingular.
  std::vector<int> var(n, -1);
  std::vector<int> unknowns;
  for (int s = 0; s < n; ++s) {
    if (targets[s]) x[s] = 1;
    else if (maybe[s]) {
      var[s] = static_cast<int>(unknowns.size());
      unknowns.push_back(s);
    }
  }
  if (unknowns.empty()) return x;
  const int m = static_cast<int>(unknowns.size());
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m, Rational(0)));
  std::vector<Rational> b(m, Rational(0));
  for (int i = 0; i < m; ++i) {
    int s = unknowns[i];
    a[i][i] += 1;
    for (int ei : mc.out(s)) {
      const Edge& e = mc.edge(ei);
      Rational p = e.prob ? *e.prob : Rational(1);
      if (targets[e.dst]) b[i] += p;
      else if (var[e.dst] >= 0) a[i][var[e.dst]] -= p;
      // else: absorbed into the cannot-reach part, contributes 0
    }
  }
  std::vector<Rational> sol = solve_linear(std::move(a), std::move(b));
  for (int i = 0; i < m; ++i) x[unknowns[i]] = sol[i];
  return x;
}

std::vector<Rational> mdp_max_reach(const Game& mdp, Owner chooser,
                                    const std::vector<char>& targets) {
  const int n = mdp.num_states();
  for (int s = 0; s < n; ++s) {
    if (mdp.owner(s) != chooser && mdp.owner(s) != Owner::Random &&
        mdp.out(s).size() > 1)
      throw GameError("free-player-states",
                      "max-reach needs the other player frozen");
  }
  MDStrategy pol;
  pol.owner = chooser;
  pol.choice.assign(n, std::nullopt);
  for (int s = 0; s < n; ++s)
    if (mdp.owner(s) == chooser) pol.choice[s] = mdp.out(s)[0];

  std::vector<Rational> value;
  for (;;) {
    value = chain_reach_probs(fix_strategy(mdp, pol), targets);
    // Improve on strictly better one-step lookahead only; switched cycles
    // would otherwise keep stale values alive.
    bool improved = false;
    for (int s = 0; s < n; ++s) {
      if (mdp.owner(s) != chooser) continue;
      int best_edge = *pol.choice[s];
      Rational best = value[mdp.edge(best_edge).dst];
      for (int ei : mdp.out(s)) {
        if (value[mdp.edge(ei).dst] > best) {
          best = value[mdp.edge(ei).dst];
          best_edge = ei;
        }
      }
      if (best_edge != *pol.choice[s] &&
          value[mdp.edge(best_edge).dst] > value[mdp.edge(*pol.choice[s]).dst]) {
        pol.choice[s] = best_edge;
        improved = true;
      }
    }
    if (!improved) return value;
  }
}

}  // namespace enpar
