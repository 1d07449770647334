#include "enpar/zielonka.hpp"

#include <algorithm>

#include "enpar/graph.hpp"

namespace enpar {

namespace {

struct Solver {
  const Game& g;
  std::vector<char> win_max, win_min;
  std::vector<std::optional<int>> strat_max, strat_min;

  explicit Solver(const Game& game)
      : g(game),
        win_max(game.num_states(), 0),
        win_min(game.num_states(), 0),
        strat_max(game.num_states()),
        strat_min(game.num_states()) {}

  std::vector<char>& win_of(Owner o) {
    return o == Owner::Max ? win_max : win_min;
  }
  std::vector<std::optional<int>>& strat_of(Owner o) {
    return o == Owner::Max ? strat_max : strat_min;
  }

  void solve(const std::vector<char>& alive) {
    int min_prio = -1;
    for (int s = 0; s < g.num_states(); ++s)
      if (alive[s] && (min_prio < 0 || g.priority(s) < min_prio))
        min_prio = g.priority(s);
    if (min_prio < 0) return;  // empty subgame

    Owner me = min_prio % 2 == 0 ? Owner::Max : Owner::Min;
    Owner opp = me == Owner::Max ? Owner::Min : Owner::Max;

    std::vector<char> top(g.num_states(), 0);
    for (int s = 0; s < g.num_states(); ++s)
      top[s] = alive[s] && g.priority(s) == min_prio;
    AttractorResult attr =
        attractor_forced(g, me, top, RandomTreatment::AsOpponent, &alive);

    std::vector<char> rest(g.num_states(), 0);
    for (int s = 0; s < g.num_states(); ++s)
      rest[s] = alive[s] && !attr.set[s];
    solve(rest);

    std::vector<char> opp_region(g.num_states(), 0);
    bool opp_nonempty = false;
    for (int s = 0; s < g.num_states(); ++s) {
      if (rest[s] && win_of(opp)[s]) {
        opp_region[s] = 1;
        opp_nonempty = true;
      }
    }

    if (!opp_nonempty) {
      // `me` wins all of `alive`: recursion strategy on rest, attractor
      // strategy towards the top priority, any alive edge on top states.
      for (int s = 0; s < g.num_states(); ++s) {
        if (!alive[s]) continue;
        win_of(me)[s] = 1;
        win_of(opp)[s] = 0;
        if (g.owner(s) != me) continue;
        if (top[s]) {
          for (int ei : g.out(s)) {
            if (alive[g.edge(ei).dst]) {
              strat_of(me)[s] = ei;
              break;
            }
          }
        } else if (attr.set[s] && attr.strategy[s]) {
          strat_of(me)[s] = attr.strategy[s];
        }
        // else: keep the recursion's choice on `rest`
      }
      return;
    }

    AttractorResult back =
        attractor_forced(g, opp, opp_region, RandomTreatment::AsOpponent, &alive);
    std::vector<char> remaining(g.num_states(), 0);
    for (int s = 0; s < g.num_states(); ++s)
      remaining[s] = alive[s] && !back.set[s];
    solve(remaining);
    for (int s = 0; s < g.num_states(); ++s) {
      if (!alive[s] || !back.set[s]) continue;
      win_of(opp)[s] = 1;
      win_of(me)[s] = 0;
      if (g.owner(s) == opp && !opp_region[s] && back.strategy[s])
        strat_of(opp)[s] = back.strategy[s];
      // opp_region states keep the first recursion's winning choice
    }
  }
};

}  // namespace

ParityResult zielonka(const Game& pg) {
  if (pg.has_random_states())
    throw GameError("stochastic-game",
                    "zielonka needs a non-stochastic parity game");
  Solver sv(pg);
  std::vector<char> alive(pg.num_states(), 1);
  sv.solve(alive);
  ParityResult res;
  res.win_max = std::move(sv.win_max);
  res.win_min = std::move(sv.win_min);
  res.strat_max.owner = Owner::Max;
  res.strat_max.choice = std::move(sv.strat_max);
  res.strat_min.owner = Owner::Min;
  res.strat_min.choice = std::move(sv.strat_min);
  // Strategies are only meaningful on the owner's winning region.
  for (int s = 0; s < pg.num_states(); ++s) {
    if (!res.win_max[s]) res.strat_max.choice[s] = std::nullopt;
    if (!res.win_min[s]) res.strat_min.choice[s] = std::nullopt;
  }
  return res;
}

}  // namespace enpar
