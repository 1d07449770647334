#include "doctest.h"

#include <array>
#include <random>

#include "enpar/game.hpp"
#include "enpar/graph.hpp"
#include "enpar/strategy.hpp"

using namespace enpar;

namespace {

std::vector<char> mask(int n, std::initializer_list<int> on) {
  std::vector<char> m(n, 0);
  for (int s : on) m[s] = 1;
  return m;
}

}  // namespace

TEST_CASE("attractor: all targets, min escape, chain") {
  Game g = parse_game(
      "state 0 owner=max prio=0\nstate 1 owner=min prio=0\n"
      "state 2 owner=max prio=0\nstate 3 owner=max prio=0\n"
      "edge 0 1 reward=0\nedge 1 2 reward=0\nedge 1 3 reward=0\n"
      "edge 2 2 reward=0\nedge 3 3 reward=0\n");
  SUBCASE("targets = all -> all") {
    auto r = attractor_forced(g, Owner::Max, {1, 1, 1, 1},
                              RandomTreatment::AsOpponent);
    CHECK(r.set == std::vector<char>{1, 1, 1, 1});
  }
  SUBCASE("min state with escape is excluded") {
    auto r = attractor_forced(g, Owner::Max, mask(4, {2}),
                              RandomTreatment::AsOpponent);
    CHECK(r.set == mask(4, {2}));
  }
  SUBCASE("3-state max chain attracts fully") {
    Game chain = parse_game(
        "state 0 owner=max prio=0\nstate 1 owner=max prio=0\n"
        "state 2 owner=max prio=0\n"
        "edge 0 1 reward=0\nedge 1 2 reward=0\nedge 2 2 reward=0\n");
    auto r = attractor_forced(chain, Owner::Max, mask(3, {2}),
                              RandomTreatment::AsOpponent);
    CHECK(r.set == std::vector<char>{1, 1, 1});
  }
}

TEST_CASE("attractor is monotone and idempotent") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    std::vector<State> states;
    for (int s = 0; s < n; ++s)
      states.push_back({rng() % 2 ? Owner::Max : Owner::Min, 0});
    std::vector<Edge> edges;
    for (int s = 0; s < n; ++s) {
      int deg = 1 + static_cast<int>(rng() % 2);
      for (int d = 0; d < deg; ++d)
        edges.push_back({s, static_cast<int>(rng() % n), 0, std::nullopt});
    }
    Game g("fuzz", states, edges);
    std::vector<char> t1(n), t2(n);
    for (int s = 0; s < n; ++s) {
      t1[s] = rng() % 2;
      t2[s] = t1[s] || (rng() % 2);
    }
    auto a1 = attractor_forced(g, Owner::Max, t1, RandomTreatment::AsOpponent);
    auto a2 = attractor_forced(g, Owner::Max, t2, RandomTreatment::AsOpponent);
    for (int s = 0; s < n; ++s) {
      if (t1[s]) CHECK(a1.set[s]);      // contains targets
      if (a1.set[s]) CHECK(a2.set[s]);  // monotone
    }
    auto again =
        attractor_forced(g, Owner::Max, a1.set, RandomTreatment::AsOpponent);
    CHECK(again.set == a1.set);  // idempotent
  }
}

TEST_CASE("as_reach: absorbing target behind prob-1 chain") {
  Game g = parse_game(
      "state 0 owner=ran prio=0\nstate 1 owner=ran prio=0\n"
      "state 2 owner=max prio=0\n"
      "edge 0 1 reward=0 prob=1\nedge 1 2 reward=0 prob=1\n"
      "edge 2 2 reward=0\n");
  auto r = as_reach(g, mask(3, {2}));
  CHECK(r.win == std::vector<char>{1, 1, 1});
}

TEST_CASE("as_reach: retryable coin reaches almost surely") {
  // Exact reachability value from state 0 is 1: p = 1/2 + 1/2 * p.
  Game g = parse_game(
      "state 0 owner=max prio=0\nstate 1 owner=ran prio=0\n"
      "state 2 owner=max prio=0\n"
      "edge 0 1 reward=0\nedge 1 2 reward=0 prob=1/2\n"
      "edge 1 0 reward=0 prob=1/2\nedge 2 2 reward=0\n");
  auto r = as_reach(g, mask(3, {2}));
  CHECK(r.win[0]);
  CHECK(r.win[1]);
}

TEST_CASE("as_reach: min diverting to a sink is excluded") {
  Game g = parse_game(
      "state 0 owner=min prio=0\nstate 1 owner=max prio=0\n"
      "state 2 owner=max prio=0\n"
      "edge 0 1 reward=0\nedge 0 2 reward=0\n"
      "edge 1 1 reward=0\nedge 2 2 reward=0\n");
  auto r = as_reach(g, mask(3, {1}));
  CHECK(!r.win[0]);
  CHECK(r.win[1]);
  CHECK(!r.win[2]);
}

TEST_CASE("as_reach fixed point: restricting to the result keeps it") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    std::vector<State> states;
    for (int s = 0; s < n; ++s) {
      Owner o = std::array{Owner::Max, Owner::Min, Owner::Random}[rng() % 3];
      states.push_back({o, 0});
    }
    std::vector<Edge> edges;
    for (int s = 0; s < n; ++s) {
      int deg = 1 + static_cast<int>(rng() % 2);
      std::vector<Rational> probs;
      if (states[s].owner == Owner::Random) {
        if (deg == 1) probs = {Rational(1)};
        else probs = {Rational(1, 2), Rational(1, 2)};
      }
      for (int d = 0; d < deg; ++d) {
        Edge e{s, static_cast<int>(rng() % n), 0, std::nullopt};
        if (states[s].owner == Owner::Random) e.prob = probs[d];
        edges.push_back(e);
      }
    }
    Game g("fuzz", states, edges);
    std::vector<char> targets(n);
    for (int s = 0; s < n; ++s) targets[s] = rng() % 3 == 0;
    auto r = as_reach(g, targets);
    for (int s = 0; s < n; ++s)
      if (targets[s]) CHECK(r.win[s]);  // result contains targets
    auto again = as_reach(g, targets, &r.win);
    CHECK(again.win == r.win);
  }
}

TEST_CASE("max_end_components basics") {
  SUBCASE("single self-loop is one MEC") {
    Game g = parse_game("state 0 owner=max prio=0\nedge 0 0 reward=0\n");
    auto m = max_end_components(g);
    REQUIRE(m.components.size() == 1);
    CHECK(m.components[0] == std::vector<StateId>{0});
  }
  SUBCASE("two loops joined one-way are two MECs") {
    Game g = parse_game(
        "state 0 owner=max prio=0\nstate 1 owner=max prio=0\n"
        "edge 0 0 reward=0\nedge 0 1 reward=0\nedge 1 1 reward=0\n");
    auto m = max_end_components(g);
    CHECK(m.components.size() == 2);
  }
  SUBCASE("transient state excluded") {
    Game g = parse_game(
        "state 0 owner=max prio=0\nstate 1 owner=max prio=0\n"
        "edge 0 1 reward=0\nedge 1 1 reward=0\n");
    auto m = max_end_components(g);
    REQUIRE(m.components.size() == 1);
    CHECK(m.components[0] == std::vector<StateId>{1});
  }
  SUBCASE("random edge leaving the SCC breaks the component") {
    Game g = parse_game(
        "state 0 owner=ran prio=0\nstate 1 owner=max prio=0\n"
        "state 2 owner=max prio=0\n"
        "edge 0 1 reward=0 prob=1/2\nedge 0 2 reward=0 prob=1/2\n"
        "edge 1 0 reward=0\nedge 2 2 reward=0\n");
    auto m = max_end_components(g);
    REQUIRE(m.components.size() == 1);
    CHECK(m.components[0] == std::vector<StateId>{2});
  }
  SUBCASE("free min states rejected") {
    Game g = parse_game(
        "state 0 owner=min prio=0\nedge 0 0 reward=0\nedge 0 0 reward=1\n");
    CHECK_THROWS_AS(max_end_components(g), GameError);
  }
}

TEST_CASE("bsccs of a chain") {
  Game g = parse_game(
      "state 0 owner=ran prio=0\nstate 1 owner=max prio=0\n"
      "state 2 owner=max prio=0\n"
      "edge 0 1 reward=0 prob=1/2\nedge 0 2 reward=0 prob=1/2\n"
      "edge 1 1 reward=0\nedge 2 2 reward=0\n");
  auto b = bsccs(g);
  CHECK(b.components.size() == 2);
  Game free_game = parse_game(
      "state 0 owner=max prio=0\nedge 0 0 reward=0\nedge 0 0 reward=1\n");
  CHECK_THROWS_AS(bsccs(free_game), GameError);
}

TEST_CASE("every BSCC of G[sigma,tau] is inside some MEC of G[tau]") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    std::vector<State> states;
    for (int s = 0; s < n; ++s) {
      Owner o = std::array{Owner::Max, Owner::Min, Owner::Random}[rng() % 3];
      states.push_back({o, 0});
    }
    std::vector<Edge> edges;
    for (int s = 0; s < n; ++s) {
      int deg = 1 + static_cast<int>(rng() % 2);
      for (int d = 0; d < deg; ++d) {
        Edge e{s, static_cast<int>(rng() % n), 0, std::nullopt};
        if (states[s].owner == Owner::Random) e.prob = Rational(1, deg);
        edges.push_back(e);
      }
    }
    Game g("fuzz", states, edges);
    auto first_choice = [&](const Game& game, Owner o) {
      MDStrategy st;
      st.owner = o;
      st.choice.assign(game.num_states(), std::nullopt);
      for (int s = 0; s < game.num_states(); ++s)
        if (game.owner(s) == o) st.choice[s] = game.out(s)[0];
      return st;
    };
    Game gtau = fix_strategy(g, first_choice(g, Owner::Min));
    auto mecs = max_end_components(gtau);
    auto midx = mecs.index_of(n);
    Game chain = fix_strategy(gtau, first_choice(gtau, Owner::Max));
    for (const auto& comp : bsccs(chain).components) {
      int c0 = midx[comp[0]];
      CHECK(c0 >= 0);
      for (StateId s : comp) CHECK(midx[s] == c0);
    }
  }
}

TEST_CASE("maximal_trap") {
  SUBCASE("max-only closed region is its own trap") {
    Game g = parse_game(
        "state 0 owner=max prio=0\nstate 1 owner=max prio=0\n"
        "edge 0 1 reward=0\nedge 1 0 reward=0\n");
    auto t = maximal_trap(g, {1, 1});
    CHECK(t.states == std::vector<char>{1, 1});
  }
  SUBCASE("min state with an escape cascades out") {
    Game g = parse_game(
        "state 0 owner=min prio=0\nstate 1 owner=max prio=0\n"
        "state 2 owner=max prio=0\n"
        "edge 0 2 reward=0\nedge 0 1 reward=0\n"
        "edge 1 0 reward=0\nedge 2 2 reward=0\n");
    auto t = maximal_trap(g, {1, 1, 0});
    CHECK(t.states == std::vector<char>{0, 0, 0});
  }
  SUBCASE("random leak empties the trap") {
    Game g = parse_game(
        "state 0 owner=ran prio=0\nstate 1 owner=max prio=0\n"
        "edge 0 0 reward=0 prob=1/2\nedge 0 1 reward=0 prob=1/2\n"
        "edge 1 1 reward=0\n");
    auto t = maximal_trap(g, {1, 0});
    CHECK(t.states == std::vector<char>{0, 0});
  }
}

TEST_CASE("union of two traps is a trap") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    std::vector<State> states;
    for (int s = 0; s < n; ++s) {
      Owner o = std::array{Owner::Max, Owner::Min, Owner::Random}[rng() % 3];
      states.push_back({o, 0});
    }
    std::vector<Edge> edges;
    for (int s = 0; s < n; ++s) {
      int deg = states[s].owner == Owner::Random ? 2 : 1 + (rng() % 2);
      for (int d = 0; d < deg; ++d) {
        Edge e{s, static_cast<int>(rng() % n), 0, std::nullopt};
        if (states[s].owner == Owner::Random) e.prob = Rational(1, deg);
        edges.push_back(e);
      }
    }
    Game g("fuzz", states, edges);
    std::vector<char> w1(n), w2(n);
    for (int s = 0; s < n; ++s) {
      w1[s] = rng() % 2;
      w2[s] = rng() % 2;
    }
    auto t1 = maximal_trap(g, w1).states;
    auto t2 = maximal_trap(g, w2).states;
    std::vector<char> uni(n);
    for (int s = 0; s < n; ++s) uni[s] = t1[s] || t2[s];
    auto closed = maximal_trap(g, uni).states;
    CHECK(closed == uni);
  }
}
