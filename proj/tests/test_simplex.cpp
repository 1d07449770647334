#include "doctest.h"

#include <random>

#include "enpar/chain.hpp"
#include "enpar/gain_bias.hpp"
#include "enpar/game.hpp"
#include "enpar/graph.hpp"
#include "enpar/simplex.hpp"

using namespace enpar;

TEST_CASE("solve_lp: maximize g s.t. g <= 3") {
  LinearProgram lp;
  int g = lp.add_var("g");
  lp.add({{g, Rational(1)}}, Relation::Le, Rational(3));
  lp.maximize = true;
  lp.objective = {{g, Rational(1)}};
  auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.values[g] == 3);
  CHECK(r.objective == 3);
}

TEST_CASE("solve_lp: infeasible pair") {
  LinearProgram lp;
  int g = lp.add_var("g");
  lp.add({{g, Rational(1)}}, Relation::Le, Rational(0));
  lp.add({{g, Rational(1)}}, Relation::Ge, Rational(1));
  lp.maximize = true;
  lp.objective = {{g, Rational(1)}};
  CHECK(solve_lp(lp).status == LpStatus::Infeasible);
}

TEST_CASE("solve_lp: unbounded") {
  LinearProgram lp;
  int x = lp.add_var("x");
  lp.add({{x, Rational(1)}}, Relation::Ge, Rational(0));
  lp.maximize = true;
  lp.objective = {{x, Rational(1)}};
  CHECK(solve_lp(lp).status == LpStatus::Unbounded);
}

TEST_CASE("solve_lp: free variables and equalities") {
  // x + y = 1, x - y = 3 -> x = 2, y = -1
  LinearProgram lp;
  int x = lp.add_var("x"), y = lp.add_var("y");
  lp.add({{x, Rational(1)}, {y, Rational(1)}}, Relation::Eq, Rational(1));
  lp.add({{x, Rational(1)}, {y, Rational(-1)}}, Relation::Eq, Rational(3));
  lp.maximize = false;
  lp.objective = {{x, Rational(1)}};
  auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.values[x] == 2);
  CHECK(r.values[y] == -1);
}

TEST_CASE("solve_lp: strict inequalities get the global slack") {
  // minimize y subject to y > 1/3 with one variable: D = lcm(3) * 2 = 6,
  // eps = 1/12, optimum 1/3 + 1/12 = 5/12.
  LinearProgram lp;
  int y = lp.add_var("y");
  lp.add({{y, Rational(1)}}, Relation::Gt, Rational(1, 3));
  lp.maximize = false;
  lp.objective = {{y, Rational(1)}};
  auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.epsilon == Rational(1, 12));
  CHECK(r.values[y] == Rational(5, 12));
}

TEST_CASE("solve_lp solutions satisfy constraints exactly on random LPs") {
  std::mt19937_64 rng(77);
  int optimal_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    LinearProgram lp;
    int nv = 1 + static_cast<int>(rng() % 3);
    for (int v = 0; v < nv; ++v) lp.add_var("x" + std::to_string(v));
    int nc = 1 + static_cast<int>(rng() % 4);
    for (int c = 0; c < nc; ++c) {
      std::vector<std::pair<int, Rational>> terms;
      for (int v = 0; v < nv; ++v) {
        long long num = static_cast<long long>(rng() % 7) - 3;
        if (num != 0) terms.push_back({v, Rational(num, 1 + rng() % 3)});
      }
      if (terms.empty()) terms.push_back({0, Rational(1)});
      Relation rel = std::array{Relation::Le, Relation::Ge, Relation::Eq,
                                Relation::Lt, Relation::Gt}[rng() % 5];
      lp.add(std::move(terms), rel,
             Rational(static_cast<long long>(rng() % 9) - 4));
    }
    // bound the box so optima exist often
    for (int v = 0; v < nv; ++v) {
      lp.add({{v, Rational(1)}}, Relation::Le, Rational(10));
      lp.add({{v, Rational(1)}}, Relation::Ge, Rational(-10));
    }
    lp.maximize = rng() % 2;
    for (int v = 0; v < nv; ++v)
      lp.objective.push_back({v, Rational(static_cast<long long>(rng() % 5) - 2)});
    auto r = solve_lp(lp);
    if (r.status == LpStatus::Optimal) {
      ++optimal_seen;
      CHECK(satisfies(lp, r.values));
      Rational obj = 0;
      for (auto& [v, c] : lp.objective) obj += c * r.values[v];
      CHECK(obj == r.objective);
    }
  }
  CHECK(optimal_seen > 50);
}

TEST_CASE("leaf_gain_lp: self-loop reward 3 has gain 3") {
  Game g = parse_game("state 0 owner=max prio=0\nedge 0 0 reward=3\n");
  auto b = leaf_gain_lp(g, {0});
  REQUIRE(b.feasible);
  CHECK(b.gain == 3);
}

TEST_CASE("leaf_gain_lp: fair coin between +1 and -1 has gain 0") {
  Game g = parse_game(
      "state 0 owner=ran prio=0\n"
      "edge 0 0 reward=1 prob=1/2\nedge 0 0 reward=-1 prob=1/2\n");
  auto b = leaf_gain_lp(g, {0});
  REQUIRE(b.feasible);
  CHECK(b.gain == 0);
}

TEST_CASE("leaf_gain_lp: 2-cycle rewards +2,-1 has gain 1/2") {
  Game g = parse_game(
      "state 0 owner=max prio=0\nstate 1 owner=max prio=0\n"
      "edge 0 1 reward=2\nedge 1 0 reward=-1\n");
  auto b = leaf_gain_lp(g, {0, 1});
  REQUIRE(b.feasible);
  CHECK(b.gain == Rational(1, 2));
}

TEST_CASE("leaf_gain_lp rejects non-BSCC components") {
  Game g = parse_game(
      "state 0 owner=max prio=0\nstate 1 owner=max prio=0\n"
      "edge 0 1 reward=0\nedge 1 1 reward=0\n");
  CHECK_THROWS_AS(leaf_gain_lp(g, {0}), GameError);
}

namespace {

// Independent oracle: exact stationary distribution of a BSCC (pi P = pi,
// sum pi = 1) and its expected one-step reward.
Rational stationary_gain(const Game& mc, const std::vector<StateId>& comp) {
  int m = static_cast<int>(comp.size());
  std::vector<int> pos(mc.num_states(), -1);
  for (int i = 0; i < m; ++i) pos[comp[i]] = i;
  // unknowns pi_0..pi_{m-1}; equations: pi_j = sum_i pi_i P(i,j) for j>0,
  // plus sum pi = 1 (replace j=0 equation).
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m, Rational(0)));
  std::vector<Rational> b(m, Rational(0));
  for (int j = 0; j < m; ++j) a[0][j] = 1;
  b[0] = 1;
  for (int j = 1; j < m; ++j) a[j][j] = 1;
  for (int i = 0; i < m; ++i) {
    for (int ei : mc.out(comp[i])) {
      const Edge& e = mc.edge(ei);
      int j = pos[e.dst];
      REQUIRE(j >= 0);
      if (j == 0) continue;
      Rational p = e.prob ? *e.prob : Rational(1);
      a[j][i] -= p;
    }
  }
  // Gauss-Jordan
  for (int col = 0; col < m; ++col) {
    int piv = -1;
    for (int r = col; r < m; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    REQUIRE(piv >= 0);
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    Rational p = a[col][col];
    for (auto& x : a[col]) x /= p;
    b[col] /= p;
    for (int r = 0; r < m; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (int j = 0; j < m; ++j) a[r][j] -= f * a[col][j];
      b[r] -= f * b[col];
    }
  }
  Rational gain = 0;
  for (int i = 0; i < m; ++i) {
    Rational exp_reward = 0;
    for (int ei : mc.out(comp[i])) {
      const Edge& e = mc.edge(ei);
      Rational p = e.prob ? *e.prob : Rational(1);
      exp_reward += p * Rational(e.reward);
    }
    gain += b[i] * exp_reward;
  }
  return gain;
}

}  // namespace

TEST_CASE("leaf_gain_lp matches the stationary-distribution oracle") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 120; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    std::vector<State> states(n, State{Owner::Random, 0});
    std::vector<Edge> edges;
    for (int s = 0; s < n; ++s) {
      int deg = 1 + static_cast<int>(rng() % 2);
      std::vector<long long> w(deg);
      long long tot = 0;
      for (auto& x : w) tot += x = 1 + rng() % 3;
      for (int d = 0; d < deg; ++d)
        edges.push_back({s, static_cast<int>(rng() % n),
                         static_cast<long long>(rng() % 7) - 3,
                         Rational(w[d], tot)});
    }
    Game g("chain", states, edges);
    for (const auto& comp : bsccs(g).components) {
      auto lp = leaf_gain_lp(g, comp);
      REQUIRE(lp.feasible);
      CHECK(lp.gain == stationary_gain(g, comp));
      CHECK(lp.max_bits <= lp.bit_bound);
    }
  }
}

TEST_CASE("tau_bias_program examples") {
  MDStrategy empty_min{Owner::Min, {}};
  SUBCASE("self-loop reward 3: b = 0 feasible") {
    Game g = parse_game("state 0 owner=max prio=0\nedge 0 0 reward=3\n");
    MDStrategy sig{Owner::Max, {0}};
    empty_min.choice.assign(1, std::nullopt);
    auto b = tau_bias_program(g, sig, empty_min, {1}, {0});
    REQUIRE(b.feasible);
    CHECK(*b.biases[0] == 0);
  }
  SUBCASE("self-loop reward 2: infeasible (needs strictly more than 2)") {
    Game g = parse_game("state 0 owner=max prio=0\nedge 0 0 reward=2\n");
    MDStrategy sig{Owner::Max, {0}};
    empty_min.choice.assign(1, std::nullopt);
    auto b = tau_bias_program(g, sig, empty_min, {1}, {0});
    CHECK(!b.feasible);
  }
  SUBCASE("chain into +3 loop across a -1 edge") {
    // Rows: b0 <= b1 - 3 - eps, b1 <= b1 + 1 - eps, b >= 0, min b0 + b1.
    // Optimum: b0 = 0, b1 = 3 + eps with eps = 1/(2 * 1 * (2+1)) = 1/6.
    Game g = parse_game(
        "state 0 owner=max prio=0\nstate 1 owner=max prio=0\n"
        "edge 0 1 reward=-1\nedge 1 1 reward=3\n");
    MDStrategy sig{Owner::Max, {0, 1}};
    empty_min.choice.assign(2, std::nullopt);
    auto b = tau_bias_program(g, sig, empty_min, {1, 1}, {0, 0});
    REQUIRE(b.feasible);
    CHECK(*b.biases[0] == 0);
    CHECK(*b.biases[1] == Rational(19, 6));
  }
}

TEST_CASE("chain_reach_probs: retryable coin has value 1, split has 1/2") {
  Game g = parse_game(
      "state 0 owner=ran prio=0\nstate 1 owner=max prio=0\n"
      "state 2 owner=max prio=0\n"
      "edge 0 1 reward=0 prob=1/2\nedge 0 2 reward=0 prob=1/2\n"
      "edge 1 1 reward=0\nedge 2 2 reward=0\n");
  auto p = chain_reach_probs(g, {0, 1, 0});
  CHECK(p[0] == Rational(1, 2));
  CHECK(p[1] == 1);
  CHECK(p[2] == 0);

  Game retry = parse_game(
      "state 0 owner=ran prio=0\nstate 1 owner=max prio=0\n"
      "edge 0 0 reward=0 prob=1/2\nedge 0 1 reward=0 prob=1/2\n"
      "edge 1 1 reward=0\n");
  auto q = chain_reach_probs(retry, {0, 1});
  CHECK(q[0] == 1);
}

TEST_CASE("mdp_max_reach picks the better branch") {
  Game g = parse_game(
      "state 0 owner=min prio=0\nstate 1 owner=ran prio=0\n"
      "state 2 owner=ran prio=0\nstate 3 owner=max prio=0\n"
      "state 4 owner=max prio=0\n"
      "edge 0 1 reward=0\nedge 0 2 reward=0\n"
      "edge 1 3 reward=0 prob=1/3\nedge 1 4 reward=0 prob=2/3\n"
      "edge 2 3 reward=0 prob=3/4\nedge 2 4 reward=0 prob=1/4\n"
      "edge 3 3 reward=0\nedge 4 4 reward=0\n");
  // chooser = Min resolves state 0; target = state 3
  auto v = mdp_max_reach(g, Owner::Min, {0, 0, 0, 1, 0});
  CHECK(v[0] == Rational(3, 4));
  CHECK(v[1] == Rational(1, 3));
  CHECK(v[2] == Rational(3, 4));
}
