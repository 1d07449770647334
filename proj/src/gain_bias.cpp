#include "enpar/gain_bias.hpp"

#include <algorithm>

#include "enpar/graph.hpp"

namespace enpar {

namespace {

std::size_t coeff_bits(const LinearProgram& lp) {
  std::size_t s = 1;
  for (const auto& c : lp.constraints) {
    for (const auto& [v, coef] : c.terms) s = std::max(s, rational_bits(coef));
    s = std::max(s, rational_bits(c.rhs));
  }
  return s;
}

void record_size_check(BiasSolution& out, const LinearProgram& lp,
                       const LpResult& r) {
  std::size_t m = lp.variables.size();
  std::size_t S = coeff_bits(lp);
  out.bit_bound = 4 * m * m * (m + 1) * (S + 1);
  out.max_bits = 0;
  for (const auto& v : r.values)
    out.max_bits = std::max(out.max_bits, rational_bits(v));
  if (out.max_bits > out.bit_bound)
    throw GameError("lp-size-bound",
                    "basic solution exceeds the 4m^2(m+1)(S+1) size bound");
}

}  // namespace

BiasSolution leaf_gain_lp(const Game& mc, const std::vector<StateId>& component) {
  ComponentSet leafs = bsccs(mc);
  std::vector<StateId> sorted = component;
  std::sort(sorted.begin(), sorted.end());
  bool found = false;
  for (const auto& c : leafs.components)
    if (c == sorted) found = true;
  if (!found)
    throw GameError("not-a-bscc", "component is not a leaf of the chain");

  LinearProgram lp;
  int gv = lp.add_var("g");
  std::vector<int> bvar(mc.num_states(), -1);
  for (StateId s : sorted) bvar[s] = lp.add_var("b" + std::to_string(s));
  for (StateId s : sorted) {
    // b_s + g - sum prob (b_t) = sum prob * cost
    std::vector<std::pair<int, Rational>> terms{{bvar[s], Rational(1)},
                                                {gv, Rational(1)}};
    Rational rhs = 0;
    for (int ei : mc.out(s)) {
      const Edge& e = mc.edge(ei);
      Rational p = e.prob ? *e.prob : Rational(1);
      terms.push_back({bvar[e.dst], -p});
      rhs += p * Rational(e.reward);
    }
    lp.add(std::move(terms), Relation::Eq, rhs);
  }
  lp.maximize = true;
  lp.objective = {{gv, Rational(1)}};

  LpResult r = solve_lp(lp);
  BiasSolution out;
  out.biases.assign(mc.num_states(), std::nullopt);
  if (r.status != LpStatus::Optimal) return out;
  out.feasible = true;
  out.gain = r.values[gv];
  for (StateId s : sorted) out.biases[s] = r.values[bvar[s]];
  record_size_check(out, lp, r);
  if (!satisfies(lp, r.values))
    throw GameError("lp-verify", "solution fails substitution check");
  return out;
}

BiasSolution tau_bias_program(const Game& h, const MDStrategy& sigma,
                              const MDStrategy& tau,
                              const std::vector<char>& strict_states,
                              const std::vector<char>& exempt) {
  const int n = h.num_states();
  LinearProgram lp;
  std::vector<int> bvar(n, -1);
  for (int s = 0; s < n; ++s)
    if (strict_states[s] || exempt[s])
      bvar[s] = lp.add_var("b" + std::to_string(s));
  // A successor without a bias would make the system spuriously feasible, so
  // the constrained set must be closed under (sigma, tau, random) moves.
  auto want_var = [&](StateId s) {
    if (bvar[s] < 0)
      throw GameError("domain-not-closed",
                      "bias domain misses successor " + std::to_string(s));
    return bvar[s];
  };

  for (int s = 0; s < n; ++s) {
    if (!strict_states[s]) continue;
    std::vector<std::pair<int, Rational>> terms{{bvar[s], Rational(1)}};
    Rational rhs = -2;
    if (h.owner(s) == Owner::Random) {
      for (int ei : h.out(s)) {
        const Edge& e = h.edge(ei);
        terms.push_back({want_var(e.dst), -*e.prob});
        rhs += *e.prob * Rational(e.reward);
      }
    } else {
      const MDStrategy& st = h.owner(s) == Owner::Max ? sigma : tau;
      if (static_cast<size_t>(s) >= st.choice.size() || !st.choice[s])
        throw GameError("partial-strategy",
                        "bias program needs a choice at state " +
                            std::to_string(s));
      const Edge& e = h.edge(*st.choice[s]);
      terms.push_back({want_var(e.dst), Rational(-1)});
      rhs += Rational(e.reward);
    }
    lp.add(std::move(terms), Relation::Lt, rhs);
  }
  lp.maximize = false;
  for (int s = 0; s < n; ++s) {
    if (bvar[s] < 0) continue;
    lp.add({{bvar[s], Rational(1)}}, Relation::Ge, Rational(0));
    lp.objective.push_back({bvar[s], Rational(1)});
  }

  LpResult r = solve_lp(lp);
  BiasSolution out;
  out.biases.assign(n, std::nullopt);
  if (r.status != LpStatus::Optimal) return out;
  out.feasible = true;
  out.gain = 2;  // the certified mean-payoff threshold
  for (int s = 0; s < n; ++s)
    if (bvar[s] >= 0) out.biases[s] = r.values[bvar[s]];
  record_size_check(out, lp, r);
  if (!satisfies(lp, r.values))
    throw GameError("lp-verify", "solution fails substitution check");
  return out;
}

}  // namespace enpar
