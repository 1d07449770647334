#include "enpar/lasso.hpp"

#include <algorithm>

namespace enpar {

void check_lasso(const Game& g, const LassoRun& run) {
  if (run.cycle.empty())
    throw GameError("path-inconsistent", "lasso cycle is empty");
  auto check_edge = [&](int e) {
    if (e < 0 || e >= g.num_edges())
      throw GameError("path-inconsistent", "edge index out of range");
  };
  std::vector<int> all = run.prefix;
  all.insert(all.end(), run.cycle.begin(), run.cycle.end());
  for (int e : all) check_edge(e);
  for (size_t i = 0; i + 1 < all.size(); ++i) {
    if (g.edge(all[i]).dst != g.edge(all[i + 1]).src)
      throw GameError("path-inconsistent",
                      "edges do not chain at position " + std::to_string(i));
  }
  if (g.edge(all.back()).dst != g.edge(run.cycle.front()).src)
    throw GameError("path-inconsistent", "cycle does not close");
}

namespace {

struct LassoCosts {
  long long cycle_total = 0;
  // Finite minima over prefix + two cycle unrollings; exact whenever the
  // cycle total is >= 0 (all window minima occur within two periods).
  long long min_prefix_cost = 0;
  long long min_infix_cost = 0;
};

LassoCosts lasso_costs(const Game& g, const LassoRun& run) {
  LassoCosts c;
  for (int e : run.cycle) c.cycle_total += g.edge(e).reward;
  std::vector<int> expansion = run.prefix;
  for (int rep = 0; rep < 2; ++rep)
    expansion.insert(expansion.end(), run.cycle.begin(), run.cycle.end());
  std::vector<long long> sums{0};
  for (int e : expansion) sums.push_back(sums.back() + g.edge(e).reward);
  c.min_prefix_cost = *std::min_element(sums.begin(), sums.end());
  long long best = 0;
  for (size_t i = 0; i < sums.size(); ++i)
    for (size_t j = i; j < sums.size(); ++j)
      best = std::min(best, sums[j] - sums[i]);
  c.min_infix_cost = best;
  return c;
}

bool lasso_parity(const Game& g, const LassoRun& run) {
  int min_prio = g.priority(g.edge(run.cycle.front()).src);
  for (int e : run.cycle) min_prio = std::min(min_prio, g.priority(g.edge(e).src));
  return min_prio % 2 == 0;
}

}  // namespace

ObjectiveReport classify_lasso(const Game& g, const LassoRun& run, int k_max,
                               int l_max) {
  check_lasso(g, run);
  LassoCosts c = lasso_costs(g, run);
  ObjectiveReport r;
  bool diverges_down = c.cycle_total < 0;
  r.en_k.resize(k_max + 1);
  for (int k = 0; k <= k_max; ++k)
    r.en_k[k] = !diverges_down && c.min_prefix_cost >= -static_cast<long long>(k);
  r.storage_l.resize(l_max + 1);
  for (int l = 0; l <= l_max; ++l)
    r.storage_l[l] = !diverges_down && c.min_infix_cost >= -static_cast<long long>(l);
  r.liminf_class = c.cycle_total > 0   ? LimitClass::PosInf
                   : c.cycle_total < 0 ? LimitClass::NegInf
                                       : LimitClass::Finite;
  r.limsup_class = r.liminf_class;
  r.parity = lasso_parity(g, run);
  r.mean_payoff = Rational(Int(c.cycle_total), Int(run.cycle.size()));
  return r;
}

bool lasso_bailout_prime(const ObjectiveReport& r, int k, int l) {
  bool es = r.en(k) && r.storage(l);
  return es && (r.parity || r.limsup_class == LimitClass::PosInf);
}

bool lasso_bailout_double_prime(const ObjectiveReport& r, int k, int l) {
  bool es = r.en(k) && r.storage(l);
  return es && (r.parity || r.liminf_class == LimitClass::PosInf);
}

bool lasso_k_bailout(const Game& g, const LassoRun& run, int k) {
  check_lasso(g, run);
  LassoCosts c = lasso_costs(g, run);
  if (c.cycle_total < 0) return false;  // EN(k) already fails for every k
  bool en = c.min_prefix_cost >= -static_cast<long long>(k);
  if (!en) return false;
  // cycle total >= 0 means some storage level l works, exactly -min_infix.
  bool storage_parity = lasso_parity(g, run);
  bool limsup_inf = c.cycle_total > 0;
  return storage_parity || limsup_inf;
}

}  // namespace enpar
