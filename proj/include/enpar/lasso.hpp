#pragma once

#include <map>
#include <vector>

#include "enpar/game.hpp"

namespace enpar {

// Ultimately periodic run: prefix (possibly empty) followed by a cycle,
// given as edge indices into the game. dst of each edge = src of the next,
// and the cycle closes on itself.
struct LassoRun {
  std::vector<int> prefix;
  std::vector<int> cycle;
};

enum class LimitClass { NegInf, Finite, PosInf };

// Exact classification of the objectives on one lasso.
struct ObjectiveReport {
  std::vector<char> en_k;       // en_k[k]: every prefix cost >= -k, k <= k_max
  std::vector<char> storage_l;  // storage_l[l]: every infix cost >= -l
  LimitClass liminf_class = LimitClass::Finite;
  LimitClass limsup_class = LimitClass::Finite;
  bool parity = false;  // minimal priority among cycle states is even
  Rational mean_payoff; // cycle cost / cycle length

  bool en(int k) const { return k >= static_cast<int>(en_k.size()) ? en_k.back() : en_k[k]; }
  bool storage(int l) const {
    return l >= static_cast<int>(storage_l.size()) ? storage_l.back() : storage_l[l];
  }
};

// Throws GameError("path-inconsistent", ...) if the run does not fit g.
void check_lasso(const Game& g, const LassoRun& run);

ObjectiveReport classify_lasso(const Game& g, const LassoRun& run, int k_max,
                               int l_max);

// Bailout'(k,l) on a lasso: ES(k,l) and (Parity or LimSup = +inf).
bool lasso_bailout_prime(const ObjectiveReport& r, int k, int l);
// Bailout''(k,l): ES(k,l) and (Parity or LimInf = +inf).
bool lasso_bailout_double_prime(const ObjectiveReport& r, int k, int l);
// k-Bailout: some-l storage-parity at credit k, or EN(k) with LimSup = +inf.
// Decided exactly (the some-l part saturates within the lasso's own bound).
bool lasso_k_bailout(const Game& g, const LassoRun& run, int k);

}  // namespace enpar
