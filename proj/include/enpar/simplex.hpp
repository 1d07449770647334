#pragma once

#include <string>
#include <utility>
#include <vector>

#include "enpar/rational.hpp"

namespace enpar {

enum class Relation { Le, Lt, Eq, Ge, Gt };

struct LinearConstraint {
  std::vector<std::pair<int, Rational>> terms;  // (variable, coefficient)
  Relation rel = Relation::Le;
  Rational rhs;
};

struct LinearProgram {
  std::vector<std::string> variables;
  std::vector<LinearConstraint> constraints;
  bool maximize = true;
  std::vector<std::pair<int, Rational>> objective;

  int add_var(std::string name) {
    variables.push_back(std::move(name));
    return static_cast<int>(variables.size()) - 1;
  }
  void add(std::vector<std::pair<int, Rational>> terms, Relation rel,
           Rational rhs) {
    constraints.push_back({std::move(terms), rel, std::move(rhs)});
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> values;  // per variable, when Optimal
  Rational objective;
  // Slack used to encode strict inequalities: 1/(2D) with D the lcm of all
  // constraint denominators times (#variables + 1); zero when none occur.
  Rational epsilon;
};

// Exact two-phase simplex, Bland's rule, deterministic variable order.
// Variables are free (internally split into nonnegative parts).
LpResult solve_lp(const LinearProgram& lp);

// Plain var/constraint/objective text listing for debugging.
std::string dump_lp(const LinearProgram& lp);

// Substitutes values into every constraint; true iff all hold exactly
// (strict ones strictly).
bool satisfies(const LinearProgram& lp, const std::vector<Rational>& values);

}  // namespace enpar
