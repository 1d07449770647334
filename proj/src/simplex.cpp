#include "enpar/simplex.hpp"

#include <algorithm>
#include <sstream>

namespace enpar {

namespace {

Rational strict_slack(const LinearProgram& lp) {
  Int d = 1;
  for (const auto& c : lp.constraints) {
    for (const auto& [v, coef] : c.terms) d = int_lcm(d, denominator(coef));
    d = int_lcm(d, denominator(c.rhs));
  }
  d *= Int(lp.variables.size() + 1);
  return Rational(Int(1), 2 * d);
}

struct Tableau {
  int cols = 0;                            // structural + slack + artificial
  std::vector<std::vector<Rational>> row;  // each of size cols + 1 (rhs last)
  std::vector<int> basis;                  // basic column per row
  std::vector<Rational> obj;               // reduced cost row, size cols + 1

  void pivot(int r, int c) {
    Rational p = row[r][c];
    for (auto& x : row[r]) x /= p;
    for (size_t i = 0; i < row.size(); ++i) {
      if (static_cast<int>(i) == r || row[i][c] == 0) continue;
      Rational f = row[i][c];
      for (int j = 0; j <= cols; ++j) row[i][j] -= f * row[r][j];
    }
    if (obj[c] != 0) {
      Rational f = obj[c];
      for (int j = 0; j <= cols; ++j) obj[j] -= f * row[r][j];
    }
    basis[r] = c;
  }

  // Minimizes the current objective row with Bland's rule.
  // Returns false when unbounded. `allowed` masks enterable columns.
  bool run(const std::vector<char>& allowed) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < cols; ++j) {
        if (allowed[j] && obj[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (size_t i = 0; i < row.size(); ++i) {
        if (row[i][enter] <= 0) continue;
        Rational ratio = row[i][cols] / row[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          leave = static_cast<int>(i);
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const int nvars = static_cast<int>(lp.variables.size());
  LpResult res;

  bool any_strict = false;
  for (const auto& c : lp.constraints)
    if (c.rel == Relation::Lt || c.rel == Relation::Gt) any_strict = true;
  Rational eps = any_strict ? strict_slack(lp) : Rational(0);
  res.epsilon = eps;

  // Free variables split as x = xp - xn; columns 2v (positive part) and
  // 2v + 1 (negative part).
  const int split = 2 * nvars;
  struct Row {
    std::vector<Rational> a;  // size split
    Rational b;
    Relation rel;             // Le, Eq or Ge after slack substitution
  };
  std::vector<Row> rows;
  for (const auto& c : lp.constraints) {
    Row r;
    r.a.assign(split, Rational(0));
    for (const auto& [v, coef] : c.terms) {
      r.a[2 * v] += coef;
      r.a[2 * v + 1] -= coef;
    }
    r.b = c.rhs;
    r.rel = c.rel;
    if (c.rel == Relation::Lt) {
      r.rel = Relation::Le;
      r.b -= eps;
    } else if (c.rel == Relation::Gt) {
      r.rel = Relation::Ge;
      r.b += eps;
    }
    if (r.b < 0) {  // normalize to nonnegative rhs
      for (auto& x : r.a) x = -x;
      r.b = -r.b;
      if (r.rel == Relation::Le) r.rel = Relation::Ge;
      else if (r.rel == Relation::Ge) r.rel = Relation::Le;
    }
    rows.push_back(std::move(r));
  }

  const int m = static_cast<int>(rows.size());
  int slacks = 0;
  for (const auto& r : rows)
    if (r.rel != Relation::Eq) ++slacks;
  Tableau t;
  t.cols = split + slacks + m;  // artificials for every row keep it simple
  t.basis.assign(m, -1);
  t.row.assign(m, std::vector<Rational>(t.cols + 1, Rational(0)));
  int next_slack = split;
  const int art0 = split + slacks;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < split; ++j) t.row[i][j] = rows[i].a[j];
    t.row[i][t.cols] = rows[i].b;
    if (rows[i].rel == Relation::Le) t.row[i][next_slack++] = 1;
    else if (rows[i].rel == Relation::Ge) t.row[i][next_slack++] = -1;
    t.row[i][art0 + i] = 1;
    t.basis[i] = art0 + i;
  }

  // Phase 1: minimize the sum of artificials.
  t.obj.assign(t.cols + 1, Rational(0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= t.cols; ++j) t.obj[j] -= t.row[i][j];
  for (int i = 0; i < m; ++i) t.obj[art0 + i] += 1;
  std::vector<char> allowed(t.cols, 1);
  if (!t.run(allowed)) return res;  // cannot happen; defensive
  if (-t.obj[t.cols] != 0) {
    res.status = LpStatus::Infeasible;
    return res;
  }
  // Drive leftover artificials out of the basis.
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < art0) continue;
    int c = -1;
    for (int j = 0; j < art0; ++j) {
      if (t.row[i][j] != 0) {
        c = j;
        break;
      }
    }
    if (c >= 0) t.pivot(i, c);
    // else: redundant row; keeping it is harmless (rhs is zero)
  }
  for (int j = art0; j < t.cols; ++j) allowed[j] = 0;

  // Phase 2: reduced original objective (internally minimize).
  std::vector<Rational> cost(t.cols, Rational(0));
  for (const auto& [v, coef] : lp.objective) {
    Rational c = lp.maximize ? -coef : coef;
    cost[2 * v] += c;
    cost[2 * v + 1] -= c;
  }
  t.obj.assign(t.cols + 1, Rational(0));
  for (int j = 0; j < t.cols; ++j) t.obj[j] = cost[j];
  for (int i = 0; i < m; ++i) {
    if (cost[t.basis[i]] == 0) continue;
    Rational f = cost[t.basis[i]];
    for (int j = 0; j <= t.cols; ++j) t.obj[j] -= f * t.row[i][j];
  }
  if (!t.run(allowed)) {
    res.status = LpStatus::Unbounded;
    return res;
  }

  res.status = LpStatus::Optimal;
  res.values.assign(nvars, Rational(0));
  for (int i = 0; i < m; ++i) {
    int b = t.basis[i];
    if (b >= split) continue;
    Rational v = t.row[i][t.cols];
    if (b % 2 == 0) res.values[b / 2] += v;
    else res.values[b / 2] -= v;
  }
  Rational z = -t.obj[t.cols];  // minimized value
  res.objective = lp.maximize ? -z : z;
  return res;
}

namespace {

const char* rel_str(Relation r) {
  switch (r) {
    case Relation::Le: return "<=";
    case Relation::Lt: return "<";
    case Relation::Eq: return "=";
    case Relation::Ge: return ">=";
    case Relation::Gt: return ">";
  }
  return "?";
}

void dump_terms(std::ostringstream& out, const LinearProgram& lp,
                const std::vector<std::pair<int, Rational>>& terms) {
  bool first = true;
  for (const auto& [v, coef] : terms) {
    if (coef == 0) continue;
    if (!first) out << " + ";
    out << rational_str(coef) << "*" << lp.variables[v];
    first = false;
  }
  if (first) out << "0";
}

}  // namespace

std::string dump_lp(const LinearProgram& lp) {
  std::ostringstream out;
  for (const auto& v : lp.variables) out << "var " << v << "\n";
  for (const auto& c : lp.constraints) {
    out << "constraint ";
    dump_terms(out, lp, c.terms);
    out << " " << rel_str(c.rel) << " " << rational_str(c.rhs) << "\n";
  }
  out << "objective " << (lp.maximize ? "maximize " : "minimize ");
  dump_terms(out, lp, lp.objective);
  out << "\n";
  return out.str();
}

bool satisfies(const LinearProgram& lp, const std::vector<Rational>& values) {
  for (const auto& c : lp.constraints) {
    Rational lhs = 0;
    for (const auto& [v, coef] : c.terms) lhs += coef * values[v];
    switch (c.rel) {
      case Relation::Le: if (!(lhs <= c.rhs)) return false; break;
      case Relation::Lt: if (!(lhs < c.rhs)) return false; break;
      case Relation::Eq: if (!(lhs == c.rhs)) return false; break;
      case Relation::Ge: if (!(lhs >= c.rhs)) return false; break;
      case Relation::Gt: if (!(lhs > c.rhs)) return false; break;
    }
  }
  return true;
}

}  // namespace enpar
