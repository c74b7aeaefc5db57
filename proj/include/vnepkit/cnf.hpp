#pragma once

// 3-SAT formulas: DIMACS parsing/writing, clause-order dependent first
// occurrences, per-clause satisfying assignments, and the greedy
// order-or-decompose normalization that the instance constructions require.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "vnepkit/rational.hpp"

namespace vnep {

// A clause is a set of at most three signed literals, stored sorted by
// variable index. Signs: +k for x_k, -k for negated x_k.
struct Clause {
  std::vector<int> literals;

  std::vector<int> variables() const {
    std::vector<int> v;
    v.reserve(literals.size());
    for (int l : literals) v.push_back(l < 0 ? -l : l);
    return v;
  }
  bool contains_variable(int var) const {
    for (int l : literals)
      if (l == var || l == -var) return true;
    return false;
  }
};

struct CnfFormula {
  int num_literals = 0;  // variables are indexed 1..num_literals
  std::vector<Clause> clauses;
};

inline Clause make_clause(std::vector<int> lits, int num_literals) {
  std::sort(lits.begin(), lits.end(),
            [](int a, int b) { return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b; });
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  if (lits.empty()) throw Error(ErrorKind::Parse, "empty clause");
  for (size_t k = 0; k + 1 < lits.size(); ++k)
    if (std::abs(lits[k]) == std::abs(lits[k + 1]))
      throw Error(ErrorKind::Tautology,
                  "clause contains literal x" + std::to_string(std::abs(lits[k])) +
                      " and its negation");
  if (lits.size() > 3)
    throw Error(ErrorKind::ClauseSize, "clause with " + std::to_string(lits.size()) +
                                           " distinct literals (at most 3 allowed)");
  for (int l : lits) {
    if (l == 0) throw Error(ErrorKind::Parse, "literal index 0");
    if (std::abs(l) > num_literals)
      throw Error(ErrorKind::Parse, "literal index " + std::to_string(std::abs(l)) +
                                        " exceeds declared count " + std::to_string(num_literals));
  }
  return Clause{std::move(lits)};
}

inline CnfFormula make_formula(int num_literals, const std::vector<std::vector<int>>& clauses) {
  if (num_literals < 0) throw Error(ErrorKind::Argument, "negative literal count");
  CnfFormula f;
  f.num_literals = num_literals;
  f.clauses.reserve(clauses.size());
  for (const auto& c : clauses) f.clauses.push_back(make_clause(c, num_literals));
  return f;
}

// Standard DIMACS CNF: "c" comments, one "p cnf N M" header, 0-terminated
// clauses. Duplicate literals within a clause are deduplicated; tautological
// clauses and clauses with more than three distinct literals are rejected.
// The clause count of the header is not enforced against the body.
inline CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  int n = 0;
  std::vector<std::vector<int>> clauses;
  std::vector<int> pending;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok.size() > 1 && tok[0] == 'c') continue;
    if (tok == "p") {
      if (have_header) throw Error(ErrorKind::Parse, "duplicate 'p' header");
      std::string fmt;
      int m = 0;
      if (!(ls >> fmt >> n >> m) || fmt != "cnf" || n < 0 || m < 0)
        throw Error(ErrorKind::Parse, "malformed 'p cnf N M' header");
      have_header = true;
      continue;
    }
    ls.clear();
    ls.str(line);
    int lit;
    while (ls >> lit) {
      if (!have_header) throw Error(ErrorKind::Parse, "clause before 'p cnf' header");
      if (lit == 0) {
        if (pending.empty()) throw Error(ErrorKind::Parse, "empty clause");
        clauses.push_back(pending);
        pending.clear();
      } else {
        pending.push_back(lit);
      }
    }
    if (!ls.eof()) throw Error(ErrorKind::Parse, "unexpected token in '" + line + "'");
  }
  if (!have_header) throw Error(ErrorKind::Parse, "missing 'p cnf' header");
  if (!pending.empty()) throw Error(ErrorKind::Parse, "unterminated clause at end of input");
  return make_formula(n, clauses);
}

inline std::string write_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_literals << " " << f.clauses.size() << "\n";
  for (const auto& c : f.clauses) {
    for (int l : c.literals) out << l << " ";
    out << "0\n";
  }
  return out.str();
}

inline std::vector<int> occurring_variables(const CnfFormula& f) {
  std::set<int> vars;
  for (const auto& c : f.clauses)
    for (int v : c.variables()) vars.insert(v);
  return {vars.begin(), vars.end()};
}

// C(x_k): the 1-based index of the first clause containing x_k under the
// formula's clause order. Variables that occur nowhere have no entry.
inline std::map<int, int> first_occurrence(const CnfFormula& f) {
  std::map<int, int> first;
  for (size_t i = 0; i < f.clauses.size(); ++i)
    for (int v : f.clauses[i].variables()) first.emplace(v, static_cast<int>(i) + 1);
  return first;
}

// A truth assignment to one clause's variables that satisfies the clause.
struct LocalAssignment {
  int clause_index = 0;  // 1-based
  std::map<int, bool> values;
};

// All satisfying assignments of clause i, in canonical order: binary counting
// over the sorted variable indices with F < T and the smallest variable as the
// most significant position. For k distinct literals there are 2^k - 1.
inline std::vector<LocalAssignment> local_satisfying_assignments(const CnfFormula& f,
                                                                 int clause_index) {
  if (clause_index < 1 || clause_index > static_cast<int>(f.clauses.size()))
    throw Error(ErrorKind::Argument, "clause index out of range");
  const Clause& c = f.clauses[clause_index - 1];
  const std::vector<int> vars = c.variables();
  const int k = static_cast<int>(vars.size());
  std::vector<LocalAssignment> out;
  out.reserve((1u << k) - 1);
  for (unsigned counter = 0; counter < (1u << k); ++counter) {
    LocalAssignment a;
    a.clause_index = clause_index;
    for (int j = 0; j < k; ++j) a.values[vars[j]] = ((counter >> (k - 1 - j)) & 1u) != 0;
    bool satisfied = false;
    for (int l : c.literals)
      if (a.values[std::abs(l)] == (l > 0)) {
        satisfied = true;
        break;
      }
    if (satisfied) out.push_back(std::move(a));
  }
  return out;
}

struct NormalizeResult {
  bool decomposed = false;
  CnfFormula ordered;                  // set iff !decomposed
  std::vector<CnfFormula> components;  // set iff decomposed; each is ordered
};

// Greedy ordering: start from the lowest-index clause, then repeatedly append
// the lowest-index remaining clause sharing a variable with the indexed set.
// If the greedy step ever fails, the formula splits into variable-disjoint
// components, each of which is ordered recursively by the same scheme.
inline NormalizeResult normalize(const CnfFormula& f) {
  const size_t m = f.clauses.size();
  std::vector<bool> used(m, false);
  std::vector<std::vector<size_t>> components;
  size_t remaining = m;
  while (remaining > 0) {
    size_t start = 0;
    while (used[start]) ++start;
    std::vector<size_t> comp{start};
    used[start] = true;
    --remaining;
    std::set<int> vars;
    for (int v : f.clauses[start].variables()) vars.insert(v);
    bool grew = true;
    while (grew && remaining > 0) {
      grew = false;
      for (size_t i = 0; i < m; ++i) {
        if (used[i]) continue;
        bool shares = false;
        for (int v : f.clauses[i].variables())
          if (vars.count(v)) {
            shares = true;
            break;
          }
        if (!shares) continue;
        comp.push_back(i);
        used[i] = true;
        --remaining;
        for (int v : f.clauses[i].variables()) vars.insert(v);
        grew = true;
        break;  // restart from the lowest index
      }
    }
    components.push_back(std::move(comp));
  }
  NormalizeResult result;
  auto build = [&f](const std::vector<size_t>& indices) {
    CnfFormula g;
    g.num_literals = f.num_literals;
    for (size_t i : indices) g.clauses.push_back(f.clauses[i]);
    return g;
  };
  if (components.size() <= 1) {
    result.decomposed = false;
    result.ordered = components.empty() ? f : build(components[0]);
  } else {
    result.decomposed = true;
    for (const auto& comp : components) result.components.push_back(build(comp));
  }
  return result;
}

// Ordering property required by the instance constructions: every clause
// after the first shares a variable with some earlier clause (equivalently,
// only the first request node lacks incoming edges).
inline bool is_ordered(const CnfFormula& f) {
  std::set<int> seen;
  for (size_t i = 0; i < f.clauses.size(); ++i) {
    const auto vars = f.clauses[i].variables();
    if (i > 0) {
      bool shares = false;
      for (int v : vars)
        if (seen.count(v)) {
          shares = true;
          break;
        }
      if (!shares) return false;
    }
    seen.insert(vars.begin(), vars.end());
  }
  return true;
}

}  // namespace vnep
