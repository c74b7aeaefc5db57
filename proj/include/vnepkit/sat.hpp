#pragma once

// Brute-force SAT oracle and assignment utilities. Deliberately a plain truth
// table: this module is the independent reference against which the instance
// constructions are cross-validated, so it must stay simple.

#include <map>
#include <optional>
#include <vector>

#include "vnepkit/cnf.hpp"

namespace vnep {

using Assignment = std::map<int, bool>;

inline bool evaluate(const CnfFormula& f, const Assignment& a) {
  for (int v : occurring_variables(f))
    if (!a.count(v))
      throw Error(ErrorKind::Argument,
                  "assignment is partial: variable x" + std::to_string(v) + " unset");
  for (const auto& c : f.clauses) {
    bool satisfied = false;
    for (int l : c.literals)
      if (a.at(std::abs(l)) == (l > 0)) {
        satisfied = true;
        break;
      }
    if (!satisfied) return false;
  }
  return true;
}

// Exhaustive enumeration over the occurring variables in binary counting
// order (all-false first, the smallest variable most significant). Returns
// the first satisfying assignment, or nullopt if none exists.
inline std::optional<Assignment> sat_oracle(const CnfFormula& f) {
  const std::vector<int> vars = occurring_variables(f);
  const int k = static_cast<int>(vars.size());
  if (k > 26) throw Error(ErrorKind::Argument, "oracle limited to 26 occurring literals");
  for (std::uint64_t counter = 0; counter < (1ull << k); ++counter) {
    Assignment a;
    for (int j = 0; j < k; ++j) a[vars[j]] = ((counter >> (k - 1 - j)) & 1ull) != 0;
    if (evaluate(f, a)) return a;
  }
  return std::nullopt;
}

// Deterministic random 3-SAT formula: m clauses of 3 distinct variables drawn
// from [1..n], uniform signs. Distinct variables rule out tautologies.
inline CnfFormula random_formula(int n, int m, std::uint64_t seed) {
  if (n < 3) throw Error(ErrorKind::Argument, "random_formula requires n >= 3");
  if (m < 0) throw Error(ErrorKind::Argument, "negative clause count");
  // xorshift-style generator kept local so the byte stream is stable across
  // platforms and standard library versions.
  std::uint64_t state = seed * 6364136223846793005ull + 1442695040888963407ull;
  auto next = [&state]() {
    state ^= state >> 12;
    state ^= state << 25;
    state ^= state >> 27;
    return state * 2685821657736338717ull;
  };
  std::vector<std::vector<int>> clauses;
  clauses.reserve(m);
  for (int i = 0; i < m; ++i) {
    std::vector<int> vars;
    while (static_cast<int>(vars.size()) < 3) {
      int v = static_cast<int>(next() % static_cast<std::uint64_t>(n)) + 1;
      bool dup = false;
      for (int w : vars) dup = dup || (w == v);
      if (!dup) vars.push_back(v);
    }
    std::vector<int> clause;
    for (int v : vars) clause.push_back((next() & 1ull) ? v : -v);
    clauses.push_back(std::move(clause));
  }
  return make_formula(n, clauses);
}

}  // namespace vnep
