#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "sat2qubo/formula.hpp"
#include "sat2qubo/qubo.hpp"

namespace fixtures {

using sat2qubo::Clause;
using sat2qubo::Formula;
using sat2qubo::Literal;
using sat2qubo::QuboMatrix;

/// Clauses given as signed 1-based ids, e.g. {{1, 2, -3}}.
inline Formula cnf(std::size_t n, std::initializer_list<std::array<int, 3>> clauses,
                   sat2qubo::ClauseMode mode = sat2qubo::ClauseMode::strict) {
  std::vector<Clause> out;
  for (const auto& c : clauses) {
    out.push_back(Clause{{Literal::from_dimacs(c[0]), Literal::from_dimacs(c[1]),
                          Literal::from_dimacs(c[2])}});
  }
  return Formula(n, std::move(out), mode);
}

/// Upper triangle read row by row; entries below the diagonal are ignored.
inline QuboMatrix upper(const std::vector<std::vector<std::int64_t>>& rows) {
  QuboMatrix q(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i; j < rows.size(); ++j) {
      if (rows[i][j] != 0) q.add(i, j, rows[i][j]);
    }
  }
  return q;
}

// a, b, c, d = variables 1..4.

/// (a ∨ b ∨ c) ∧ (a ∨ ¬c ∨ ¬d)
inline Formula intro_formula() { return cnf(4, {{1, 2, 3}, {1, -3, -4}}); }

/// (a ∨ b ∨ ¬c) ∧ (a ∨ ¬b ∨ ¬c), literal-pair translation example.
inline Formula literal_pair_formula() { return cnf(3, {{1, 2, -3}, {1, -2, -3}}); }

inline QuboMatrix literal_pair_matrix() {
  return upper({
      {-2, 3, 1, 1, 0, 2, -1, -1},
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, -1, 3, 0, 1, -1, 0},
      {0, 0, 0, -1, 0, 1, 0, -1},
      {0, 0, 0, 0, 0, 3, 0, 0},
      {0, 0, 0, 0, 0, -2, -1, -1},
      {0, 0, 0, 0, 0, 0, 2, 0},
      {0, 0, 0, 0, 0, 0, 0, 2},
  });
}

/// (a ∨ b ∨ c) ∧ (a ∨ ¬b ∨ ¬c), pattern-stacking example and Chancellor comparison.
inline Formula pattern_formula() { return cnf(3, {{1, 2, 3}, {1, -2, -3}}); }

inline QuboMatrix pattern_matrix() {
  return upper({
      {0 + 2, 2 - 2, 0 + 0, -2, -2},
      {0, 0 + 0, 0 + 0, -2, 2},
      {0, 0, -1 + 1, 1, -1},
      {0, 0, 0, 1, 0},
      {0, 0, 0, 0, 0},
  });
}

inline QuboMatrix chancellor_comparison_matrix() {
  return upper({
      {-88, 40, 40, 40, 40},
      {0, -88, 48, 40, 40},
      {0, 0, -88, 40, 40},
      {0, 0, 0, -64, 0},
      {0, 0, 0, 0, -64},
  });
}

/// (¬a ∨ ¬b ∨ ¬c) ∧ (a ∨ b ∨ c)
inline Formula chancellor_table_formula() { return cnf(3, {{-1, -2, -3}, {1, 2, 3}}); }

inline QuboMatrix chancellor_table_matrix() {
  return upper({
      {-88, 48, 48, 40, 40},
      {0, -88, 48, 40, 40},
      {0, 0, -88, 40, 40},
      {0, 0, 0, -56, 0},
      {0, 0, 0, 0, -64},
  });
}

/// (a ∨ b ∨ c) ∧ (a ∨ b ∨ ¬c), Choi example and aux-sharing example.
inline Formula shared_pair_formula() { return cnf(3, {{1, 2, 3}, {1, 2, -3}}); }

/// All eight sign patterns over three variables.
inline Formula all_sign_patterns() {
  return cnf(3, {{1, 2, 3},
                 {1, 2, -3},
                 {1, -2, 3},
                 {1, -2, -3},
                 {-1, 2, 3},
                 {-1, 2, -3},
                 {-1, -2, 3},
                 {-1, -2, -3}});
}

}  // namespace fixtures
