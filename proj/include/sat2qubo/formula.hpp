#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sat2qubo {

/// A variable v_j or its negation. Variables are 0-based.
struct Literal {
  std::uint32_t var = 0;
  bool negated = false;

  constexpr Literal operator!() const { return {var, !negated}; }

  /// Signed 1-based DIMACS id.
  constexpr std::int64_t dimacs() const {
    const auto id = static_cast<std::int64_t>(var) + 1;
    return negated ? -id : id;
  }

  static Literal from_dimacs(std::int64_t id);

  friend constexpr auto operator<=>(const Literal&, const Literal&) = default;
};

constexpr Literal pos(std::uint32_t var) { return {var, false}; }
constexpr Literal neg(std::uint32_t var) { return {var, true}; }

/// Position of a literal in (v_0, ¬v_0, v_1, ¬v_1, ...).
constexpr std::size_t literal_index(Literal l) {
  return 2 * static_cast<std::size_t>(l.var) + (l.negated ? 1 : 0);
}

class Assignment;

/// Disjunction of exactly three literals.
struct Clause {
  std::array<Literal, 3> lits{};

  bool contains(Literal l) const;
  /// True when the three literals mention three different variables.
  bool has_distinct_vars() const;
  bool satisfied_by(const Assignment& a) const;
  /// Number of negated literals, 0..3.
  int negations() const;

  friend bool operator==(const Clause&, const Clause&) = default;
};

/// Stable polarity sort: positive literals first, relative order kept.
Clause normalize_clause(const Clause& c);

/// Truth values b_j for the n variables of a formula.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t n, bool value = false) : values_(n, value) {}
  explicit Assignment(std::vector<bool> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  bool operator[](std::size_t j) const { return values_[j]; }
  void set(std::size_t j, bool value) { values_[j] = value; }
  bool value(Literal l) const { return values_[l.var] != l.negated; }
  const std::vector<bool>& values() const { return values_; }

  /// "0110..." with index 0 first.
  std::string to_string() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<bool> values_;
};

enum class ClauseMode {
  strict,      ///< three distinct variables per clause
  permissive,  ///< repeated variables admitted (translators still reject them)
};

/// 3-SAT / MAX-3-SAT instance. Clause order is significant.
class Formula {
 public:
  Formula() = default;
  /// Throws Error when a literal is out of range or, in strict mode, a clause
  /// repeats a variable.
  Formula(std::size_t num_vars, std::vector<Clause> clauses,
          ClauseMode mode = ClauseMode::strict);

  std::size_t num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const Clause& clause(std::size_t k) const { return clauses_[k]; }

  /// Every clause has three distinct variables.
  bool is_strict() const;
  /// Throws Error unless is_strict().
  void require_strict(std::string_view who) const;

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  std::size_t num_vars_ = 0;
  std::vector<Clause> clauses_;
};

Formula parse_dimacs(std::istream& in, ClauseMode mode = ClauseMode::strict);
Formula parse_dimacs(std::string_view text, ClauseMode mode = ClauseMode::strict);

void write_dimacs(std::ostream& out, const Formula& f);
std::string write_dimacs(const Formula& f);

/// Uniform random 3-SAT: three distinct variables without replacement, then a
/// fair coin per literal. Deterministic in seed.
Formula random_3sat(std::size_t num_vars, std::size_t num_clauses, std::uint64_t seed);

/// ceil(ratio * n), robust to the representation error of decimal ratios.
std::size_t clauses_for_ratio(std::size_t num_vars, double ratio = 4.2);

/// Number of clauses containing l.
std::size_t count_single(const Formula& f, Literal l);
/// Number of clauses containing both l1 and l2.
std::size_t count_pair(const Formula& f, Literal l1, Literal l2);

std::size_t satisfied_count(const Formula& f, const Assignment& a);

inline constexpr std::size_t kBruteForceVarCap = 24;

struct MaxSatResult {
  std::size_t best_count = 0;
  Assignment witness;
};

/// Exact MAX-3-SAT by enumeration. Ties go to the lexicographically smallest
/// assignment (false < true, variable 0 most significant).
MaxSatResult maxsat_bruteforce(const Formula& f, std::size_t var_cap = kBruteForceVarCap);

}  // namespace sat2qubo
