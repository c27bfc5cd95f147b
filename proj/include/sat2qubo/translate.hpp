#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sat2qubo/formula.hpp"
#include "sat2qubo/qubo.hpp"

namespace sat2qubo {

enum class Method { choi, chancellor, nuesslein2nm, nuessleinnm };

/// Row order used by every summary table.
inline constexpr std::array<Method, 4> kAllMethods = {
    Method::nuesslein2nm, Method::nuessleinnm, Method::chancellor, Method::choi};

std::string_view method_name(Method m);
/// Throws Error for unknown names.
Method parse_method(std::string_view name);

/// What a QUBO index stands for.
///
///   variable     var:<j>                  x_j is the truth value of v_j
///   literal      lit:<j>,<neg>            one of the two literal qubits of v_j
///   literal_slot slot:<k>,<i>,<l>         slot i of clause k, holding literal l (Choi)
///   clause_aux   aux:clause:<k>           one auxiliary qubit per clause
///   pair_aux     aux:pair:<l1>,<l2>       shared aux keyed by two literals
///   triple_aux   aux:triple:<l1>,<l2>,<l3>
///
/// Literal arguments of the shared keys are signed 1-based DIMACS ids.
enum class RoleKind { variable, literal, literal_slot, clause_aux, pair_aux, triple_aux };

struct QubitRole {
  RoleKind kind = RoleKind::variable;
  std::vector<std::int64_t> args;

  std::string to_string() const;
  static QubitRole parse(std::string_view text);

  friend bool operator==(const QubitRole&, const QubitRole&) = default;
};

/// Incentive X and penalties Y (same clause) and Z (contradicting literals).
struct ChoiParams {
  std::int64_t X = 1;
  std::int64_t Y = 3;
  std::int64_t Z = 3;

  /// Requires X > 0, Y > 2|X|, Z > 2|X|.
  void validate() const;
};

enum class ChancellorScale {
  unit_gap,  ///< divide by 8h/g so a violated clause costs exactly g
  ising,     ///< raw s = 2x - 1 substitution of the Ising weights
};

/// Weights of the clause Hamiltonian and its triple-term gadget.
struct ChancellorParams {
  std::int64_t h = 1;
  std::int64_t g = 1;
  std::int64_t h_a = 2;
  std::int64_t J = 5;
  std::int64_t J_a = 10;
  ChancellorScale scale = ChancellorScale::unit_gap;

  /// Requires h, g, J > 0, h_a = 2h, J_a = 2J.
  void validate() const;
};

struct TranslationMeta {
  std::size_t num_vars = 0;
  std::size_t num_clauses = 0;
  /// nuessleinnm: clauses without / with only negated literals.
  std::size_t p = 0;
  std::size_t q = 0;
  bool share_aux = false;
  ChoiParams choi;
  ChancellorParams chancellor;
  /// Minimum energy when every clause is satisfied.
  std::int64_t satisfied_level = 0;
  /// Energy added per violated clause at the optimum.
  std::int64_t violation_cost = 1;
};

struct Translation {
  Method method = Method::nuessleinnm;
  QuboMatrix qubo;
  std::vector<QubitRole> roles;
  TranslationMeta meta;
};

// All translators require a strict formula (three distinct variables per clause).

/// 3m qubits, one per literal slot.
Translation translate_choi(const Formula& f, const ChoiParams& params = {});
/// n + m qubits: variables then one ancilla per clause.
Translation translate_chancellor(const Formula& f, const ChancellorParams& params = {});
/// 2n + m qubits: literal pairs (v_j, ¬v_j) then one qubit per clause.
Translation translate_nuesslein2nm(const Formula& f);
/// n + A qubits, A <= m distinct aux qubits (A = m when share_aux is off).
Translation translate_nuessleinnm(const Formula& f, bool share_aux = true);

struct TranslateOptions {
  ChoiParams choi;
  ChancellorParams chancellor;
  bool share_aux = true;
};

Translation translate(const Formula& f, Method method, const TranslateOptions& opts = {});

/// One 4x4 stencil over slots (a, b, c, aux) for a normalized clause.
struct ClausePattern {
  std::array<std::array<std::int64_t, 4>, 4> weights{};  ///< upper triangle used
  std::int64_t satisfied_energy = 0;                      ///< H* of the stencil
};

/// Stencil for a normalized clause with the given number of negated literals.
const ClausePattern& nuesslein_pattern(int negations);

Assignment decode_choi(const Translation& t, std::span<const std::uint8_t> x);
Assignment decode_nuesslein2nm(const Translation& t, std::span<const std::uint8_t> x);
/// v_j = x_j; for chancellor and nuessleinnm.
Assignment decode_direct(const Translation& t, std::span<const std::uint8_t> x);
/// Dispatches on t.method.
Assignment decode(const Translation& t, std::span<const std::uint8_t> x);

/// Minimum QUBO energy given the MAX-3-SAT optimum of the translated formula.
std::int64_t expected_min_energy(const Translation& t, std::size_t optimum);
std::int64_t expected_min_energy(Method method, const Formula& f, std::size_t optimum,
                                 const TranslateOptions& opts = {});

nlohmann::ordered_json to_json_value(const Translation& t);
std::string to_json(const Translation& t);
Translation translation_from_json(std::string_view text);

}  // namespace sat2qubo
