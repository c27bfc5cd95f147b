#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sat2qubo/qubo.hpp"

namespace sat2qubo {

struct SolveResult {
  BitVector best;
  std::int64_t best_energy = 0;
  std::uint64_t evaluations = 0;
  std::size_t restarts_used = 0;
  /// Best energy reached in each restart (SA only).
  std::vector<std::int64_t> restart_energies;
};

/// Single-flip Metropolis annealing with geometric cooling.
struct SaParams {
  std::size_t sweeps = 1000;
  std::size_t restarts = 20;
  double t_initial = 10.0;
  double t_final = 0.1;
  std::uint64_t seed = 0;
  /// Worker threads for restarts; 0 picks hardware concurrency. Does not
  /// affect the result.
  std::size_t threads = 1;

  /// Requires sweeps >= 1, restarts >= 1, t_initial >= t_final > 0.
  void validate() const;
};

inline constexpr std::size_t kExhaustiveCap = 24;

/// Adjacency form of a QUBO for O(degree) flip deltas.
class FlipGraph {
 public:
  explicit FlipGraph(const QuboMatrix& q);

  std::size_t size() const { return linear_.size(); }

  /// H(x with bit i flipped) - H(x).
  std::int64_t flip_delta(std::span<const std::uint8_t> x, std::size_t i) const {
    std::int64_t field = linear_[i];
    for (std::size_t e = offsets_[i]; e < offsets_[i + 1]; ++e) {
      if (x[neighbors_[e]]) field += weights_[e];
    }
    return x[i] ? -field : field;
  }

 private:
  std::vector<std::int64_t> linear_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> neighbors_;
  std::vector<std::int64_t> weights_;
};

/// Global minimum by Gray-code enumeration of all 2^k vectors. Ties go to the
/// lexicographically smallest vector (x_0 most significant).
SolveResult solve_exhaustive(const QuboMatrix& q, std::size_t cap = kExhaustiveCap);

/// Every minimum-energy vector, sorted lexicographically. Throws CapacityError
/// when more than max_states exist.
std::pair<std::int64_t, std::vector<BitVector>> ground_states(
    const QuboMatrix& q, std::size_t max_states = std::size_t{1} << 20,
    std::size_t cap = kExhaustiveCap);

/// Best over restarts; the all-zero vector is always a candidate. Deterministic
/// in (q, params) regardless of thread count.
SolveResult solve_sa(const QuboMatrix& q, const SaParams& params);

/// {"best_bits": "0101...", "energy": E, "evaluations": N, ...}
nlohmann::ordered_json to_json_value(const SolveResult& r);

/// Reads sweeps / restarts / t_initial / t_final / seed / threads from a JSON
/// object, keeping defaults for absent keys.
SaParams sa_params_from_json(const nlohmann::ordered_json& block, SaParams base = {});

}  // namespace sat2qubo
