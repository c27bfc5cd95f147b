#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sat2qubo/formula.hpp"
#include "sat2qubo/solve.hpp"
#include "sat2qubo/translate.hpp"

namespace sat2qubo {

/// Run fn(i) for i in [0, count) on up to `threads` workers (0 = hardware).
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

// ---------------------------------------------------------------------------
// Coupling scaling

struct ScalingRecord {
  std::size_t n = 0;
  std::size_t m = 0;
  Method method = Method::nuessleinnm;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;  ///< seed of the generated formula
  std::size_t logical_qubits = 0;
  std::size_t couplings = 0;
  std::size_t nonzeros = 0;  ///< diagonal included; summary only
};

struct ScalingConfig {
  std::vector<std::size_t> n_values;
  std::size_t replicates = 20;
  std::vector<Method> methods = {Method::chancellor, Method::nuessleinnm};
  double ratio = 4.2;
  std::uint64_t seed = 0;
  TranslateOptions translate;
  std::size_t threads = 0;
};

/// One record per (n, method, replicate), sorted in that order.
std::vector<ScalingRecord> run_scaling(const ScalingConfig& config);

// ---------------------------------------------------------------------------
// Solution-quality comparison

enum class SolverKind { sa, exhaustive };

struct ComparisonRecord {
  std::size_t n = 0;
  std::size_t m = 0;
  Method method = Method::nuessleinnm;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  std::int64_t energy = 0;
  std::size_t satisfied = 0;
  std::optional<std::size_t> maxsat_opt;
};

struct ComparisonConfig {
  std::vector<std::pair<std::size_t, std::size_t>> sizes;  ///< (n, m)
  std::size_t replicates = 20;
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  SolverKind solver = SolverKind::sa;
  SaParams sa;
  std::uint64_t seed = 0;
  TranslateOptions translate;
  std::size_t oracle_cap = kBruteForceVarCap;
  std::size_t threads = 0;
};

/// Sorted by (n, m, method, replicate).
std::vector<ComparisonRecord> run_comparison(const ComparisonConfig& config);

// ---------------------------------------------------------------------------
// Output

void write_csv(std::ostream& out, const std::vector<ScalingRecord>& records);
void write_csv(std::ostream& out, const std::vector<ComparisonRecord>& records);
std::string to_csv(const std::vector<ScalingRecord>& records);
std::string to_csv(const std::vector<ComparisonRecord>& records);

/// Quantiles of couplings per (n, method): a whitespace table gnuplot can read.
void write_scaling_summary(std::ostream& out, const std::vector<ScalingRecord>& records);

/// Mean satisfied clauses per method (rows) and size (columns).
void write_comparison_table(std::ostream& out, const std::vector<ComparisonRecord>& records);

/// Linear interpolated quantile of an unsorted sample, q in [0, 1].
double quantile(std::vector<double> values, double q);

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
};

/// Ordinary least squares y = slope * x + intercept.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace sat2qubo
