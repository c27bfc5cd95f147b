#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sat2qubo/formula.hpp"
#include "sat2qubo/translate.hpp"

namespace sat2qubo {

/// Random formulas checked against the exact MAX-3-SAT optimum: the QUBO ground
/// energy must equal expected_min_energy, and every ground state must decode to
/// an optimal assignment.
struct VerifyConfig {
  std::size_t n_min = 3;
  std::size_t n_max = 6;
  std::size_t m_min = 1;
  std::size_t m_max = 8;
  std::size_t count = 50;
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  std::uint64_t seed = 0;
  TranslateOptions translate;
  /// nuessleinnm is checked with and without aux sharing.
  bool both_share_settings = true;
  std::size_t threads = 0;
};

struct Counterexample {
  std::string dimacs;
  Method method = Method::nuessleinnm;
  bool share_aux = false;
  std::string reason;
};

struct VerifyReport {
  std::size_t formulas = 0;
  std::size_t checks = 0;
  std::vector<Counterexample> failures;

  bool passed() const { return failures.empty(); }
};

using Translator = std::function<Translation(const Formula&, Method, const TranslateOptions&)>;

/// Checks one (formula, method) pair; returns an empty string on success.
std::string check_translation(const Formula& f, std::size_t optimum, const Translation& t);

/// translator defaults to translate(); tests inject faulty ones.
VerifyReport verify_oracle_equivalence(const VerifyConfig& config,
                                       const Translator& translator = {});

}  // namespace sat2qubo
