#include "sat2qubo/verify.hpp"

#include <algorithm>

#include "sat2qubo/error.hpp"
#include "sat2qubo/experiment.hpp"
#include "sat2qubo/rng.hpp"
#include "sat2qubo/solve.hpp"

namespace sat2qubo {

std::string check_translation(const Formula& f, std::size_t optimum, const Translation& t) {
  const auto [ground, states] = ground_states(t.qubo);
  const std::int64_t expected = expected_min_energy(t, optimum);
  if (ground != expected) {
    return "ground energy " + std::to_string(ground) + " != expected " +
           std::to_string(expected) + " (maxsat optimum " + std::to_string(optimum) + ")";
  }
  for (const BitVector& x : states) {
    const std::size_t sat = satisfied_count(f, decode(t, x));
    if (sat != optimum) {
      return "ground state " + to_bitstring(x) + " decodes to " + std::to_string(sat) +
             " satisfied clauses, optimum is " + std::to_string(optimum);
    }
  }
  return {};
}

VerifyReport verify_oracle_equivalence(const VerifyConfig& config, const Translator& translator) {
  if (config.n_min < 3 || config.n_min > config.n_max || config.m_min > config.m_max) {
    throw Error("verify: need 3 <= n_min <= n_max and m_min <= m_max");
  }
  const Translator run = translator ? translator : Translator([](const Formula& f, Method m,
                                                                 const TranslateOptions& o) {
    return translate(f, m, o);
  });

  struct Task {
    Method method;
    bool share_aux;
  };
  std::vector<Task> tasks;
  for (Method m : config.methods) {
    if (m == Method::nuessleinnm && config.both_share_settings) {
      tasks.push_back({m, true});
      tasks.push_back({m, false});
    } else {
      tasks.push_back({m, config.translate.share_aux});
    }
  }

  std::vector<std::vector<Counterexample>> failures(config.count);
  parallel_for(config.count, config.threads, [&](std::size_t idx) {
    const std::uint64_t seed = derive_seed(config.seed, idx);
    Rng rng(seed);
    const std::size_t n = config.n_min + rng.below(config.n_max - config.n_min + 1);
    const std::size_t m = config.m_min + rng.below(config.m_max - config.m_min + 1);
    const Formula f = random_3sat(n, m, derive_seed(seed, n, m));
    const std::size_t optimum = maxsat_bruteforce(f).best_count;
    for (const Task& task : tasks) {
      TranslateOptions opts = config.translate;
      opts.share_aux = task.share_aux;
      std::string reason;
      try {
        reason = check_translation(f, optimum, run(f, task.method, opts));
      } catch (const Error& e) {
        reason = e.what();
      }
      if (!reason.empty()) {
        failures[idx].push_back({write_dimacs(f), task.method, task.share_aux, reason});
      }
    }
  });

  VerifyReport report;
  report.formulas = config.count;
  report.checks = config.count * tasks.size();
  for (auto& batch : failures) {
    report.failures.insert(report.failures.end(), batch.begin(), batch.end());
  }
  return report;
}

}  // namespace sat2qubo
