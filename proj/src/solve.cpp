#include "sat2qubo/solve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

#include "sat2qubo/error.hpp"
#include "sat2qubo/rng.hpp"

namespace sat2qubo {

void SaParams::validate() const {
  if (sweeps < 1) throw Error("SA: sweeps must be >= 1");
  if (restarts < 1) throw Error("SA: restarts must be >= 1");
  if (!(t_final > 0.0) || !(t_initial >= t_final) || !std::isfinite(t_initial)) {
    throw Error("SA: temperatures must satisfy t_initial >= t_final > 0");
  }
}

FlipGraph::FlipGraph(const QuboMatrix& q) : linear_(q.size(), 0), offsets_(q.size() + 1, 0) {
  for (const auto& [cell, w] : q.entries()) {
    if (cell.first == cell.second) {
      linear_[cell.first] += w;
    } else {
      ++offsets_[cell.first + 1];
      ++offsets_[cell.second + 1];
    }
  }
  for (std::size_t i = 0; i < q.size(); ++i) offsets_[i + 1] += offsets_[i];
  neighbors_.resize(offsets_.back());
  weights_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [cell, w] : q.entries()) {
    if (cell.first == cell.second) continue;
    neighbors_[fill[cell.first]] = cell.second;
    weights_[fill[cell.first]++] = w;
    neighbors_[fill[cell.second]] = cell.first;
    weights_[fill[cell.second]++] = w;
  }
}

namespace {

void check_cap(const QuboMatrix& q, std::size_t cap, const char* who) {
  if (q.size() > cap) {
    throw CapacityError(std::string(who) + ": k=" + std::to_string(q.size()) +
                        " exceeds the exhaustive cap of " + std::to_string(cap) +
                        " qubits; use simulated annealing");
  }
  if (q.size() > 40) throw CapacityError(std::string(who) + ": more than 40 qubits");
}

/// Walks all 2^k vectors in Gray-code order, calling visit(energy, x, key)
/// where key orders vectors lexicographically (x_0 is the top bit).
template <typename Visit>
void gray_walk(const QuboMatrix& q, Visit&& visit) {
  const std::size_t k = q.size();
  const FlipGraph graph(q);
  BitVector x(k, 0);
  std::int64_t e = 0;
  std::uint64_t key = 0;
  visit(e, x, key);
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t step = 1; step < total; ++step) {
    const auto i = static_cast<std::size_t>(std::countr_zero(step));
    e += graph.flip_delta(x, i);
    x[i] ^= 1;
    key ^= std::uint64_t{1} << (k - 1 - i);
    visit(e, x, key);
  }
}

BitVector from_key(std::uint64_t key, std::size_t k) {
  BitVector x(k);
  for (std::size_t i = 0; i < k; ++i) x[i] = static_cast<std::uint8_t>((key >> (k - 1 - i)) & 1);
  return x;
}

}  // namespace

SolveResult solve_exhaustive(const QuboMatrix& q, std::size_t cap) {
  check_cap(q, cap, "solve_exhaustive");
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::uint64_t best_key = 0;
  gray_walk(q, [&](std::int64_t e, const BitVector&, std::uint64_t key) {
    if (e < best || (e == best && key < best_key)) {
      best = e;
      best_key = key;
    }
  });
  SolveResult r;
  r.best = from_key(best_key, q.size());
  r.best_energy = best;
  r.evaluations = std::uint64_t{1} << q.size();
  r.restarts_used = 0;
  return r;
}

std::pair<std::int64_t, std::vector<BitVector>> ground_states(const QuboMatrix& q,
                                                             std::size_t max_states,
                                                             std::size_t cap) {
  check_cap(q, cap, "ground_states");
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<std::uint64_t> keys;
  gray_walk(q, [&](std::int64_t e, const BitVector&, std::uint64_t key) {
    if (e < best) {
      best = e;
      keys.clear();
    }
    if (e == best) {
      if (keys.size() == max_states) {
        throw CapacityError("ground_states: more than " + std::to_string(max_states) +
                            " minimum-energy vectors");
      }
      keys.push_back(key);
    }
  });
  std::sort(keys.begin(), keys.end());
  std::vector<BitVector> states;
  states.reserve(keys.size());
  for (auto key : keys) states.push_back(from_key(key, q.size()));
  return {best, std::move(states)};
}

namespace {

struct RestartOutcome {
  BitVector best;
  std::int64_t energy = 0;
  std::uint64_t evaluations = 0;
};

RestartOutcome anneal_once(const FlipGraph& graph, const SaParams& p, std::size_t restart) {
  const std::size_t k = graph.size();
  Rng rng(p.seed ^ static_cast<std::uint64_t>(restart));
  BitVector x(k);
  for (auto& b : x) b = rng.coin() ? 1 : 0;

  // Energy of the random start, relative to the all-zero vector.
  std::int64_t e = 0;
  {
    BitVector y(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      if (x[i]) {
        e += graph.flip_delta(y, i);
        y[i] = 1;
      }
    }
  }

  RestartOutcome out{x, e, 0};
  const double ratio =
      p.sweeps > 1 ? std::pow(p.t_final / p.t_initial, 1.0 / static_cast<double>(p.sweeps - 1))
                   : 1.0;
  double temperature = p.t_initial;
  for (std::size_t sweep = 0; sweep < p.sweeps; ++sweep) {
    for (std::size_t i = 0; i < k; ++i) {
      const std::int64_t delta = graph.flip_delta(x, i);
      ++out.evaluations;
      if (delta <= 0 || rng.uniform() < std::exp(-static_cast<double>(delta) / temperature)) {
        x[i] ^= 1;
        e += delta;
        if (e < out.energy) {
          out.energy = e;
          out.best = x;
        }
      }
    }
    temperature *= ratio;
  }
  // Settle in the final basin with a greedy descent.
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i < k; ++i) {
      const std::int64_t delta = graph.flip_delta(out.best, i);
      ++out.evaluations;
      if (delta < 0) {
        out.best[i] ^= 1;
        out.energy += delta;
        improved = true;
      }
    }
  }
  return out;
}

bool better(std::int64_t e1, const BitVector& x1, std::int64_t e2, const BitVector& x2) {
  return e1 < e2 || (e1 == e2 && x1 < x2);
}

}  // namespace

SolveResult solve_sa(const QuboMatrix& q, const SaParams& params) {
  params.validate();
  if (q.size() == 0) throw Error("solve_sa: empty matrix");
  const FlipGraph graph(q);

  std::vector<RestartOutcome> outcomes(params.restarts);
  std::size_t threads = params.threads == 0
                            ? std::max<std::size_t>(1, std::thread::hardware_concurrency())
                            : params.threads;
  threads = std::min(threads, params.restarts);
  if (threads <= 1) {
    for (std::size_t r = 0; r < params.restarts; ++r) outcomes[r] = anneal_once(graph, params, r);
  } else {
    std::vector<std::future<void>> workers;
    for (std::size_t t = 0; t < threads; ++t) {
      workers.push_back(std::async(std::launch::async, [&, t] {
        for (std::size_t r = t; r < params.restarts; r += threads) {
          outcomes[r] = anneal_once(graph, params, r);
        }
      }));
    }
    for (auto& w : workers) w.get();
  }

  SolveResult result;
  result.best = BitVector(q.size(), 0);
  result.best_energy = 0;
  result.restarts_used = params.restarts;
  for (const auto& o : outcomes) {
    result.evaluations += o.evaluations;
    result.restart_energies.push_back(o.energy);
    if (better(o.energy, o.best, result.best_energy, result.best)) {
      result.best = o.best;
      result.best_energy = o.energy;
    }
  }
  return result;
}

nlohmann::ordered_json to_json_value(const SolveResult& r) {
  nlohmann::ordered_json doc;
  doc["best_bits"] = to_bitstring(r.best);
  doc["energy"] = r.best_energy;
  doc["evaluations"] = r.evaluations;
  doc["restarts_used"] = r.restarts_used;
  return doc;
}

SaParams sa_params_from_json(const nlohmann::ordered_json& block, SaParams base) {
  if (!block.is_object()) throw ParseError("solver config must be a JSON object");
  try {
    base.sweeps = block.value("sweeps", base.sweeps);
    base.restarts = block.value("restarts", base.restarts);
    base.t_initial = block.value("t_initial", base.t_initial);
    base.t_final = block.value("t_final", base.t_final);
    base.seed = block.value("seed", base.seed);
    base.threads = block.value("threads", base.threads);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("solver config: ") + e.what());
  }
  base.validate();
  return base;
}

}  // namespace sat2qubo
