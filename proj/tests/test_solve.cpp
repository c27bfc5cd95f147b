#include "doctest.h"
#include "fixtures.hpp"
#include "sat2qubo/error.hpp"
#include "sat2qubo/rng.hpp"
#include "sat2qubo/solve.hpp"
#include "sat2qubo/translate.hpp"

using namespace sat2qubo;

namespace {

QuboMatrix random_matrix(std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  QuboMatrix q(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      if (rng.below(3) == 0) q.add(i, j, static_cast<std::int64_t>(rng.below(21)) - 10);
    }
  }
  return q;
}

/// Plain loop over all vectors in lexicographic order, x_0 most significant.
std::pair<std::int64_t, BitVector> naive_minimum(const QuboMatrix& q) {
  const std::size_t k = q.size();
  std::int64_t best = 0;
  BitVector best_x(k, 0);
  bool first = true;
  for (std::uint64_t key = 0; key < (std::uint64_t{1} << k); ++key) {
    BitVector x(k);
    for (std::size_t i = 0; i < k; ++i) x[i] = (key >> (k - 1 - i)) & 1;
    const auto e = energy(q, x);
    if (first || e < best) {
      best = e;
      best_x = x;
      first = false;
    }
  }
  return {best, best_x};
}

SaParams small_budget(std::uint64_t seed) {
  SaParams p;
  p.sweeps = 200;
  p.restarts = 8;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("exhaustive on the worked examples") {
  const auto r = solve_exhaustive(fixtures::pattern_matrix());
  CHECK(r.best_energy == -1);
  CHECK(r.evaluations == 32);
  CHECK(energy(fixtures::pattern_matrix(), r.best) == -1);
  const auto lp = solve_exhaustive(fixtures::literal_pair_matrix());
  CHECK(lp.best_energy == -2);
}

TEST_CASE("exhaustive edge cases") {
  const auto empty = solve_exhaustive(QuboMatrix(0));
  CHECK(empty.best_energy == 0);
  CHECK(empty.best.empty());
  CHECK(empty.evaluations == 1);
  QuboMatrix one(1);
  one.add(0, 0, -5);
  const auto r = solve_exhaustive(one);
  CHECK(r.best == BitVector{1});
  CHECK(r.best_energy == -5);
  CHECK_THROWS_AS(solve_exhaustive(QuboMatrix(25)), CapacityError);
  CHECK_THROWS_AS(solve_exhaustive(QuboMatrix(6), 5), CapacityError);
}

TEST_CASE("exhaustive agrees with a naive scan including the tie-break") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const QuboMatrix q = random_matrix(1 + seed % 11, seed);
    const auto [e, x] = naive_minimum(q);
    const auto r = solve_exhaustive(q);
    CHECK(r.best_energy == e);
    CHECK(r.best == x);
    CHECK(energy(q, r.best) == r.best_energy);
  }
  // all-zero matrix: every vector ties, the smallest is all zeros
  CHECK(solve_exhaustive(QuboMatrix(4)).best == BitVector(4, 0));
}

TEST_CASE("ground_states lists every minimum in lexicographic order") {
  QuboMatrix q(3);
  q.add(0, 0, -1);
  q.add(1, 1, -1);
  q.add(0, 1, 1);  // x0 = 1 or x1 = 1 but both costs nothing extra: -1 either way
  const auto [e, states] = ground_states(q);
  CHECK(e == -1);
  CHECK(states == std::vector<BitVector>{{0, 1, 0}, {0, 1, 1}, {1, 0, 0}, {1, 0, 1},
                                         {1, 1, 0}, {1, 1, 1}});
  CHECK_THROWS_AS(ground_states(QuboMatrix(3), 4), CapacityError);
}

TEST_CASE("flip deltas match energy differences") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const QuboMatrix q = random_matrix(9, seed);
    const FlipGraph g(q);
    Rng rng(seed);
    BitVector x(9);
    for (auto& b : x) b = rng.coin();
    for (std::size_t i = 0; i < 9; ++i) {
      BitVector y = x;
      y[i] ^= 1;
      CHECK(g.flip_delta(x, i) == energy(q, y) - energy(q, x));
    }
  }
}

TEST_CASE("SA respects the exact minimum and reaches it on small problems") {
  std::size_t hits = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const QuboMatrix q = random_matrix(4 + seed % 12, seed);
    const auto exact = solve_exhaustive(q).best_energy;
    const auto r = solve_sa(q, small_budget(seed));
    CHECK(r.best_energy >= exact);
    CHECK(r.best_energy <= 0);  // never worse than all zeros
    CHECK(energy(q, r.best) == r.best_energy);
    if (r.best_energy == exact) ++hits;
  }
  CHECK(hits >= 28);
}

TEST_CASE("SA on the literal-pair example finds -2") {
  SaParams p;
  p.sweeps = 1000;
  p.restarts = 10;
  CHECK(solve_sa(fixtures::literal_pair_matrix(), p).best_energy == -2);
}

TEST_CASE("SA is deterministic and thread-count independent") {
  const QuboMatrix q = translate_nuessleinnm(random_3sat(30, 126, 4)).qubo;
  SaParams p = small_budget(11);
  const auto a = solve_sa(q, p);
  const auto b = solve_sa(q, p);
  CHECK(a.best == b.best);
  CHECK(a.best_energy == b.best_energy);
  CHECK(a.evaluations == b.evaluations);
  CHECK(a.restart_energies == b.restart_energies);
  p.threads = 4;
  const auto c = solve_sa(q, p);
  CHECK(c.best == a.best);
  CHECK(c.restart_energies == a.restart_energies);
  CHECK(a.restarts_used == 8);
  // the reported best is the minimum over the restarts
  CHECK(a.best_energy == std::min(std::int64_t{0}, *std::min_element(a.restart_energies.begin(),
                                                                      a.restart_energies.end())));
}

TEST_CASE("SA parameter validation") {
  const QuboMatrix q = fixtures::pattern_matrix();
  SaParams p;
  p.sweeps = 0;
  CHECK_THROWS_AS(solve_sa(q, p), Error);
  p = {};
  p.restarts = 0;
  CHECK_THROWS_AS(solve_sa(q, p), Error);
  p = {};
  p.t_final = 0;
  CHECK_THROWS_AS(solve_sa(q, p), Error);
  p = {};
  p.t_initial = 0.05;
  CHECK_THROWS_AS(solve_sa(q, p), Error);
  CHECK_THROWS_AS(solve_sa(QuboMatrix(0), SaParams{}), Error);
}

TEST_CASE("SA parameters from JSON") {
  const auto block = nlohmann::ordered_json::parse(R"({"sweeps": 50, "restarts": 3, "seed": 9})");
  const SaParams p = sa_params_from_json(block, SaParams{});
  CHECK(p.sweeps == 50);
  CHECK(p.restarts == 3);
  CHECK(p.seed == 9);
  CHECK(p.t_initial == doctest::Approx(10.0));
  CHECK_THROWS_AS(sa_params_from_json(nlohmann::ordered_json::parse(R"({"sweeps": "x"})"),
                                      SaParams{}),
                  ParseError);
  CHECK_THROWS_AS(sa_params_from_json(nlohmann::ordered_json::parse("[1]"), SaParams{}),
                  ParseError);
}

TEST_CASE("result JSON") {
  const auto r = solve_exhaustive(fixtures::pattern_matrix());
  const auto doc = to_json_value(r);
  CHECK(doc["best_bits"] == to_bitstring(r.best));
  CHECK(doc["energy"] == -1);
  CHECK(doc["evaluations"] == 32);
}
