#include "sat2qubo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <future>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include <Eigen/Dense>

#include "sat2qubo/error.hpp"
#include "sat2qubo/rng.hpp"

namespace sat2qubo {

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> workers;
  workers.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    workers.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    }));
  }
  // get() rethrows the first worker exception after all have joined.
  std::exception_ptr failure;
  for (auto& w : workers) {
    try {
      w.get();
    } catch (...) {
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

namespace {

std::size_t method_rank(Method m) {
  return static_cast<std::size_t>(std::find(kAllMethods.begin(), kAllMethods.end(), m) -
                                  kAllMethods.begin());
}

}  // namespace

std::vector<ScalingRecord> run_scaling(const ScalingConfig& config) {
  if (config.n_values.empty()) throw Error("run_scaling: no n values");
  struct Job {
    std::size_t n, replicate;
  };
  std::vector<Job> jobs;
  for (std::size_t n : config.n_values) {
    for (std::size_t r = 0; r < config.replicates; ++r) jobs.push_back({n, r});
  }

  std::vector<std::vector<ScalingRecord>> per_job(jobs.size());
  parallel_for(jobs.size(), config.threads, [&](std::size_t idx) {
    const auto [n, r] = jobs[idx];
    const std::size_t m = clauses_for_ratio(n, config.ratio);
    const std::uint64_t seed = derive_seed(config.seed, n, r);
    const Formula f = random_3sat(n, m, seed);
    for (Method method : config.methods) {
      const Translation t = translate(f, method, config.translate);
      per_job[idx].push_back({n, m, method, r, seed, t.qubo.size(), coupling_count(t.qubo),
                              t.qubo.nonzeros()});
    }
  });

  std::vector<ScalingRecord> records;
  for (auto& batch : per_job) records.insert(records.end(), batch.begin(), batch.end());
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tuple(a.n, method_rank(a.method), a.replicate) <
           std::tuple(b.n, method_rank(b.method), b.replicate);
  });
  return records;
}

std::vector<ComparisonRecord> run_comparison(const ComparisonConfig& config) {
  if (config.sizes.empty()) throw Error("run_comparison: no sizes");
  if (config.solver == SolverKind::sa) config.sa.validate();
  struct Job {
    std::size_t n, m, replicate;
  };
  std::vector<Job> jobs;
  for (const auto& [n, m] : config.sizes) {
    for (std::size_t r = 0; r < config.replicates; ++r) jobs.push_back({n, m, r});
  }

  std::vector<std::vector<ComparisonRecord>> per_job(jobs.size());
  parallel_for(jobs.size(), config.threads, [&](std::size_t idx) {
    const auto [n, m, r] = jobs[idx];
    const std::uint64_t seed = derive_seed(config.seed, n, m, r);
    const Formula f = random_3sat(n, m, seed);
    std::optional<std::size_t> opt;
    if (n <= config.oracle_cap) opt = maxsat_bruteforce(f, config.oracle_cap).best_count;

    for (Method method : config.methods) {
      const Translation t = translate(f, method, config.translate);
      SolveResult result;
      if (config.solver == SolverKind::exhaustive) {
        result = solve_exhaustive(t.qubo);
      } else {
        SaParams sa = config.sa;
        sa.seed = derive_seed(config.sa.seed, seed, static_cast<std::uint64_t>(method));
        sa.threads = 1;
        result = solve_sa(t.qubo, sa);
      }
      const Assignment a = decode(t, result.best);
      per_job[idx].push_back({n, m, method, r, seed, result.best_energy, satisfied_count(f, a),
                              opt});
    }
  });

  std::vector<ComparisonRecord> records;
  for (auto& batch : per_job) records.insert(records.end(), batch.begin(), batch.end());
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tuple(a.n, a.m, method_rank(a.method), a.replicate) <
           std::tuple(b.n, b.m, method_rank(b.method), b.replicate);
  });
  return records;
}

void write_csv(std::ostream& out, const std::vector<ScalingRecord>& records) {
  out << "n,m,method,replicate,seed,logical_qubits,couplings\n";
  for (const auto& r : records) {
    out << r.n << ',' << r.m << ',' << method_name(r.method) << ',' << r.replicate << ','
        << r.seed << ',' << r.logical_qubits << ',' << r.couplings << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<ComparisonRecord>& records) {
  out << "n,m,method,replicate,seed,energy,satisfied,maxsat_opt\n";
  for (const auto& r : records) {
    out << r.n << ',' << r.m << ',' << method_name(r.method) << ',' << r.replicate << ','
        << r.seed << ',' << r.energy << ',' << r.satisfied << ',';
    if (r.maxsat_opt) out << *r.maxsat_opt;
    out << '\n';
  }
}

std::string to_csv(const std::vector<ScalingRecord>& records) {
  std::ostringstream out;
  write_csv(out, records);
  return out.str();
}

std::string to_csv(const std::vector<ComparisonRecord>& records) {
  std::ostringstream out;
  write_csv(out, records);
  return out.str();
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw Error("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

void write_scaling_summary(std::ostream& out, const std::vector<ScalingRecord>& records) {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<const ScalingRecord*>> groups;
  for (const auto& r : records) groups[{r.n, method_rank(r.method)}].push_back(&r);

  out << "# n m method q25 median q75 nonzeros_median logical_qubits_median\n";
  const auto flags = out.flags();
  out << std::fixed << std::setprecision(1);
  for (const auto& [key, rows] : groups) {
    std::vector<double> couplings, nonzeros, qubits;
    for (const auto* r : rows) {
      couplings.push_back(static_cast<double>(r->couplings));
      nonzeros.push_back(static_cast<double>(r->nonzeros));
      qubits.push_back(static_cast<double>(r->logical_qubits));
    }
    out << key.first << ' ' << rows.front()->m << ' ' << method_name(rows.front()->method)
        << ' ' << quantile(couplings, 0.25) << ' ' << quantile(couplings, 0.5) << ' '
        << quantile(couplings, 0.75) << ' ' << quantile(nonzeros, 0.5) << ' '
        << quantile(qubits, 0.5) << '\n';
  }
  out.flags(flags);
}

void write_comparison_table(std::ostream& out, const std::vector<ComparisonRecord>& records) {
  std::vector<std::pair<std::size_t, std::size_t>> sizes;
  std::vector<Method> methods;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::pair<double, std::size_t>>
      sums;
  std::map<std::pair<std::size_t, std::size_t>, std::pair<double, std::size_t>> optimum;
  for (const auto& r : records) {
    const std::pair<std::size_t, std::size_t> size{r.n, r.m};
    if (std::find(sizes.begin(), sizes.end(), size) == sizes.end()) sizes.push_back(size);
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) {
      methods.push_back(r.method);
    }
    auto& s = sums[{r.n, r.m, method_rank(r.method)}];
    s.first += static_cast<double>(r.satisfied);
    ++s.second;
    if (r.maxsat_opt && r.method == records.front().method) {
      auto& o = optimum[size];
      o.first += static_cast<double>(*r.maxsat_opt);
      ++o.second;
    }
  }
  std::sort(methods.begin(), methods.end(),
            [](Method a, Method b) { return method_rank(a) < method_rank(b); });

  const auto flags = out.flags();
  out << std::left << std::setw(14) << "";
  for (const auto& [n, m] : sizes) {
    out << std::setw(16) << ("(V=" + std::to_string(n) + ", C=" + std::to_string(m) + ")");
  }
  out << '\n' << std::fixed << std::setprecision(2);
  for (Method method : methods) {
    out << std::setw(14) << method_name(method);
    for (const auto& [n, m] : sizes) {
      const auto& s = sums[{n, m, method_rank(method)}];
      out << std::setw(16) << (s.second ? s.first / static_cast<double>(s.second) : 0.0);
    }
    out << '\n';
  }
  if (!optimum.empty()) {
    out << std::setw(14) << "maxsat";
    for (const auto& size : sizes) {
      auto it = optimum.find(size);
      if (it == optimum.end()) {
        out << std::setw(16) << "-";
      } else {
        out << std::setw(16) << it->second.first / static_cast<double>(it->second.second);
      }
    }
    out << '\n';
  }
  out.flags(flags);
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error("fit_line: need >= 2 paired points");
  const auto rows = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(rows, 2);
  Eigen::VectorXd target(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    design(i, 0) = x[static_cast<std::size_t>(i)];
    design(i, 1) = 1.0;
    target(i) = y[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(target);
  const Eigen::VectorXd residual = target - design * coef;
  const double ss_res = residual.squaredNorm();
  const double ss_tot = (target.array() - target.mean()).square().sum();
  return {coef(0), coef(1), ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0};
}

}  // namespace sat2qubo
