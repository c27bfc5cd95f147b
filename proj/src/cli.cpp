#include "sat2qubo/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "sat2qubo/error.hpp"
#include "sat2qubo/experiment.hpp"
#include "sat2qubo/formula.hpp"
#include "sat2qubo/solve.hpp"
#include "sat2qubo/translate.hpp"
#include "sat2qubo/verify.hpp"

namespace sat2qubo::cli {

namespace {

/// Bad flag values detected after CLI11 parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Global {
  std::uint64_t seed = 0;
  bool permissive = false;
  std::string format = "csv";
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Writes to path, or to `fallback` when path is empty or "-".
void write_output(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw ParseError("cannot write '" + path + "'");
}

Method method_arg(const std::string& name) {
  try {
    return parse_method(name);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

std::vector<Method> methods_arg(const std::string& list) {
  std::vector<Method> methods;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "all") {
      methods.insert(methods.end(), kAllMethods.begin(), kAllMethods.end());
    } else if (!item.empty()) {
      methods.push_back(method_arg(item));
    }
  }
  if (methods.empty()) throw UsageError("empty method list");
  return methods;
}

std::size_t parse_count(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (text.empty() || text[0] == '-') throw std::invalid_argument(text);
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    throw UsageError("bad " + what + " '" + text + "'");
  }
  if (used != text.size()) throw UsageError("bad " + what + " '" + text + "'");
  return static_cast<std::size_t>(v);
}

/// "lo:hi" or "lo:hi:step" (inclusive), or a comma list "5,10,20".
std::vector<std::size_t> range_arg(const std::string& text) {
  std::vector<std::string> parts;
  const char sep = text.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (parts.empty()) throw UsageError("empty range");
  std::vector<std::size_t> values;
  if (sep == ',') {
    for (const auto& p : parts) values.push_back(parse_count(p, "range value"));
    return values;
  }
  if (parts.size() < 2 || parts.size() > 3) {
    throw UsageError("range must be lo:hi or lo:hi:step, got '" + text + "'");
  }
  const std::size_t lo = parse_count(parts[0], "range start");
  const std::size_t hi = parse_count(parts[1], "range end");
  const std::size_t step = parts.size() == 3 ? parse_count(parts[2], "range step") : 1;
  if (step == 0 || lo > hi) throw UsageError("empty or invalid range '" + text + "'");
  for (std::size_t v = lo; v <= hi; v += step) values.push_back(v);
  return values;
}

/// "5x21,10x42".
std::vector<std::pair<std::size_t, std::size_t>> sizes_arg(const std::string& text) {
  std::vector<std::pair<std::size_t, std::size_t>> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto x = item.find('x');
    if (x == std::string::npos) throw UsageError("size must look like <n>x<m>, got '" + item + "'");
    sizes.emplace_back(parse_count(item.substr(0, x), "n"), parse_count(item.substr(x + 1), "m"));
  }
  if (sizes.empty()) throw UsageError("no sizes given");
  return sizes;
}

struct SaFlags {
  std::optional<std::size_t> sweeps, restarts, threads;
  std::optional<double> t_initial, t_final;
  std::string config_path;

  void attach(CLI::App* app) {
    app->add_option("--sweeps", sweeps, "SA sweeps per restart");
    app->add_option("--restarts", restarts, "SA restarts");
    app->add_option("--t-initial", t_initial, "SA initial temperature");
    app->add_option("--t-final", t_final, "SA final temperature");
    app->add_option("--threads", threads, "worker threads (0 = all cores)");
    app->add_option("--config", config_path, "JSON file with a solver parameter block");
  }

  SaParams resolve(std::uint64_t seed) const {
    SaParams p;
    p.seed = seed;
    if (!config_path.empty()) {
      nlohmann::ordered_json doc;
      try {
        doc = nlohmann::ordered_json::parse(read_input(config_path));
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("solver config: ") + e.what());
      }
      p = sa_params_from_json(doc.contains("solver") ? doc["solver"] : doc, p);
    }
    if (sweeps) p.sweeps = *sweeps;
    if (restarts) p.restarts = *restarts;
    if (t_initial) p.t_initial = *t_initial;
    if (t_final) p.t_final = *t_final;
    if (threads) p.threads = *threads;
    try {
      p.validate();
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    return p;
  }
};

struct TranslateFlags {
  std::int64_t X = 1, Y = 3, Z = 3;
  std::string chancellor_scale = "unit_gap";
  bool no_share = false;

  void attach(CLI::App* app) {
    app->add_option("--X", X, "Choi incentive X")->capture_default_str();
    app->add_option("--Y", Y, "Choi same-clause penalty Y")->capture_default_str();
    app->add_option("--Z", Z, "Choi contradiction penalty Z")->capture_default_str();
    app->add_option("--chancellor-scale", chancellor_scale, "unit_gap or ising")
        ->check(CLI::IsMember({"unit_gap", "ising"}))
        ->capture_default_str();
    app->add_flag("--no-share-aux", no_share, "one aux qubit per clause (nuessleinnm)");
  }

  TranslateOptions resolve() const {
    TranslateOptions o;
    o.choi = {X, Y, Z};
    o.chancellor.scale =
        chancellor_scale == "ising" ? ChancellorScale::ising : ChancellorScale::unit_gap;
    o.share_aux = !no_share;
    try {
      o.choi.validate();
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    return o;
  }
};

ClauseMode mode_of(const Global& g) {
  return g.permissive ? ClauseMode::permissive : ClauseMode::strict;
}

bool looks_like_json(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string::npos && text[first] == '{';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Translate 3-SAT / MAX-3-SAT instances to QUBO, solve and verify them",
               "sat2qubo"};
  app.require_subcommand(1);
  app.fallthrough();

  Global global;
  app.add_option("--seed", global.seed, "random seed")->capture_default_str();
  auto* strict_flag = app.add_flag("--strict", "reject clauses with repeated variables (default)");
  app.add_flag("--permissive", global.permissive, "admit clauses with repeated variables")
      ->excludes(strict_flag);
  app.add_option("--format", global.format, "record output format for scaling/compare")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // gen
  auto* gen = app.add_subcommand("gen", "write a random 3-SAT formula in DIMACS CNF");
  std::size_t gen_n = 0;
  std::optional<std::size_t> gen_m;
  std::optional<double> gen_ratio;
  std::string gen_out;
  gen->add_option("-n,--vars", gen_n, "number of variables")->required();
  auto* gen_m_opt = gen->add_option("-m,--clauses", gen_m, "number of clauses");
  gen->add_option("--ratio", gen_ratio, "clauses = ceil(ratio * n); default 4.2")
      ->excludes(gen_m_opt);
  gen->add_option("-o,--out", gen_out, "output path (default stdout)");

  // translate
  auto* tr = app.add_subcommand("translate", "translate a DIMACS formula to a QUBO");
  std::string tr_in, tr_out, tr_method;
  TranslateFlags tr_flags;
  tr->add_option("input", tr_in, "DIMACS file ('-' for stdin)")->required();
  tr->add_option("output", tr_out, "translation JSON path (default stdout)");
  tr->add_option("-o,--out", tr_out, "translation JSON path (default stdout)");
  tr->add_option("--method", tr_method, "choi, chancellor, nuesslein2nm or nuessleinnm")
      ->required();
  tr_flags.attach(tr);

  // solve
  auto* sv = app.add_subcommand("solve", "solve a QUBO / translation JSON or a DIMACS formula");
  std::string sv_in, sv_out, sv_method, sv_solver = "sa";
  std::size_t sv_cap = kExhaustiveCap;
  TranslateFlags sv_flags;
  SaFlags sv_sa;
  sv->add_option("input", sv_in, "JSON or DIMACS file ('-' for stdin)")->required();
  sv->add_option("-o,--out", sv_out, "result JSON path (default stdout)");
  sv->add_option("--method", sv_method, "translation for DIMACS input");
  sv->add_option("--solver", sv_solver, "exhaustive or sa")
      ->check(CLI::IsMember({"exhaustive", "sa"}))
      ->capture_default_str();
  sv->add_option("--cap", sv_cap, "largest k the exhaustive solver accepts")
      ->capture_default_str();
  sv_flags.attach(sv);
  sv_sa.attach(sv);

  // verify
  auto* vf = app.add_subcommand("verify", "check translations against exact MAX-3-SAT");
  std::string vf_n = "3:6", vf_m = "1:8", vf_methods = "all";
  std::size_t vf_count = 50, vf_threads = 0;
  TranslateFlags vf_flags;
  vf->add_option("--n-range", vf_n, "variable range lo:hi")->capture_default_str();
  vf->add_option("--m-range", vf_m, "clause range lo:hi")->capture_default_str();
  vf->add_option("--count", vf_count, "number of random formulas")->capture_default_str();
  vf->add_option("--methods", vf_methods, "comma list or 'all'")->capture_default_str();
  vf->add_option("--threads", vf_threads, "worker threads (0 = all cores)");
  vf_flags.attach(vf);

  // scaling
  auto* sc = app.add_subcommand("scaling", "coupling counts versus formula size");
  std::string sc_n = "20:200:20", sc_methods = "chancellor,nuessleinnm", sc_out, sc_summary;
  std::size_t sc_reps = 20, sc_threads = 0;
  double sc_ratio = 4.2;
  TranslateFlags sc_flags;
  sc->add_option("--n", sc_n, "variable counts lo:hi:step or list")->capture_default_str();
  sc->add_option("--replicates", sc_reps, "formulas per n")->capture_default_str();
  sc->add_option("--methods", sc_methods, "comma list or 'all'")->capture_default_str();
  sc->add_option("--ratio", sc_ratio, "clauses per variable")->capture_default_str();
  sc->add_option("-o,--out", sc_out, "records path (default stdout)");
  sc->add_option("--summary", sc_summary, "write quantile summary table here");
  sc->add_option("--threads", sc_threads, "worker threads (0 = all cores)");
  sc_flags.attach(sc);

  // compare
  auto* cp = app.add_subcommand("compare", "solution quality of the four translations");
  std::string cp_sizes = "5x21,10x42,12x50", cp_methods = "all", cp_out, cp_solver = "sa";
  std::size_t cp_reps = 20;
  TranslateFlags cp_flags;
  SaFlags cp_sa;
  cp->add_option("--sizes", cp_sizes, "comma list of <n>x<m>")->capture_default_str();
  cp->add_option("--replicates", cp_reps, "formulas per size")->capture_default_str();
  cp->add_option("--methods", cp_methods, "comma list or 'all'")->capture_default_str();
  cp->add_option("--solver", cp_solver, "sa or exhaustive")
      ->check(CLI::IsMember({"exhaustive", "sa"}))
      ->capture_default_str();
  cp->add_option("-o,--out", cp_out, "records path (default: table only)");
  cp_flags.attach(cp);
  cp_sa.attach(cp);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  try {
    if (gen->parsed()) {
      const std::size_t m = gen_m ? *gen_m : clauses_for_ratio(gen_n, gen_ratio.value_or(4.2));
      if (gen_n < 3) throw UsageError("gen needs -n >= 3");
      write_output(gen_out, write_dimacs(random_3sat(gen_n, m, global.seed)), out);
      return kSuccess;
    }

    if (tr->parsed()) {
      const Method method = method_arg(tr_method);
      const TranslateOptions opts = tr_flags.resolve();
      const Formula f = parse_dimacs(read_input(tr_in), mode_of(global));
      const Translation t = translate(f, method, opts);
      write_output(tr_out, to_json(t) + "\n", out);
      std::ostream& note = (tr_out.empty() || tr_out == "-") ? err : out;
      note << t.qubo.size() << " logical qubits, " << coupling_count(t.qubo) << " couplings\n";
      return kSuccess;
    }

    if (sv->parsed()) {
      const std::string text = read_input(sv_in);
      const SaParams sa = sv_sa.resolve(global.seed);
      std::optional<Formula> formula;
      std::optional<Translation> translation;
      QuboMatrix q;
      if (looks_like_json(text)) {
        const auto doc = [&] {
          try {
            return nlohmann::ordered_json::parse(text);
          } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("JSON: ") + e.what());
          }
        }();
        if (doc.contains("roles")) {
          translation = translation_from_json(text);
          q = translation->qubo;
        } else {
          q = qubo_from_json_value<std::int64_t>(doc);
        }
      } else {
        if (sv_method.empty()) throw UsageError("DIMACS input needs --method");
        const Method method = method_arg(sv_method);
        formula = parse_dimacs(text, mode_of(global));
        translation = translate(*formula, method, sv_flags.resolve());
        q = translation->qubo;
      }

      SolveResult result;
      if (sv_solver == "exhaustive") {
        if (q.size() > sv_cap) {
          throw UsageError("exhaustive solver refuses k=" + std::to_string(q.size()) +
                           " (cap " + std::to_string(sv_cap) + "); use --solver sa");
        }
        result = solve_exhaustive(q, sv_cap);
      } else {
        if (q.size() == 0) {
          result = solve_exhaustive(q);
        } else {
          result = solve_sa(q, sa);
        }
      }

      nlohmann::ordered_json doc = to_json_value(result);
      doc["solver"] = sv_solver;
      doc["k"] = q.size();
      doc["couplings"] = coupling_count(q);
      if (translation) {
        const Assignment a = decode(*translation, result.best);
        doc["method"] = method_name(translation->method);
        doc["assignment"] = a.to_string();
        if (formula) {
          doc["satisfied"] = satisfied_count(*formula, a);
          doc["m"] = formula->num_clauses();
        }
      }
      write_output(sv_out, doc.dump(2) + "\n", out);
      return kSuccess;
    }

    if (vf->parsed()) {
      VerifyConfig config;
      const auto n_range = range_arg(vf_n);
      const auto m_range = range_arg(vf_m);
      config.n_min = n_range.front();
      config.n_max = n_range.back();
      config.m_min = m_range.front();
      config.m_max = m_range.back();
      if (config.n_min < 3) throw UsageError("--n-range must start at 3 or more");
      config.count = vf_count;
      config.methods = methods_arg(vf_methods);
      config.seed = global.seed;
      config.translate = vf_flags.resolve();
      config.threads = vf_threads;
      if (config.count == 0) {
        err << "warning: --count 0, nothing to verify\n";
        return kSuccess;
      }
      const VerifyReport report = verify_oracle_equivalence(config);
      out << "verified " << report.formulas << " formulas, " << report.checks << " checks, "
          << report.failures.size() << " failures\n";
      for (const auto& f : report.failures) {
        out << "FAIL method=" << method_name(f.method)
            << (f.method == Method::nuessleinnm ? (f.share_aux ? " share_aux=on" : " share_aux=off")
                                                 : "")
            << ": " << f.reason << "\n"
            << f.dimacs;
      }
      return report.passed() ? kSuccess : kVerificationFailed;
    }

    if (sc->parsed()) {
      ScalingConfig config;
      config.n_values = range_arg(sc_n);
      config.replicates = sc_reps;
      config.methods = methods_arg(sc_methods);
      config.ratio = sc_ratio;
      config.seed = global.seed;
      config.translate = sc_flags.resolve();
      config.threads = sc_threads;
      for (std::size_t n : config.n_values) {
        if (n < 3) throw UsageError("scaling needs n >= 3");
      }
      const auto records = run_scaling(config);
      std::string body;
      if (global.format == "json") {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& r : records) {
          arr.push_back({{"n", r.n},
                         {"m", r.m},
                         {"method", method_name(r.method)},
                         {"replicate", r.replicate},
                         {"seed", r.seed},
                         {"logical_qubits", r.logical_qubits},
                         {"couplings", r.couplings}});
        }
        body = arr.dump(2) + "\n";
      } else {
        body = to_csv(records);
      }
      write_output(sc_out, body, out);
      if (!sc_summary.empty()) {
        std::ostringstream summary;
        write_scaling_summary(summary, records);
        write_output(sc_summary, summary.str(), out);
      }
      return kSuccess;
    }

    if (cp->parsed()) {
      ComparisonConfig config;
      config.sizes = sizes_arg(cp_sizes);
      config.replicates = cp_reps;
      config.methods = methods_arg(cp_methods);
      config.solver = cp_solver == "exhaustive" ? SolverKind::exhaustive : SolverKind::sa;
      config.sa = cp_sa.resolve(global.seed);
      config.threads = config.sa.threads;
      config.sa.threads = 1;
      config.seed = global.seed;
      config.translate = cp_flags.resolve();
      for (const auto& [n, m] : config.sizes) {
        if (n < 3) throw UsageError("compare needs n >= 3");
      }
      const auto records = run_comparison(config);
      if (!cp_out.empty()) {
        std::string body;
        if (global.format == "json") {
          auto arr = nlohmann::ordered_json::array();
          for (const auto& r : records) {
            nlohmann::ordered_json row = {{"n", r.n},
                                          {"m", r.m},
                                          {"method", method_name(r.method)},
                                          {"replicate", r.replicate},
                                          {"seed", r.seed},
                                          {"energy", r.energy},
                                          {"satisfied", r.satisfied}};
            row["maxsat_opt"] = r.maxsat_opt ? nlohmann::ordered_json(*r.maxsat_opt) : nullptr;
            arr.push_back(std::move(row));
          }
          body = arr.dump(2) + "\n";
        } else {
          body = to_csv(records);
        }
        write_output(cp_out, body, out);
      }
      if (cp_out.empty() || cp_out != "-") write_comparison_table(out, records);
      return kSuccess;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kUsage;
}

}  // namespace sat2qubo::cli
