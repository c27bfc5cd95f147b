#include "sat2qubo/formula.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "sat2qubo/error.hpp"
#include "sat2qubo/rng.hpp"

namespace sat2qubo {

Literal Literal::from_dimacs(std::int64_t id) {
  if (id == 0) throw Error("literal id 0 is reserved as clause terminator");
  const auto var = static_cast<std::uint32_t>((id < 0 ? -id : id) - 1);
  return {var, id < 0};
}

bool Clause::contains(Literal l) const {
  return std::find(lits.begin(), lits.end(), l) != lits.end();
}

bool Clause::has_distinct_vars() const {
  return lits[0].var != lits[1].var && lits[0].var != lits[2].var &&
         lits[1].var != lits[2].var;
}

bool Clause::satisfied_by(const Assignment& a) const {
  return std::any_of(lits.begin(), lits.end(), [&](Literal l) { return a.value(l); });
}

int Clause::negations() const {
  return static_cast<int>(std::count_if(lits.begin(), lits.end(),
                                        [](Literal l) { return l.negated; }));
}

Clause normalize_clause(const Clause& c) {
  Clause out = c;
  std::stable_partition(out.lits.begin(), out.lits.end(),
                        [](Literal l) { return !l.negated; });
  return out;
}

std::string Assignment::to_string() const {
  std::string s;
  s.reserve(values_.size());
  for (bool v : values_) s.push_back(v ? '1' : '0');
  return s;
}

Formula::Formula(std::size_t num_vars, std::vector<Clause> clauses, ClauseMode mode)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
  for (std::size_t k = 0; k < clauses_.size(); ++k) {
    for (const Literal& l : clauses_[k].lits) {
      if (l.var >= num_vars_) {
        throw Error("clause " + std::to_string(k) + " references variable " +
                    std::to_string(l.var + 1) + " but the formula has " +
                    std::to_string(num_vars_));
      }
    }
    if (mode == ClauseMode::strict && !clauses_[k].has_distinct_vars()) {
      throw Error("clause " + std::to_string(k) +
                  " repeats a variable (strict mode requires three distinct variables)");
    }
  }
}

bool Formula::is_strict() const {
  return std::all_of(clauses_.begin(), clauses_.end(),
                     [](const Clause& c) { return c.has_distinct_vars(); });
}

void Formula::require_strict(std::string_view who) const {
  if (!is_strict()) {
    throw Error(std::string(who) + " requires clauses over three distinct variables");
  }
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw ParseError("DIMACS line " + std::to_string(line) + ": " + what);
}

}  // namespace

Formula parse_dimacs(std::istream& in, ClauseMode mode) {
  bool have_header = false;
  std::size_t num_vars = 0;
  std::size_t declared = 0;
  std::vector<Clause> clauses;
  std::vector<std::int64_t> pending;
  std::size_t pending_line = 0;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const char lead = line[first];
    if (lead == 'c') continue;
    if (lead == '%') break;  // SATLIB trailer
    if (lead == 'p') {
      if (have_header) parse_fail(lineno, "duplicate header");
      std::istringstream hs(line.substr(first));
      std::string p, fmt;
      long long n = -1, m = -1;
      std::string extra;
      if (!(hs >> p >> fmt >> n >> m) || p != "p" || fmt != "cnf" || n < 0 || m < 0 ||
          (hs >> extra)) {
        parse_fail(lineno, "malformed header, expected 'p cnf <vars> <clauses>'");
      }
      have_header = true;
      num_vars = static_cast<std::size_t>(n);
      declared = static_cast<std::size_t>(m);
      continue;
    }
    if (!have_header) parse_fail(lineno, "clause before 'p cnf' header");

    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      std::int64_t id = 0;
      std::size_t used = 0;
      try {
        id = std::stoll(tok, &used);
      } catch (const std::exception&) {
        parse_fail(lineno, "expected integer literal, got '" + tok + "'");
      }
      if (used != tok.size()) parse_fail(lineno, "expected integer literal, got '" + tok + "'");
      if (pending.empty()) pending_line = lineno;
      if (id == 0) {
        if (pending.size() != 3) {
          parse_fail(pending_line, "clause has " + std::to_string(pending.size()) +
                                       " literals, expected exactly 3");
        }
        Clause c;
        for (std::size_t i = 0; i < 3; ++i) c.lits[i] = Literal::from_dimacs(pending[i]);
        clauses.push_back(c);
        pending.clear();
        continue;
      }
      const auto mag = static_cast<std::uint64_t>(id < 0 ? -id : id);
      if (mag > num_vars) {
        parse_fail(lineno, "variable id " + std::to_string(id) + " out of range 1.." +
                               std::to_string(num_vars));
      }
      pending.push_back(id);
      if (pending.size() > 3) {
        parse_fail(pending_line, "clause has more than 3 literals");
      }
    }
  }
  if (!have_header) throw ParseError("DIMACS: missing 'p cnf' header");
  if (!pending.empty()) parse_fail(pending_line, "clause not terminated by 0");
  if (clauses.size() != declared) {
    throw ParseError("DIMACS: header declares " + std::to_string(declared) +
                     " clauses but " + std::to_string(clauses.size()) + " were read");
  }
  try {
    return Formula(num_vars, std::move(clauses), mode);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("DIMACS: ") + e.what());
  }
}

Formula parse_dimacs(std::string_view text, ClauseMode mode) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in, mode);
}

void write_dimacs(std::ostream& out, const Formula& f) {
  out << "p cnf " << f.num_vars() << ' ' << f.num_clauses() << '\n';
  for (const Clause& c : f.clauses()) {
    out << c.lits[0].dimacs() << ' ' << c.lits[1].dimacs() << ' ' << c.lits[2].dimacs()
        << " 0\n";
  }
}

std::string write_dimacs(const Formula& f) {
  std::ostringstream out;
  write_dimacs(out, f);
  return out.str();
}

Formula random_3sat(std::size_t num_vars, std::size_t num_clauses, std::uint64_t seed) {
  if (num_vars < 3) {
    throw Error("random_3sat needs at least 3 variables for distinct-variable clauses");
  }
  Rng rng(seed);
  std::vector<Clause> clauses;
  clauses.reserve(num_clauses);
  for (std::size_t k = 0; k < num_clauses; ++k) {
    Clause c;
    for (std::size_t i = 0; i < 3; ++i) {
      std::uint32_t v;
      do {
        v = static_cast<std::uint32_t>(rng.below(num_vars));
      } while ((i > 0 && c.lits[0].var == v) || (i > 1 && c.lits[1].var == v));
      c.lits[i] = Literal{v, false};
    }
    for (auto& l : c.lits) l.negated = rng.coin();
    clauses.push_back(c);
  }
  return Formula(num_vars, std::move(clauses));
}

std::size_t clauses_for_ratio(std::size_t num_vars, double ratio) {
  const double product = ratio * static_cast<double>(num_vars);
  // 4.2 * 3 evaluates to 12.600000000000001; snap near-integers before ceil.
  const double nearest = std::round(product);
  if (std::abs(product - nearest) < 1e-9) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::ceil(product));
}

std::size_t count_single(const Formula& f, Literal l) {
  return static_cast<std::size_t>(std::count_if(
      f.clauses().begin(), f.clauses().end(), [&](const Clause& c) { return c.contains(l); }));
}

std::size_t count_pair(const Formula& f, Literal l1, Literal l2) {
  return static_cast<std::size_t>(
      std::count_if(f.clauses().begin(), f.clauses().end(),
                    [&](const Clause& c) { return c.contains(l1) && c.contains(l2); }));
}

std::size_t satisfied_count(const Formula& f, const Assignment& a) {
  if (a.size() != f.num_vars()) {
    throw Error("assignment has " + std::to_string(a.size()) + " values, formula has " +
                std::to_string(f.num_vars()) + " variables");
  }
  return static_cast<std::size_t>(
      std::count_if(f.clauses().begin(), f.clauses().end(),
                    [&](const Clause& c) { return c.satisfied_by(a); }));
}

MaxSatResult maxsat_bruteforce(const Formula& f, std::size_t var_cap) {
  const std::size_t n = f.num_vars();
  if (n > var_cap) {
    throw CapacityError("maxsat_bruteforce: " + std::to_string(n) +
                        " variables exceeds the cap of " + std::to_string(var_cap));
  }
  if (n > 62) throw CapacityError("maxsat_bruteforce: more than 62 variables");

  // Counter bit (n-1-j) holds v_j, so counting upward is lexicographic order.
  struct Masks {
    std::uint64_t pos = 0, neg = 0;
  };
  std::vector<Masks> masks;
  masks.reserve(f.num_clauses());
  for (const Clause& c : f.clauses()) {
    Masks mk;
    for (const Literal& l : c.lits) {
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - l.var);
      (l.negated ? mk.neg : mk.pos) |= bit;
    }
    masks.push_back(mk);
  }

  const std::uint64_t total = std::uint64_t{1} << n;
  std::size_t best = 0;
  std::uint64_t best_t = 0;
  bool first = true;
  for (std::uint64_t t = 0; t < total; ++t) {
    std::size_t sat = 0;
    for (const Masks& mk : masks) sat += ((t & mk.pos) | (~t & mk.neg)) != 0;
    if (first || sat > best) {
      best = sat;
      best_t = t;
      first = false;
      if (best == masks.size()) break;
    }
  }

  Assignment witness(n);
  for (std::size_t j = 0; j < n; ++j) witness.set(j, ((best_t >> (n - 1 - j)) & 1) != 0);
  return {best, std::move(witness)};
}

}  // namespace sat2qubo
