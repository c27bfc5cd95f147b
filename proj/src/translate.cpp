#include "sat2qubo/translate.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>

#include "sat2qubo/error.hpp"

namespace sat2qubo {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::choi:
      return "choi";
    case Method::chancellor:
      return "chancellor";
    case Method::nuesslein2nm:
      return "nuesslein2nm";
    case Method::nuessleinnm:
      return "nuessleinnm";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (method_name(m) == name) return m;
  }
  throw Error("unknown method '" + std::string(name) +
              "' (expected choi, chancellor, nuesslein2nm or nuessleinnm)");
}

// ---------------------------------------------------------------------------
// Roles

namespace {

std::string join_args(const std::vector<std::int64_t>& args) {
  std::string s;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s.push_back(',');
    s += std::to_string(args[i]);
  }
  return s;
}

std::vector<std::int64_t> split_args(std::string_view text, std::size_t expected) {
  std::vector<std::int64_t> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto tok = text.substr(0, comma);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw ParseError("qubit role: bad integer '" + std::string(tok) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.size() != expected) throw ParseError("qubit role: wrong argument count");
  return out;
}

QubitRole make_role(RoleKind kind, std::vector<std::int64_t> args) {
  return QubitRole{kind, std::move(args)};
}

}  // namespace

std::string QubitRole::to_string() const {
  switch (kind) {
    case RoleKind::variable:
      return "var:" + join_args(args);
    case RoleKind::literal:
      return "lit:" + join_args(args);
    case RoleKind::literal_slot:
      return "slot:" + join_args(args);
    case RoleKind::clause_aux:
      return "aux:clause:" + join_args(args);
    case RoleKind::pair_aux:
      return "aux:pair:" + join_args(args);
    case RoleKind::triple_aux:
      return "aux:triple:" + join_args(args);
  }
  return "?";
}

QubitRole QubitRole::parse(std::string_view text) {
  struct Prefix {
    std::string_view prefix;
    RoleKind kind;
    std::size_t arity;
  };
  static constexpr Prefix kPrefixes[] = {
      {"var:", RoleKind::variable, 1},         {"lit:", RoleKind::literal, 2},
      {"slot:", RoleKind::literal_slot, 3},    {"aux:clause:", RoleKind::clause_aux, 1},
      {"aux:pair:", RoleKind::pair_aux, 2},    {"aux:triple:", RoleKind::triple_aux, 3},
  };
  for (const auto& p : kPrefixes) {
    if (text.starts_with(p.prefix)) {
      return make_role(p.kind, split_args(text.substr(p.prefix.size()), p.arity));
    }
  }
  throw ParseError("unknown qubit role '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Parameters

void ChoiParams::validate() const {
  if (X <= 0) throw Error("Choi: X must be positive");
  if (!(Y > 2 * X) || !(Z > 2 * X)) {
    throw Error("Choi: penalties must satisfy Y > 2|X| and Z > 2|X|");
  }
}

void ChancellorParams::validate() const {
  if (h <= 0 || g <= 0 || J <= 0) throw Error("Chancellor: h, g and J must be positive");
  if (h_a != 2 * h) throw Error("Chancellor: h_a must equal 2h");
  if (J_a != 2 * J) throw Error("Chancellor: J_a must equal 2J");
}

namespace {

TranslationMeta base_meta(const Formula& f) {
  TranslationMeta meta;
  meta.num_vars = f.num_vars();
  meta.num_clauses = f.num_clauses();
  return meta;
}

}  // namespace

// ---------------------------------------------------------------------------
// Choi: a qubit per literal slot, independent-set penalties.

Translation translate_choi(const Formula& f, const ChoiParams& params) {
  f.require_strict("choi");
  params.validate();
  const std::size_t m = f.num_clauses();
  Translation t;
  t.method = Method::choi;
  t.qubo = QuboMatrix(3 * m);
  t.meta = base_meta(f);
  t.meta.choi = params;
  t.meta.satisfied_level = -params.X * static_cast<std::int64_t>(m);
  t.meta.violation_cost = params.X;

  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < 3; ++i) {
      const std::size_t a = 3 * k + i;
      t.roles.push_back(make_role(RoleKind::literal_slot,
                                  {static_cast<std::int64_t>(k), static_cast<std::int64_t>(i),
                                   f.clause(k).lits[i].dimacs()}));
      t.qubo.add(a, a, -params.X);
      for (std::size_t i2 = i + 1; i2 < 3; ++i2) t.qubo.add(a, 3 * k + i2, params.Y);
    }
  }
  // Contradicting literals in different clauses; strict clauses never hold both.
  for (std::size_t a = 0; a < 3 * m; ++a) {
    const Literal la = f.clause(a / 3).lits[a % 3];
    for (std::size_t b = 3 * (a / 3 + 1); b < 3 * m; ++b) {
      if (f.clause(b / 3).lits[b % 3] == !la) t.qubo.add(a, b, params.Z);
    }
  }
  return t;
}

Assignment decode_choi(const Translation& t, std::span<const std::uint8_t> x) {
  if (x.size() != t.qubo.size()) throw Error("decode_choi: bit vector length mismatch");
  // First set slot wins on conflicts; untouched variables stay false.
  Assignment a(t.meta.num_vars);
  std::vector<bool> fixed(t.meta.num_vars, false);
  for (std::size_t s = 0; s < x.size(); ++s) {
    if (!x[s]) continue;
    const auto& role = t.roles.at(s);
    if (role.kind != RoleKind::literal_slot || role.args.size() != 3) {
      throw Error("decode_choi: qubit " + std::to_string(s) + " is not a literal slot");
    }
    const Literal l = Literal::from_dimacs(role.args[2]);
    if (fixed[l.var]) continue;
    fixed[l.var] = true;
    a.set(l.var, !l.negated);
  }
  return a;
}

// ---------------------------------------------------------------------------
// Chancellor: clause spectrum plus a triple-term gadget, in spins.
//
// With literal spins a_i = c_i s_i (gauge c_i = -1 for a negated literal) the
// clause Hamiltonian is
//
//   h (-sum_i a_i + sum_{i<j} a_i a_j - a_1 a_2 a_3)
//
// whose unsatisfied level sits 8h above the seven satisfied ones. The triple
// term is replaced by a gadget on ancilla s_a with product gauge C = c1 c2 c3:
//
//   -C h sum_i s_i + J_a sum_i s_i s_a - C h_a s_a + J sum_{i<j} s_i s_j
//
// which, minimized over s_a, equals const - C h s1 s2 s3 when h_a = 2h and
// J_a = 2J. Substituting s = 2x - 1 and dropping constants gives the QUBO.

namespace {

struct LocalQubo {
  // Slots 0..2 are the clause variables, 3 is the ancilla.
  std::array<std::array<std::int64_t, 4>, 4> w{};

  std::int64_t energy(unsigned state) const {
    std::int64_t e = 0;
    for (int i = 0; i < 4; ++i) {
      if (!((state >> i) & 1)) continue;
      for (int j = i; j < 4; ++j) {
        if ((state >> j) & 1) e += w[i][j];
      }
    }
    return e;
  }

  std::int64_t min_energy() const {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (unsigned s = 0; s < 16; ++s) best = std::min(best, energy(s));
    return best;
  }
};

LocalQubo chancellor_clause(const Clause& c, const ChancellorParams& p) {
  std::array<std::int64_t, 3> gauge{};
  for (int i = 0; i < 3; ++i) gauge[i] = c.lits[i].negated ? -1 : 1;
  const std::int64_t product = gauge[0] * gauge[1] * gauge[2];

  std::array<std::int64_t, 4> field{};
  std::array<std::array<std::int64_t, 4>, 4> coupling{};
  for (int i = 0; i < 3; ++i) {
    field[i] += -p.h * gauge[i] - product * p.h;
    coupling[i][3] += p.J_a;
    for (int j = i + 1; j < 3; ++j) coupling[i][j] += p.h * gauge[i] * gauge[j] + p.J;
  }
  field[3] += -product * p.h_a;

  // h s = 2h x - h;  J s_i s_j = 4J x_i x_j - 2J x_i - 2J x_j + J.
  LocalQubo q;
  for (int i = 0; i < 4; ++i) {
    q.w[i][i] += 2 * field[i];
    for (int j = i + 1; j < 4; ++j) {
      q.w[i][j] += 4 * coupling[i][j];
      q.w[i][i] -= 2 * coupling[i][j];
      q.w[j][j] -= 2 * coupling[i][j];
    }
  }
  return q;
}

}  // namespace

Translation translate_chancellor(const Formula& f, const ChancellorParams& params) {
  f.require_strict("chancellor");
  params.validate();
  const std::size_t n = f.num_vars();
  const std::size_t m = f.num_clauses();

  std::int64_t divisor = 1;
  if (params.scale == ChancellorScale::unit_gap) {
    if ((8 * params.h) % params.g != 0) {
      throw Error("Chancellor: unit-gap scaling needs g to divide 8h");
    }
    divisor = 8 * params.h / params.g;
  }

  Translation t;
  t.method = Method::chancellor;
  t.qubo = QuboMatrix(n + m);
  t.meta = base_meta(f);
  t.meta.chancellor = params;
  t.meta.violation_cost = 8 * params.h / divisor;
  for (std::size_t j = 0; j < n; ++j) {
    t.roles.push_back(make_role(RoleKind::variable, {static_cast<std::int64_t>(j)}));
  }

  std::int64_t satisfied = 0;
  for (std::size_t k = 0; k < m; ++k) {
    t.roles.push_back(make_role(RoleKind::clause_aux, {static_cast<std::int64_t>(k)}));
    const Clause& c = f.clause(k);
    const LocalQubo local = chancellor_clause(c, params);
    const std::array<std::size_t, 4> index = {c.lits[0].var, c.lits[1].var, c.lits[2].var,
                                              n + k};
    for (int i = 0; i < 4; ++i) {
      for (int j = i; j < 4; ++j) {
        const std::int64_t w = local.w[i][j];
        if (w % divisor != 0) {
          throw Error("Chancellor: weights are not integral at unit gap for these parameters");
        }
        t.qubo.add_sym(index[i], index[j], w / divisor);
      }
    }
    satisfied += local.min_energy() / divisor;
  }
  t.meta.satisfied_level = satisfied;
  return t;
}

// ---------------------------------------------------------------------------
// 2n+m: literal qubits L = (v_0, ¬v_0, ...), then one qubit per clause.
//
// Cell rules, first match wins, over 0 <= i <= j < 2n+m:
//   i == j < 2n                    -R(L_i)
//   i == j >= 2n                   2
//   j < 2n, j == i+1, i even       m + 1
//   i, j < 2n                      R(L_i, L_j)
//   i < 2n <= j, L_i in c_{j-2n}   -1
// Only the non-zero cells are visited; the result equals the full double loop.

Translation translate_nuesslein2nm(const Formula& f) {
  f.require_strict("nuesslein2nm");
  const std::size_t n = f.num_vars();
  const std::size_t m = f.num_clauses();
  const std::size_t lits = 2 * n;

  Translation t;
  t.method = Method::nuesslein2nm;
  t.qubo = QuboMatrix(lits + m);
  t.meta = base_meta(f);
  t.meta.satisfied_level = -static_cast<std::int64_t>(m);
  t.meta.violation_cost = 1;
  for (std::size_t j = 0; j < n; ++j) {
    t.roles.push_back(make_role(RoleKind::literal, {static_cast<std::int64_t>(j), 0}));
    t.roles.push_back(make_role(RoleKind::literal, {static_cast<std::int64_t>(j), 1}));
    t.qubo.add(2 * j, 2 * j + 1, static_cast<std::int64_t>(m) + 1);
  }

  for (std::size_t k = 0; k < m; ++k) {
    t.roles.push_back(make_role(RoleKind::clause_aux, {static_cast<std::int64_t>(k)}));
    const std::size_t clause_qubit = lits + k;
    t.qubo.add(clause_qubit, clause_qubit, 2);

    std::array<std::size_t, 3> idx{};
    for (int i = 0; i < 3; ++i) idx[i] = literal_index(f.clause(k).lits[i]);
    std::sort(idx.begin(), idx.end());
    for (int i = 0; i < 3; ++i) {
      t.qubo.add(idx[i], idx[i], -1);
      t.qubo.add(idx[i], clause_qubit, -1);
      for (int i2 = i + 1; i2 < 3; ++i2) {
        const bool complement = idx[i2] == idx[i] + 1 && idx[i] % 2 == 0;
        if (!complement) t.qubo.add(idx[i], idx[i2], 1);
      }
    }
  }
  return t;
}

Assignment decode_nuesslein2nm(const Translation& t, std::span<const std::uint8_t> x) {
  if (x.size() != t.qubo.size()) {
    throw Error("decode_nuesslein2nm: bit vector length mismatch");
  }
  Assignment a(t.meta.num_vars);
  for (std::size_t j = 0; j < t.meta.num_vars; ++j) a.set(j, x[2 * j] != 0);
  return a;
}

// ---------------------------------------------------------------------------
// n+m: stack one stencil per normalized clause.

const ClausePattern& nuesslein_pattern(int negations) {
  // Slots: 0 = a, 1 = b, 2 = c, 3 = aux.
  static const std::array<ClausePattern, 4> kPatterns = {{
      // (a ∨ b ∨ c), aux = (a ∨ b)
      {{{{0, 2, 0, -2}, {0, 0, 0, -2}, {0, 0, -1, 1}, {0, 0, 0, 1}}}, -1},
      // (a ∨ b ∨ ¬c), aux = (a ∨ b)
      {{{{0, 2, 0, -2}, {0, 0, 0, -2}, {0, 0, 1, -1}, {0, 0, 0, 2}}}, 0},
      // (a ∨ ¬b ∨ ¬c), aux = (a ∨ ¬b)
      {{{{2, -2, 0, -2}, {0, 0, 0, 2}, {0, 0, 1, -1}, {0, 0, 0, 0}}}, 0},
      // (¬a ∨ ¬b ∨ ¬c), aux = (¬a ∧ ¬b ∧ ¬c)
      {{{{-1, 1, 1, 1}, {0, -1, 1, 1}, {0, 0, -1, 1}, {0, 0, 0, -1}}}, -1},
  }};
  if (negations < 0 || negations > 3) throw Error("clause pattern: negations must be 0..3");
  return kPatterns[static_cast<std::size_t>(negations)];
}

namespace {

/// Literals an aux qubit stands for, sorted; clauses with equal keys share it.
std::vector<std::int64_t> aux_key(const Clause& normalized) {
  std::vector<std::int64_t> key;
  switch (normalized.negations()) {
    case 0:
    case 1:
    case 2:
      key = {normalized.lits[0].dimacs(), normalized.lits[1].dimacs()};
      break;
    default:
      key = {normalized.lits[0].dimacs(), normalized.lits[1].dimacs(),
             normalized.lits[2].dimacs()};
      break;
  }
  std::sort(key.begin(), key.end(), [](std::int64_t a, std::int64_t b) {
    return Literal::from_dimacs(a) < Literal::from_dimacs(b);
  });
  return key;
}

}  // namespace

Translation translate_nuessleinnm(const Formula& f, bool share_aux) {
  f.require_strict("nuessleinnm");
  const std::size_t n = f.num_vars();
  const std::size_t m = f.num_clauses();

  // Assign aux qubits in order of first use.
  std::vector<std::size_t> aux_of(m);
  std::vector<QubitRole> aux_roles;
  std::map<std::vector<std::int64_t>, std::size_t> by_key;
  std::vector<Clause> normalized(m);
  for (std::size_t k = 0; k < m; ++k) {
    normalized[k] = normalize_clause(f.clause(k));
    if (!share_aux) {
      aux_of[k] = aux_roles.size();
      aux_roles.push_back(make_role(RoleKind::clause_aux, {static_cast<std::int64_t>(k)}));
      continue;
    }
    auto key = aux_key(normalized[k]);
    auto [it, inserted] = by_key.try_emplace(key, aux_roles.size());
    if (inserted) {
      const RoleKind kind = key.size() == 2 ? RoleKind::pair_aux : RoleKind::triple_aux;
      aux_roles.push_back(make_role(kind, std::move(key)));
    }
    aux_of[k] = it->second;
  }

  Translation t;
  t.method = Method::nuessleinnm;
  t.qubo = QuboMatrix(n + aux_roles.size());
  t.meta = base_meta(f);
  t.meta.share_aux = share_aux;
  for (std::size_t j = 0; j < n; ++j) {
    t.roles.push_back(make_role(RoleKind::variable, {static_cast<std::int64_t>(j)}));
  }
  t.roles.insert(t.roles.end(), aux_roles.begin(), aux_roles.end());

  for (std::size_t k = 0; k < m; ++k) {
    const Clause& c = normalized[k];
    const int d = c.negations();
    if (d == 0) ++t.meta.p;
    if (d == 3) ++t.meta.q;
    const ClausePattern& pattern = nuesslein_pattern(d);
    const std::array<std::size_t, 4> index = {c.lits[0].var, c.lits[1].var, c.lits[2].var,
                                              n + aux_of[k]};
    for (int i = 0; i < 4; ++i) {
      for (int j = i; j < 4; ++j) t.qubo.add_sym(index[i], index[j], pattern.weights[i][j]);
    }
  }
  t.meta.satisfied_level = -static_cast<std::int64_t>(t.meta.p + t.meta.q);
  t.meta.violation_cost = 1;
  return t;
}

Assignment decode_direct(const Translation& t, std::span<const std::uint8_t> x) {
  if (t.method != Method::chancellor && t.method != Method::nuessleinnm) {
    throw Error("decode_direct: method " + std::string(method_name(t.method)) +
                " does not map variables to qubits one-to-one");
  }
  if (x.size() != t.qubo.size()) throw Error("decode_direct: bit vector length mismatch");
  Assignment a(t.meta.num_vars);
  for (std::size_t j = 0; j < t.meta.num_vars; ++j) a.set(j, x[j] != 0);
  return a;
}

Assignment decode(const Translation& t, std::span<const std::uint8_t> x) {
  switch (t.method) {
    case Method::choi:
      return decode_choi(t, x);
    case Method::nuesslein2nm:
      return decode_nuesslein2nm(t, x);
    case Method::chancellor:
    case Method::nuessleinnm:
      return decode_direct(t, x);
  }
  throw Error("decode: unknown method");
}

Translation translate(const Formula& f, Method method, const TranslateOptions& opts) {
  switch (method) {
    case Method::choi:
      return translate_choi(f, opts.choi);
    case Method::chancellor:
      return translate_chancellor(f, opts.chancellor);
    case Method::nuesslein2nm:
      return translate_nuesslein2nm(f);
    case Method::nuessleinnm:
      return translate_nuessleinnm(f, opts.share_aux);
  }
  throw Error("translate: unknown method");
}

// ---------------------------------------------------------------------------

std::int64_t expected_min_energy(const Translation& t, std::size_t optimum) {
  const auto m = static_cast<std::int64_t>(t.meta.num_clauses);
  const auto opt = static_cast<std::int64_t>(optimum);
  if (opt > m) throw Error("expected_min_energy: optimum exceeds clause count");
  switch (t.method) {
    case Method::nuesslein2nm:
      return -opt;
    case Method::nuessleinnm:
      return -static_cast<std::int64_t>(t.meta.p + t.meta.q) + (m - opt);
    case Method::choi:
      return -t.meta.choi.X * opt;
    case Method::chancellor:
      return t.meta.satisfied_level + t.meta.violation_cost * (m - opt);
  }
  throw Error("expected_min_energy: unknown method");
}

std::int64_t expected_min_energy(Method method, const Formula& f, std::size_t optimum,
                                 const TranslateOptions& opts) {
  return expected_min_energy(translate(f, method, opts), optimum);
}

// ---------------------------------------------------------------------------
// JSON: the QUBO document plus "roles" and "meta".

nlohmann::ordered_json to_json_value(const Translation& t) {
  nlohmann::ordered_json doc = to_json_value(t.qubo);
  auto roles = nlohmann::ordered_json::array();
  for (const auto& r : t.roles) roles.push_back(r.to_string());
  doc["roles"] = std::move(roles);

  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  switch (t.method) {
    case Method::choi:
      params = {{"X", t.meta.choi.X}, {"Y", t.meta.choi.Y}, {"Z", t.meta.choi.Z}};
      break;
    case Method::chancellor: {
      const auto& c = t.meta.chancellor;
      params = {{"h", c.h},     {"g", c.g},     {"h_a", c.h_a},
                {"J", c.J},     {"J_a", c.J_a},
                {"scale", c.scale == ChancellorScale::unit_gap ? "unit_gap" : "ising"}};
      break;
    }
    case Method::nuessleinnm:
      params = {{"share_aux", t.meta.share_aux}};
      break;
    case Method::nuesslein2nm:
      break;
  }
  nlohmann::ordered_json meta;
  meta["method"] = method_name(t.method);
  meta["n"] = t.meta.num_vars;
  meta["m"] = t.meta.num_clauses;
  meta["p"] = t.meta.p;
  meta["q"] = t.meta.q;
  meta["satisfied_level"] = t.meta.satisfied_level;
  meta["violation_cost"] = t.meta.violation_cost;
  meta["params"] = std::move(params);
  doc["meta"] = std::move(meta);
  return doc;
}

std::string to_json(const Translation& t) { return to_json_value(t).dump(); }

Translation translation_from_json(std::string_view text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("translation JSON: ") + e.what());
  }
  Translation t;
  t.qubo = qubo_from_json_value<std::int64_t>(doc);
  if (!doc.contains("roles") || !doc.contains("meta") || !doc["roles"].is_array() ||
      !doc["meta"].is_object()) {
    throw ParseError("translation JSON: expected \"roles\" array and \"meta\" object");
  }
  try {
    for (const auto& r : doc["roles"]) t.roles.push_back(QubitRole::parse(r.get<std::string>()));
    const auto& meta = doc["meta"];
    t.method = parse_method(meta.at("method").get<std::string>());
    t.meta.num_vars = meta.at("n").get<std::size_t>();
    t.meta.num_clauses = meta.at("m").get<std::size_t>();
    t.meta.p = meta.value("p", std::size_t{0});
    t.meta.q = meta.value("q", std::size_t{0});
    t.meta.satisfied_level = meta.value("satisfied_level", std::int64_t{0});
    t.meta.violation_cost = meta.value("violation_cost", std::int64_t{1});
    const auto params = meta.value("params", nlohmann::ordered_json::object());
    switch (t.method) {
      case Method::choi:
        t.meta.choi = {params.value("X", std::int64_t{1}), params.value("Y", std::int64_t{3}),
                       params.value("Z", std::int64_t{3})};
        break;
      case Method::chancellor: {
        auto& c = t.meta.chancellor;
        c.h = params.value("h", c.h);
        c.g = params.value("g", c.g);
        c.h_a = params.value("h_a", c.h_a);
        c.J = params.value("J", c.J);
        c.J_a = params.value("J_a", c.J_a);
        c.scale = params.value("scale", std::string("unit_gap")) == "ising"
                      ? ChancellorScale::ising
                      : ChancellorScale::unit_gap;
        break;
      }
      case Method::nuessleinnm:
        t.meta.share_aux = params.value("share_aux", false);
        break;
      case Method::nuesslein2nm:
        break;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("translation JSON: ") + e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("translation JSON: ") + e.what());
  }
  if (t.roles.size() != t.qubo.size()) {
    throw ParseError("translation JSON: roles must cover every qubit exactly once");
  }
  return t;
}

}  // namespace sat2qubo
