#include "coxsaito/json_io.hpp"

namespace coxsaito {

namespace {

json rational_json(const mpq_class& q) { return json::array({q.get_num().get_str(), q.get_den().get_str()}); }

mpq_class rational_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
    throw MalformedJson("rational must be [\"num\",\"den\"]");
  mpq_class q;
  try {
    q = mpq_class(mpz_class(j[0].get<std::string>()), mpz_class(j[1].get<std::string>()));
  } catch (const std::invalid_argument&) {
    throw MalformedJson("bad integer in rational");
  }
  if (q.get_den() == 0) throw MalformedJson("zero denominator");
  q.canonicalize();
  return q;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw MalformedJson(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<std::string> strings(const json& j) {
  if (!j.is_array()) throw MalformedJson("expected an array of names");
  std::vector<std::string> out;
  for (const auto& s : j) {
    if (!s.is_string()) throw MalformedJson("expected a name");
    out.push_back(s.get<std::string>());
  }
  return out;
}

json polys_json(const std::vector<Poly>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(to_json(p));
  return a;
}

std::vector<Poly> polys_from(const json& j) {
  if (!j.is_array()) throw MalformedJson("expected an array of polynomials");
  std::vector<Poly> out;
  for (const auto& p : j) out.push_back(poly_from_json(p));
  return out;
}

const char* kind_name(Identity::Kind k) {
  switch (k) {
    case Identity::Kind::Combination: return "combination";
    case Identity::Kind::Determinant: return "determinant";
    case Identity::Kind::Equal: return "equal";
    default: return "separator";
  }
}

Identity::Kind kind_from(const std::string& s) {
  if (s == "combination") return Identity::Kind::Combination;
  if (s == "determinant") return Identity::Kind::Determinant;
  if (s == "equal") return Identity::Kind::Equal;
  if (s == "separator") return Identity::Kind::Separator;
  throw MalformedJson("unknown identity kind '" + s + "'");
}

Verdict verdict_from(const std::string& s) {
  if (s == "pass") return Verdict::Pass;
  if (s == "fail") return Verdict::Fail;
  if (s == "indeterminate") return Verdict::Indeterminate;
  throw MalformedJson("unknown verdict '" + s + "'");
}

}  // namespace

json to_json(const Scalar& s) {
  json j;
  j["a"] = rational_json(s.a());
  if (!s.is_rational()) {
    j["b"] = rational_json(s.b());
    j["d"] = s.d();
  }
  return j;
}

Scalar scalar_from_json(const json& j) {
  mpq_class a = rational_from(field(j, "a"));
  if (!j.contains("b")) return Scalar(a);
  mpq_class b = rational_from(j.at("b"));
  const json& d = field(j, "d");
  if (!d.is_number_integer()) throw MalformedJson("radicand must be an integer");
  try {
    return Scalar::quadratic(a, b, d.get<int>());
  } catch (const std::invalid_argument& e) {
    throw MalformedJson(e.what());
  }
}

json to_json(const Poly& p) {
  json j;
  j["vars"] = p.ring() ? json(p.ring()->names) : json::array();
  j["field"] = {{"d", p.radicand()}};
  json terms = json::array();
  int n = p.nvars();
  for (const auto& t : p.terms()) terms.push_back({{"exp", t.m.exps(n)}, {"coeff", to_json(t.c)}});
  j["terms"] = std::move(terms);
  return j;
}

Poly poly_from_json(const json& j) {
  auto names = strings(field(j, "vars"));
  RingPtr ring;
  try {
    ring = make_ring(names);
  } catch (const std::invalid_argument& e) {
    throw MalformedJson(e.what());
  }
  const json& terms = field(j, "terms");
  if (!terms.is_array()) throw MalformedJson("terms must be an array");
  std::vector<Term> out;
  for (const auto& t : terms) {
    const json& e = field(t, "exp");
    if (!e.is_array() || e.size() != names.size()) throw MalformedJson("exponent length differs from vars");
    std::vector<int> exps;
    for (const auto& x : e) {
      if (!x.is_number_integer() || x.get<long>() < 0 || x.get<long>() > 65535)
        throw MalformedJson("bad exponent");
      exps.push_back(x.get<int>());
    }
    out.push_back({Monomial::from(exps), scalar_from_json(field(t, "coeff"))});
  }
  try {
    return Poly::from_terms(ring, std::move(out));
  } catch (const FieldMismatch& e) {
    throw MalformedJson(e.what());
  }
}

json to_json(const PolyMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int k = 0; k < m.cols(); ++k) r.push_back(to_json(m(i, k)));
    rows.push_back(std::move(r));
  }
  return {{"vars", m.ring() ? json(m.ring()->names) : json::array()},
          {"rows", m.rows()},
          {"cols", m.cols()},
          {"entries", std::move(rows)}};
}

PolyMatrix poly_matrix_from_json(const json& j) {
  RingPtr ring = make_ring(strings(field(j, "vars")));
  const json& r = field(j, "rows");
  const json& c = field(j, "cols");
  if (!r.is_number_integer() || !c.is_number_integer() || r.get<int>() < 0 || c.get<int>() < 0)
    throw MalformedJson("bad matrix shape");
  PolyMatrix m(ring, r.get<int>(), c.get<int>());
  const json& e = field(j, "entries");
  if (!e.is_array() || static_cast<int>(e.size()) != m.rows()) throw MalformedJson("matrix row count");
  for (int i = 0; i < m.rows(); ++i) {
    if (!e[i].is_array() || static_cast<int>(e[i].size()) != m.cols()) throw MalformedJson("matrix column count");
    for (int k = 0; k < m.cols(); ++k) {
      Poly p = poly_from_json(e[i][k]);
      if (!same_ring(p.ring(), ring)) throw MalformedJson("matrix entry ring differs");
      m(i, k) = p.rebase(ring);
    }
  }
  return m;
}

json to_json(const ScalarMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json r = json::array();
    for (int k = 0; k < m.cols; ++k) r.push_back(to_json(m(i, k)));
    rows.push_back(std::move(r));
  }
  return rows;
}

ScalarMatrix scalar_matrix_from_json(const json& j) {
  if (!j.is_array()) throw MalformedJson("scalar matrix must be an array of rows");
  int rows = static_cast<int>(j.size());
  int cols = rows ? static_cast<int>(j[0].size()) : 0;
  ScalarMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols) throw MalformedJson("ragged scalar matrix");
    for (int k = 0; k < cols; ++k) m(i, k) = scalar_from_json(j[i][k]);
  }
  return m;
}

json to_json(const Identity& id) {
  json j;
  j["kind"] = kind_name(id.kind);
  j["label"] = id.label;
  j["target"] = to_json(id.target);
  switch (id.kind) {
    case Identity::Kind::Combination:
      j["generators"] = polys_json(id.generators);
      j["cofactors"] = polys_json(id.cofactors);
      break;
    case Identity::Kind::Determinant:
      j["matrix"] = to_json(id.matrix);
      j["scale"] = to_json(id.scale);
      break;
    case Identity::Kind::Equal:
      j["rhs"] = id.generators.empty() ? json() : to_json(id.generators[0]);
      j["scale"] = to_json(id.scale);
      break;
    case Identity::Kind::Separator: {
      j["generators"] = polys_json(id.generators);
      j["weights"] = id.weights;
      json f = json::array();
      int n = id.target.nvars();
      for (const auto& [m, c] : id.separator.functional) f.push_back({{"exp", m.exps(n)}, {"coeff", to_json(c)}});
      j["separator"] = {{"degree", id.separator.degree}, {"functional", std::move(f)}};
      break;
    }
  }
  return j;
}

Identity identity_from_json(const json& j) {
  Identity id;
  id.kind = kind_from(field(j, "kind").get<std::string>());
  id.label = field(j, "label").get<std::string>();
  id.target = poly_from_json(field(j, "target"));
  switch (id.kind) {
    case Identity::Kind::Combination:
      id.generators = polys_from(field(j, "generators"));
      id.cofactors = polys_from(field(j, "cofactors"));
      break;
    case Identity::Kind::Determinant:
      id.matrix = poly_matrix_from_json(field(j, "matrix"));
      id.scale = scalar_from_json(field(j, "scale"));
      break;
    case Identity::Kind::Equal:
      id.generators = {poly_from_json(field(j, "rhs"))};
      id.scale = scalar_from_json(field(j, "scale"));
      break;
    case Identity::Kind::Separator: {
      id.generators = polys_from(field(j, "generators"));
      id.weights = field(j, "weights").get<std::vector<int>>();
      const json& s = field(j, "separator");
      id.separator.degree = field(s, "degree").get<int>();
      int n = id.target.nvars();
      for (const auto& t : field(s, "functional")) {
        auto e = field(t, "exp").get<std::vector<int>>();
        if (static_cast<int>(e.size()) != n) throw MalformedJson("separator exponent length");
        id.separator.functional.emplace_back(Monomial::from(e), scalar_from_json(field(t, "coeff")));
      }
      break;
    }
  }
  return id;
}

json to_json(const Certificate& c) {
  json ids = json::array();
  for (const auto& id : c.identities) ids.push_back(to_json(id));
  json consts = json::array();
  for (const auto& [k, v] : c.constants) consts.push_back({{"name", k}, {"value", to_json(v)}});
  json notes = json::array();
  for (const auto& [k, v] : c.notes) notes.push_back({{"key", k}, {"value", v}});
  return {{"check", c.check},       {"type", c.type},       {"verdict", to_string(c.verdict)},
          {"identities", ids},      {"constants", consts},  {"notes", notes},
          {"budget", c.budget}};
}

Certificate certificate_from_json(const json& j) {
  Certificate c;
  c.check = field(j, "check").get<std::string>();
  c.type = field(j, "type").get<std::string>();
  c.verdict = verdict_from(field(j, "verdict").get<std::string>());
  for (const auto& id : field(j, "identities")) c.identities.push_back(identity_from_json(id));
  if (j.contains("constants"))
    for (const auto& k : j.at("constants"))
      c.constants.emplace_back(field(k, "name").get<std::string>(), scalar_from_json(field(k, "value")));
  if (j.contains("notes"))
    for (const auto& k : j.at("notes"))
      c.notes.emplace_back(field(k, "key").get<std::string>(), field(k, "value").get<std::string>());
  if (j.contains("budget")) c.budget = j.at("budget").get<std::string>();
  return c;
}

json to_json(const MulTable& m) {
  json c = json::array();
  for (std::size_t i = 0; i < m.c.size(); ++i)
    for (std::size_t k = i; k < m.c[i].size(); ++k)
      c.push_back({{"i", i + 1}, {"j", k + 1}, {"coeffs", polys_json(m.c[i][k])}});
  json lambda = json::array();
  for (const auto& s : m.lambda) lambda.push_back(to_json(s));
  return {{"side", to_string(m.side)},         {"type", m.type},
          {"l", m.l},                          {"weights", m.weights},
          {"defining", to_json(m.defining)},   {"lambda", lambda},
          {"numerators", polys_json(m.numerators)}, {"degrees", m.degrees},
          {"products", c}};
}

json to_json(const FiberReport& f) {
  json pt = json::array();
  for (const auto& s : f.point) pt.push_back(to_json(s));
  return {{"point", pt}, {"fiber_points", f.points}, {"components", f.components}, {"types", f.types},
          {"pass", f.pass}};
}

json fixture_json(const CoxeterDatum& d, const SaitoData& s) {
  json roots = json::array();
  for (const auto& r : d.roots) {
    json v = json::array();
    for (const auto& x : r) v.push_back(to_json(x));
    roots.push_back(std::move(v));
  }
  json blocks = json::array();
  for (const auto& b : d.blocks)
    blocks.push_back({{"type", b.factor.name()}, {"offset", b.offset}, {"rank", b.rank}, {"h", b.h},
                      {"hyperplanes", b.hyperplanes}});
  json datum = {{"type", d.type.name()},
                {"rank", d.rank},
                {"radicand", d.radicand},
                {"order", d.order},
                {"hyperplanes", d.hyperplane_count()},
                {"degrees", d.degrees},
                {"exponents", d.exponents},
                {"blocks", blocks},
                {"gram", to_json(d.gram)},
                {"gamma", to_json(d.gamma)},
                {"roots", roots},
                {"closed_form", d.closed_form()},
                {"delta", to_json(d.delta)},
                {"classical", polys_json(d.classical)},
                {"invariants", polys_json(d.invariants)},
                {"jacobian_constant", to_json(d.jacobian_constant)},
                {"seeds", d.seeds}};
  json saito = {{"weights", s.weights},
                {"K_R", to_json(s.K_R)},
                {"K_bar", to_json(s.K_bar)},
                {"delta2", to_json(s.delta2)},
                {"delta2_constant", to_json(s.delta2_constant)}};
  return {{"datum", datum}, {"saito", saito}};
}

json to_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"version", r.version}, {"type", r.type}, {"seeds", r.seeds}, {"checks", checks}};
}

Report report_from_json(const json& j) {
  Report r;
  try {
    r.version = field(j, "version").get<std::string>();
    r.type = field(j, "type").get<std::string>();
    if (j.contains("seeds")) r.seeds = j.at("seeds");
    for (const auto& c : field(j, "checks")) r.checks.push_back(certificate_from_json(c));
  } catch (const json::exception& e) {
    throw MalformedJson(e.what());
  }
  return r;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace coxsaito
