#include "coxsaito/pipeline.hpp"

#include "coxsaito/free_divisors.hpp"

#include <omp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace coxsaito {

namespace {

constexpr std::uint64_t kFiberSeed = 20240611;
constexpr int kFiberPoints = 12;

const std::set<std::string> kHeavy{"algebra", "fibers", "prop27", "freediv", "cor55"};

long long factorial(int n) {
  long long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

long long classical_order(const CoxeterType::Factor& f) {
  switch (f.family) {
    case 'A': return factorial(f.n + 1);
    case 'B': return (1LL << f.n) * factorial(f.n);
    case 'D': return (1LL << (f.n - 1)) * factorial(f.n);
    case 'F': return 1152;
    case 'H': return f.n == 3 ? 120 : 14400;
    default: return 2LL * f.n;
  }
}

int classical_h(const CoxeterType::Factor& f) {
  switch (f.family) {
    case 'A': return f.n + 1;
    case 'B': return 2 * f.n;
    case 'D': return 2 * f.n - 2;
    case 'F': return 12;
    case 'H': return f.n == 3 ? 10 : 30;
    default: return f.n;
  }
}

CoxeterDatum factor_datum(const CoxeterType::Factor& f) {
  CoxeterType t;
  t.factors = {f};
  return build_datum(t);
}

Certificate error_cert(const std::string& check, const std::string& type, const std::exception& e) {
  Certificate c;
  c.check = check;
  c.type = type;
  if (dynamic_cast<const BudgetExhausted*>(&e)) {
    c.verdict = Verdict::Indeterminate;
    c.budget = "exhausted";
  } else {
    c.verdict = Verdict::Fail;
    c.note("error", e.what());
  }
  return c;
}

std::vector<std::string> split_list(const std::vector<std::string>& in) {
  std::vector<std::string> out;
  for (const auto& s : in) {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Per irreducible factor: datum, Saito matrix and both minor tables.
struct FactorContext {
  CoxeterDatum d;
  SaitoData s;
  MinorTable ta, td;
  std::optional<MulTable> arrangement;
};

struct Item {
  int factor = -1;  // -1: the whole product
  std::string suite;
};

Certificate merged_table_cert(Certificate checked, const Certificate& built) {
  for (const auto& id : built.identities) checked.identities.push_back(id);
  for (const auto& n : built.notes) checked.notes.push_back(n);
  return checked;
}

std::vector<Certificate> algebra_suite(FactorContext& f, const EngineOptions& opt) {
  std::vector<Certificate> out;
  for (const MinorTable* t : {&f.ta, &f.td}) {
    Certificate built;
    auto g = generators(f.d, *t, built);
    auto m = multiplication_table(f.d, *t, g, built, opt);
    out.push_back(merged_table_cert(check_table(m), built));
    if (t->side == Side::Arrangement) {
      out.push_back(check_generator_invariance(f.d, m));
      f.arrangement = std::move(m);
    }
  }
  const auto& fac = f.d.type.factors[0];
  if (fac.family == 'I' && fac.n % 2 == 1) out.push_back(prop56_check(f.d, f.s));
  return out;
}

std::vector<Certificate> freediv_suite(const FactorContext& f, bool freediv, bool cor55, const EngineOptions& opt) {
  std::vector<Certificate> out;
  Certificate adj;
  adjoint_divisor(f.td, adj, opt);
  adj.type = f.d.type.name();
  Certificate bc;
  PolyMatrix B = solve_B(f.s, f.td, bc, opt);
  bc.type = f.d.type.name();
  auto data = free_divisor_data(f.d, f.s, f.td, B);
  if (freediv) {
    out.push_back(adj);
    out.push_back(verify_lemma66(f.s, f.td, opt));
    out.push_back(bc);
    out.push_back(certify_theorem68(data, opt));
    if (f.d.rank <= 4) {
      auto ns = normalize_linear_part(f.d, f.s);
      if (ns.shape_ok) out.push_back(antidiagonal_check(ns.data));
    }
    std::string name = f.d.type.name();
    if (name == "A2" || name == "A3") out.push_back(sigma_check(f.d, f.s, data));
  }
  if (cor55) out.push_back(certify_corollary55(data, f.d, f.s, opt));
  for (auto& c : out)
    if (c.type.empty()) c.type = f.d.type.name();
  return out;
}

std::vector<Certificate> run_item(const Item& it, std::vector<FactorContext>& ctx, const CoxeterDatum& whole,
                                  const std::set<std::string>& suites, const EngineOptions& opt) {
  if (it.factor < 0) {
    if (it.suite == "datum") return {catalog_check(whole)};
    if (it.suite == "fibers") {
      std::vector<MulTable> blocks;
      for (auto& f : ctx) {
        if (!f.arrangement) {
          Certificate tmp;
          auto g = generators(f.d, f.ta, tmp);
          f.arrangement = multiplication_table(f.d, f.ta, g, tmp, opt);
        }
        blocks.push_back(*f.arrangement);
      }
      return {fiber_check(whole, blocks, fiber_sample_points(whole, kFiberPoints, kFiberSeed))};
    }
    if (it.suite == "split") return {split_check(whole, saito_K(whole))};
    throw std::logic_error("unknown product item " + it.suite);
  }
  FactorContext& f = ctx[static_cast<std::size_t>(it.factor)];
  const std::string& s = it.suite;
  if (s == "saito") return {saito_check(f.d, f.s), theorem9_check(f.d, f.s)};
  if (s == "grc-A") return {check_minor_table(f.d, f.ta, {true, opt}), check_grc(f.ta, opt)};
  if (s == "grc-D") {
    std::vector<Certificate> out{check_minor_table(f.d, f.td, {true, opt}), check_grc(f.td, opt)};
    if (f.d.type.name() == "B3") out.push_back(b3_fixture_check(f.d, f.s, f.td, opt));
    return out;
  }
  if (s == "drc") return {check_drc(f.d, f.s, opt)};
  if (s == "hrc") {
    std::vector<Certificate> out{check_hrc(f.d, f.s, opt)};
    if (f.d.type.factors[0].family == 'D') out.push_back(check_hrc_dtype(f.d, opt));
    return out;
  }
  if (s == "algebra") return algebra_suite(f, opt);
  if (s == "prop12") return {verify_prop12(f.d, f.s, f.ta)};
  if (s == "prop27") return {verify_prop27(f.d, f.s, f.ta, f.td)};
  if (s == "freediv") return freediv_suite(f, true, suites.count("cor55") > 0, opt);
  if (s == "cor55") return freediv_suite(f, false, true, opt);
  throw std::logic_error("unknown suite " + s);
}

// Suites with no content in rank one.
bool applies(const CoxeterType::Factor& f, const std::string& suite) {
  if (f.rank() > 1) return true;
  return suite == "saito" || suite == "grc-A" || suite == "grc-D";
}

bool all_a1(const CoxeterType& t) {
  for (const auto& f : t.factors)
    if (!(f.family == 'A' && f.n == 1)) return false;
  return t.factors.size() > 1;
}

std::string cache_event(const std::string& dir, const CoxeterDatum& d, const SaitoData& s) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  fs::path path = fs::path(dir) / (file_stem(d.type.name()) + ".json");
  std::string fresh = dump(fixture_json(d, s));
  if (fs::exists(path)) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    json cached;
    try {
      cached = json::parse(ss.str());
    } catch (const json::exception&) {
    }
    if (cached.is_object() && cached.contains("datum") && cached.contains("saito") &&
        dump(json{{"datum", cached["datum"]}, {"saito", cached["saito"]}}) == fresh)
      return d.type.name() + ": cache hit " + path.string();
  }
  std::ofstream(path) << dump(fixture(d.type.name()));
  return d.type.name() + ": cache written " + path.string();
}

}  // namespace

const char* to_string(Tier t) {
  switch (t) {
    case Tier::Fast: return "fast";
    case Tier::Long: return "long";
    default: return "stretch";
  }
}

std::optional<Tier> parse_tier(const std::string& s) {
  if (s == "fast") return Tier::Fast;
  if (s == "long") return Tier::Long;
  if (s == "stretch") return Tier::Stretch;
  return std::nullopt;
}

const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> s{"datum",   "saito",  "grc-A",  "grc-D",  "drc",     "hrc",
                                          "algebra", "fibers", "prop12", "prop27", "freediv", "cor55"};
  return s;
}

Tier required_tier(const CoxeterType::Factor& f, const std::string& suite) {
  bool heavy = kHeavy.count(suite) > 0;
  switch (f.family) {
    case 'A':
      return f.n <= 3 ? Tier::Fast : f.n == 4 ? Tier::Long : Tier::Stretch;
    case 'B':
      return f.n <= 3 ? Tier::Fast : f.n == 4 ? Tier::Long : Tier::Stretch;
    case 'D':
      return f.n > 4 ? Tier::Stretch : heavy ? Tier::Long : Tier::Fast;
    case 'F':
      return heavy ? Tier::Stretch : Tier::Long;
    case 'H':
      if (f.n == 4) return Tier::Stretch;
      return heavy ? Tier::Long : Tier::Fast;
    default:
      return f.n <= 8 ? Tier::Fast : Tier::Long;
  }
}

Certificate catalog_check(const CoxeterDatum& d) {
  Certificate cert;
  cert.check = "datum";
  cert.type = d.type.name();
  bool ok = true;
  auto fail = [&](const std::string& k, const std::string& v) {
    ok = false;
    cert.note(k, v);
  };
  long long order = 1;
  int exp_sum = 0;
  for (std::size_t b = 0; b < d.blocks.size(); ++b) {
    const Block& blk = d.blocks[b];
    std::string tag = blk.factor.name();
    order *= classical_order(blk.factor);
    if (blk.h != classical_h(blk.factor)) fail("h " + tag, std::to_string(blk.h));
    std::vector<int> m(d.exponents.begin() + blk.offset, d.exponents.begin() + blk.offset + blk.rank);
    int sum = 0;
    for (int i = 0; i < blk.rank; ++i) {
      sum += m[i];
      if (m[i] + m[blk.rank - 1 - i] != blk.h) fail("duality " + tag, "m_i + m_(l-i+1) != h at i = " + std::to_string(i + 1));
      if (d.degrees[blk.offset + i] != m[i] + 1) fail("degrees " + tag, "w_i != m_i + 1");
    }
    if (sum != blk.hyperplanes) fail("exponent sum " + tag, std::to_string(sum) + " vs " + std::to_string(blk.hyperplanes));
    exp_sum += sum;
  }
  if (exp_sum != d.hyperplane_count()) fail("exponent sum", "sum m_i != #A");
  if (!d.closed_form() && static_cast<int>(d.mirrors.size()) != d.hyperplane_count())
    fail("mirrors", "mirror count differs from #A");
  if (d.order != order) fail("order", std::to_string(d.order) + " vs classical " + std::to_string(order));
  cert.note("hyperplanes", std::to_string(d.hyperplane_count()));
  cert.note("order", std::to_string(d.order));
  cert.constant("jacobian_constant", d.jacobian_constant);
  cert.identities.push_back(Identity::determinant("det J = c Delta", jacobian(d), d.jacobian_constant, d.delta));
  cert.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return cert;
}

Certificate saito_check(const CoxeterDatum& d, const SaitoData& s) {
  Certificate cert;
  cert.check = "saito";
  cert.type = d.type.name();
  bool ok = s.K_R.is_symmetric();
  if (!ok) cert.note("symmetry", "K_R is not symmetric");
  cert.constant("delta2_constant", s.delta2_constant);
  cert.identities.push_back(
      Identity::equal("Delta^2_R(p) = c Delta^2", s.delta2.substitute(s.invariants), s.delta2_constant, d.delta * d.delta));
  // Euler column: K_R(i, 1) = 2 w_i p_i
  for (int i = 0; i < d.rank; ++i) {
    Poly want = Poly::var(s.r_ring, i) * Scalar(2 * s.weights[i]);
    if (!(s.K_R(i, 0) == want) && d.type.irreducible()) {
      ok = false;
      cert.note("euler row " + std::to_string(i + 1), s.K_R(i, 0).to_string());
    }
  }
  if (d.type.irreducible() && d.type.factors[0].family == 'I') {
    auto [a, b] = rank_two_coefficients(d, s);
    cert.constant("a", a);
    cert.constant("b", b);
    if (d.type.factors[0].n % 2 == 1 && !b.is_zero()) {
      ok = false;
      cert.note("b", "nonzero for odd h");
    }
  }
  cert.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return cert;
}

std::vector<std::vector<Scalar>> fiber_sample_points(const CoxeterDatum& d, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto coord = [&] { return Scalar(static_cast<long>(std::uniform_int_distribution<int>(-9, 9)(rng))); };
  std::vector<std::vector<Scalar>> out;
  out.push_back(std::vector<Scalar>(d.rank, Scalar(0)));
  const int nroots = static_cast<int>(d.roots.size());
  for (int k = 1; static_cast<int>(out.size()) < count; ++k) {
    std::vector<Scalar> x(d.rank);
    for (auto& v : x) v = coord();
    int on = nroots == 0 ? 0 : std::min(k % 3, d.rank);
    std::vector<int> pick;
    while (static_cast<int>(pick.size()) < on) {
      int r = std::uniform_int_distribution<int>(0, nroots - 1)(rng);
      if (std::find(pick.begin(), pick.end(), r) == pick.end()) pick.push_back(r);
    }
    if (!pick.empty()) {
      // subtract sum c_j r_j so that every picked mirror form vanishes
      const int n = static_cast<int>(pick.size());
      ScalarMatrix A(n, n);
      std::vector<Scalar> rhs(n);
      for (int i = 0; i < n; ++i) {
        rhs[i] = d.mirrors[pick[i]].evaluate(x);
        for (int j = 0; j < n; ++j) A(i, j) = d.mirrors[pick[i]].evaluate(d.roots[pick[j]]);
      }
      auto c = solve(A, rhs);
      if (!c) continue;
      for (int j = 0; j < n; ++j)
        for (int t = 0; t < d.rank; ++t) x[t] -= (*c)[j] * d.roots[pick[j]][t];
    }
    out.push_back(std::move(x));
  }
  return out;
}

Certificate fiber_check(const CoxeterDatum& d, const std::vector<MulTable>& blocks,
                        const std::vector<std::vector<Scalar>>& points) {
  Certificate cert;
  cert.check = "fibers";
  cert.type = d.type.name();
  bool ok = true;
  int index = 0;
  for (const auto& x : points) {
    auto r = fiber_points(blocks, d, x, kFiberSeed + static_cast<std::uint64_t>(index));
    std::string pt;
    for (const auto& v : x) pt += (pt.empty() ? "" : ",") + v.to_string();
    std::string types;
    for (const auto& t : r.types) types += (types.empty() ? "" : " ") + t;
    cert.note("(" + pt + ")", std::to_string(r.points) + " points, " + std::to_string(r.components) +
                                  " components" + (types.empty() ? "" : " [" + types + "]"));
    if (!r.pass) ok = false;
    ++index;
  }
  cert.note("sampled", std::to_string(points.size()));
  cert.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return cert;
}

std::vector<MulTable> block_tables(const CoxeterDatum& d, const EngineOptions& opt) {
  std::vector<MulTable> out;
  for (const auto& b : d.blocks) {
    auto bd = factor_datum(b.factor);
    auto s = saito_K(bd);
    auto t = minor_table(bd, s, Side::Arrangement);
    Certificate tmp;
    auto g = generators(bd, t, tmp);
    out.push_back(multiplication_table(bd, t, g, tmp, opt));
  }
  return out;
}

int exit_code(const Report& r) {
  bool open = false;
  for (const auto& c : r.checks) {
    if (c.verdict == Verdict::Fail) return kExitFail;
    if (c.verdict == Verdict::Indeterminate) open = true;
  }
  return open ? kExitIndeterminate : kExitPass;
}

RunResult run(const RunConfig& config) {
  if (config.type.empty()) throw UsageError("--type is required");
  CoxeterType type = CoxeterType::parse(config.type);
  std::vector<std::string> requested = split_list(config.suites);
  for (const auto& s : requested)
    if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end())
      throw UsageError("unknown suite '" + s + "'");

  // tier gate, decided before anything is built
  std::vector<std::string> suites;
  for (const auto& s : all_suites()) {
    bool asked = requested.empty() || std::find(requested.begin(), requested.end(), s) != requested.end();
    if (!asked) continue;
    Tier need = Tier::Fast;
    for (const auto& f : type.factors) need = std::max(need, required_tier(f, s));
    if (need > config.tier) {
      if (!requested.empty())
        throw TierRefusal(type.name() + " " + s + " needs --tier " + to_string(need) + " (requested " +
                          to_string(config.tier) + ")");
      continue;
    }
    suites.push_back(s);
  }
  if (suites.empty()) throw TierRefusal(type.name() + " has no suite in tier " + std::string(to_string(config.tier)) +
                                        "; try --tier stretch");
  std::set<std::string> chosen(suites.begin(), suites.end());

  RunResult result;
  CoxeterDatum whole = build_datum(type);
  std::vector<FactorContext> ctx;
  for (const auto& b : whole.blocks) {
    FactorContext f;
    f.d = factor_datum(b.factor);
    f.s = saito_K(f.d);
    f.ta = minor_table(f.d, f.s, Side::Arrangement);
    f.td = minor_table(f.d, f.s, Side::Discriminant);
    ctx.push_back(std::move(f));
  }
  if (!config.cache.empty()) {
    if (type.irreducible()) {
      result.cache_events.push_back(cache_event(config.cache, ctx[0].d, ctx[0].s));
    } else {
      result.cache_events.push_back(cache_event(config.cache, whole, saito_K(whole)));
      std::set<std::string> seen;
      for (const auto& f : ctx)
        if (seen.insert(f.d.type.name()).second) result.cache_events.push_back(cache_event(config.cache, f.d, f.s));
    }
  }

  // repeated factors are checked once
  std::vector<int> distinct;
  {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < ctx.size(); ++i)
      if (seen.insert(ctx[i].d.type.name()).second) distinct.push_back(static_cast<int>(i));
  }
  std::vector<Item> first, second;
  if (chosen.count("datum")) first.push_back({-1, "datum"});
  for (const auto& s : suites) {
    if (s == "datum" || s == "fibers" || (s == "cor55" && chosen.count("freediv"))) continue;
    for (int i : distinct)
      if (applies(ctx[static_cast<std::size_t>(i)].d.type.factors[0], s)) first.push_back({i, s});
  }
  if (chosen.count("algebra") && all_a1(type)) first.push_back({-1, "split"});
  if (chosen.count("fibers")) second.push_back({-1, "fibers"});

  auto execute = [&](const std::vector<Item>& items) {
    std::vector<std::vector<Certificate>> slots(items.size());
    const int n = static_cast<int>(items.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k < n; ++k) {
      const Item& it = items[static_cast<std::size_t>(k)];
      Budget budget(config.budget_steps);
      EngineOptions opt;
      opt.budget = config.budget_steps >= 0 ? &budget : nullptr;
      std::string tname = it.factor < 0 ? whole.type.name() : ctx[static_cast<std::size_t>(it.factor)].d.type.name();
      try {
        slots[static_cast<std::size_t>(k)] = run_item(it, ctx, whole, chosen, opt);
      } catch (const std::exception& e) {
        slots[static_cast<std::size_t>(k)] = {error_cert(it.suite, tname, e)};
      }
    }
    for (auto& s : slots)
      for (auto& c : s) result.report.checks.push_back(std::move(c));
  };
  execute(first);
  execute(second);

  // hrc => drc => grc on each factor
  if (chosen.count("hrc") && chosen.count("drc") && chosen.count("grc-A")) {
    for (int i : distinct) {
      const std::string name = ctx[static_cast<std::size_t>(i)].d.type.name();
      if (ctx[static_cast<std::size_t>(i)].d.rank < 2) continue;
      const Certificate *h = nullptr, *dr = nullptr, *g = nullptr;
      for (const auto& c : result.report.checks) {
        if (c.type != name) continue;
        if (c.check == "hrc") h = &c;
        if (c.check == "drc") dr = &c;
        if (c.check == "grc-A") g = &c;
      }
      if (h && dr && g) result.report.checks.push_back(equivalence_probe(name, *h, *dr, *g));
    }
  }

  result.report.version = kVersion;
  result.report.type = whole.type.name();
  result.report.seeds = {{"fiber_points", kFiberSeed},
                         {"fiber_count", kFiberPoints},
                         {"column_weights", "0x7a1de5 + rank"},
                         {"invariant_forms", whole.seeds}};
  result.exit_code = exit_code(result.report);
  if (!config.out.empty()) {
    std::ofstream out(config.out);
    if (!out) throw std::runtime_error("cannot write " + config.out);
    out << dump(to_json(result.report));
  }
  return result;
}

std::string file_stem(const std::string& type_name) {
  std::string out;
  for (char c : type_name) {
    if (c == '(') out += '_';
    else if (c == ')') continue;
    else if (c == '^') out += 'p';
    else out += c;
  }
  return out;
}

json fixture(const std::string& type) {
  CoxeterDatum d = build_datum(type);
  SaitoData s = saito_K(d);
  json j = fixture_json(d, s);
  j["version"] = kVersion;
  if (d.type.irreducible() && d.type.factors[0].family == 'I') {
    auto [a, b] = rank_two_coefficients(d, s);
    j["rank_two"] = {{"a", to_json(a)}, {"b", to_json(b)}};
  }
  if (d.type.name() == "B3") {
    RingPtr q = make_ring({"x", "y", "z"});
    json ideal = json::array();
    for (const auto& g : b3_fixture_ideal(q)) ideal.push_back(to_json(g));
    auto td = minor_table(d, s, Side::Discriminant);
    j["classical_matrix"] = {{"coordinates", "x, y, z = e_1, e_2, e_3 of the squares x_i^2"},
                         {"matrix", to_json(b3_classical_matrix(q))},
                         {"ideal", ideal},
                         {"comparison", to_json(b3_fixture_check(d, s, td))}};
  }
  return j;
}

std::string emit_fixture(const std::string& type, const std::string& dir) {
  namespace fs = std::filesystem;
  json j = fixture(type);
  fs::create_directories(dir);
  fs::path path = fs::path(dir) / (file_stem(j["datum"]["type"].get<std::string>()) + ".json");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << dump(j);
  return path.string();
}

VerifyResult verify_report(const Report& r) {
  VerifyResult v;
  for (const auto& c : r.checks)
    for (const auto& id : c.identities) {
      ++v.identities;
      if (!id.verify()) v.failures.push_back(c.check + "/" + c.type + ": " + id.label);
    }
  return v;
}

}  // namespace coxsaito
