// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include "coxsaito/free_divisors.hpp"
#include "coxsaito/pipeline.hpp"
#include "coxsaito/tilde_algebra.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>

using namespace coxsaito;

namespace {

using Clock = std::chrono::steady_clock;

struct Gate {
  bool ok = true;
  std::vector<std::string> why;
  void require(bool c, const std::string& what) {
    if (!c) {
      ok = false;
      if (why.size() < 8) why.push_back(what);
    }
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const std::vector<std::string> kFast{"A1", "A2", "A3", "B2", "B3", "I2(5)", "I2(6)", "I2(7)", "I2(8)", "D4", "H3"};
const std::vector<std::string> kLong{"A4", "B4", "F4", "I2(9)", "I2(10)", "I2(12)"};
const std::vector<std::string> kRankSet{"A2", "A3",    "A4",    "B2",    "B3",    "B4", "D4",
                                        "H3", "I2(5)", "I2(6)", "I2(7)", "I2(8)", "F4"};
// types whose heavy suites sit in the fast tier
const std::vector<std::string> kFastAlgebra{"A2", "A3", "B2", "B3", "I2(5)", "I2(6)", "I2(7)", "I2(8)"};

Report run_suites(const std::string& type, std::vector<std::string> suites, Tier tier, Gate& g) {
  RunConfig c;
  c.type = type;
  c.suites = std::move(suites);
  c.tier = tier;
  try {
    auto r = run(c);
    g.require(r.exit_code == kExitPass, type + ": run exit " + std::to_string(r.exit_code));
    auto v = verify_report(r.report);
    g.require(v.ok(), type + ": re-verification " + (v.ok() ? "" : v.failures[0]));
    return r.report;
  } catch (const std::exception& e) {
    g.require(false, type + ": " + e.what());
    return {};
  }
}

const Certificate* find(const Report& r, const std::string& check, const std::string& type) {
  for (const auto& c : r.checks)
    if (c.check == check && c.type == type) return &c;
  return nullptr;
}

bool passes(const Report& r, const std::string& check, const std::string& type, Gate& g) {
  const Certificate* c = find(r, check, type);
  g.require(c != nullptr, type + ": no " + check + " certificate");
  if (!c) return false;
  g.require(c->verdict == Verdict::Pass, type + ": " + check + " " + to_string(c->verdict));
  return c->verdict == Verdict::Pass;
}

bool has_constant(const Certificate* c, const std::string& name) {
  if (!c) return false;
  for (const auto& [k, v] : c->constants)
    if (k == name) return true;
  return false;
}

std::string note(const Certificate* c, const std::string& key) {
  if (!c) return {};
  for (const auto& [k, v] : c->notes)
    if (k == key) return v;
  return {};
}

// classical orders, independent of the catalog code
long long classical_order(const std::string& t) {
  static const std::map<std::string, long long> table{
      {"A1", 2},     {"A2", 6},      {"A3", 24},     {"A4", 120},     {"B2", 8},       {"B3", 48},
      {"B4", 384},   {"D4", 192},    {"H3", 120},    {"F4", 1152},    {"I2(5)", 10},   {"I2(6)", 12},
      {"I2(7)", 14}, {"I2(8)", 16},  {"I2(9)", 18},  {"I2(10)", 20},  {"I2(12)", 24}};
  return table.at(t);
}

// 1. catalog
void catalog(Gate& g) {
  for (const auto* tier_types : {&kFast, &kLong}) {
    const bool fast = tier_types == &kFast;
    auto t0 = Clock::now();
    for (const auto& t : *tier_types) {
      Report r = run_suites(t, {"datum"}, fast ? Tier::Fast : Tier::Long, g);
      passes(r, "datum", t, g);
      g.require(has_constant(find(r, "datum", t), "jacobian_constant"), t + ": c of det J not recorded");
      auto d = build_datum(t);
      int sum = 0;
      for (int m : d.exponents) sum += m;
      g.require(sum == d.hyperplane_count(), t + ": sum m_i != #A");
      const int l = d.rank, h = d.coxeter_number();
      for (int i = 0; i < l; ++i) g.require(d.exponents[i] + d.exponents[l - 1 - i] == h, t + ": duality");
      g.require(d.order == classical_order(t), t + ": group order");
    }
    double s = seconds_since(t0);
    g.require(s < (fast ? 120.0 : 1800.0), std::string(fast ? "fast" : "long") + " catalog too slow");
  }
}

// 2. Delta^2 in the last basic invariant
void theorem9(Gate& g) {
  for (const auto* types : {&kFast, &kLong})
    for (const auto& t : *types) {
      Report r = run_suites(t, {"saito"}, types == &kFast ? Tier::Fast : Tier::Long, g);
      passes(r, "theorem9", t, g);
      auto d = build_datum(t);
      auto s = saito_K(d);
      const int l = d.rank;
      int top = 0;
      for (const auto& term : s.delta2.terms()) top = std::max(top, term.m[l - 1]);
      g.require(top == l, t + ": degree in p_l");
      Monomial lead = Monomial::unit(l - 1, l);
      bool lead_const = false;
      for (const auto& term : s.delta2.terms())
        if (term.m[l - 1] == l) lead_const = term.m == lead && !term.c.is_zero();
      g.require(lead_const, t + ": leading coefficient not constant");
    }
  auto d = build_datum("I2(5)");
  auto s = saito_K(d);
  auto [a, b] = rank_two_coefficients(d, s);
  g.require(b.is_zero(), "I2(5): b != 0");
  // delta2 = 8a p1^5 - 100 p2^2
  Poly p1 = Poly::var(s.r_ring, 0), p2 = Poly::var(s.r_ring, 1);
  g.require(s.delta2 == p1.pow(5) * (Scalar(8) * a) - p2 * p2 * Scalar(100), "I2(5): delta2 shape");
}

void grc(Gate& g, const std::string& suite, bool b3_fixture) {
  auto t0 = Clock::now();
  bool fast_done = false;
  for (const auto& t : kRankSet) {
    if (t == "F4" && !fast_done) {
      g.require(seconds_since(t0) < 300.0, suite + ": fast tier over 5 min");
      fast_done = true;
    }
    const bool lng = t == "A4" || t == "B4" || t == "F4";
    Report r = run_suites(t, {suite}, lng ? Tier::Long : Tier::Fast, g);
    if (!passes(r, suite, t, g)) continue;
    auto d = build_datum(t);
    const Certificate* c = find(r, suite, t);
    g.require(c->identities.size() == static_cast<std::size_t>(d.rank * d.rank), t + ": witness count");
    if (b3_fixture && t == "B3") passes(r, "b3-fixture", t, g);
  }
}

// 5. hrc, drc and the implication chain
void hrc(Gate& g) {
  std::vector<std::string> types;
  for (const auto& t : kFast)
    if (t != "A1") types.push_back(t);
  for (const auto& t : kLong) types.push_back(t);
  for (const auto& t : types) {
    Report r = run_suites(t, {"hrc", "drc", "grc-A"}, Tier::Long, g);
    passes(r, "hrc", t, g);
    passes(r, "drc", t, g);
    passes(r, "equivalence", t, g);
    g.require(!note(find(r, "hrc", t), "pairs").empty(), t + ": hrc pairs not recorded");
  }
}

// 6. tables on both sides
void tables(Gate& g) {
  for (const auto& t : kFastAlgebra) {
    Report r = run_suites(t, {"algebra"}, Tier::Fast, g);
    passes(r, "algebra-arrangement", t, g);
    passes(r, "algebra-discriminant", t, g);
    // direct look at the tables: unit row and symmetry
    auto d = build_datum(t);
    auto s = saito_K(d);
    for (Side side : {Side::Arrangement, Side::Discriminant}) {
      auto mt = minor_table(d, s, side);
      Certificate cert;
      auto gens = generators(d, mt, cert);
      auto m = multiplication_table(d, mt, gens, cert);
      const int l = m.l;
      bool unit = true, comm = true;
      for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) {
          unit = unit && m.c[l - 1][i][j] == (i == j ? Poly::constant(m.ring, Scalar(1)) : Poly(m.ring));
          for (int k = 0; k < l; ++k) comm = comm && m.c[i][j][k] == m.c[j][i][k];
        }
      g.require(unit && comm, t + ": table not unital/commutative");
      g.require(check_table(m).verdict == Verdict::Pass, t + ": associativity");
    }
  }
}

// 7. congruences
void congruences(Gate& g) {
  for (const auto& t : kFastAlgebra) {
    Report r = run_suites(t, {"prop12", "prop27"}, Tier::Fast, g);
    passes(r, "prop12", t, g);
    passes(r, "prop27", t, g);
  }
}

// 8. fibers against stabilizers
void fibers(Gate& g) {
  auto a3 = build_datum("A3");
  auto blocks = block_tables(a3);
  auto at = [&](std::vector<long> v) {
    std::vector<Scalar> x;
    for (long c : v) x.push_back(Scalar(c));
    return fiber_points(blocks, a3, x);
  };
  // ambient coordinates (x1, x2, x3, -x1-x2-x3)
  g.require(at({1, 1, -1}).points == 2, "A3 stratum x1=x2!=x3=x4");
  g.require(at({1, 1, 1}).points == 1, "A3 stratum x1=x2=x3");
  g.require(at({1, 2, 2}).points == 1, "A3 generic mirror point");

  for (const auto& t : {"A2", "B3", "H3", "I2(6)"}) {
    auto d = build_datum(t);
    auto b = block_tables(d);
    // a point of the first mirror, generic otherwise
    std::vector<Scalar> x(d.rank);
    for (int k = 0; k < d.rank; ++k) x[k] = Scalar(3 + 7 * k + k * k);
    Scalar num = d.mirrors[0].evaluate(x), den = d.mirrors[0].evaluate(d.roots[0]);
    for (int k = 0; k < d.rank; ++k) x[k] -= num / den * d.roots[0][k];
    auto f = fiber_points(b, d, x);
    g.require(f.points == 1 && f.pass, std::string(t) + ": generic mirror point");
  }

  for (const auto& t : {"A1^3", "A2xI2(5)", "B2xA1", "A3"}) {
    auto d = build_datum(t);
    auto f = fiber_points(block_tables(d), d, std::vector<Scalar>(d.rank, Scalar(0)));
    g.require(f.points == static_cast<int>(d.blocks.size()), std::string(t) + ": origin");
  }

  for (const auto& t : {"A2", "A3", "B2", "B3", "I2(5)", "I2(8)", "A1^3", "A2xI2(5)"}) {
    auto d = build_datum(t);
    auto pts = fiber_sample_points(d, 10, 20240611);
    g.require(pts.size() >= 10, std::string(t) + ": fewer than 10 points");
    g.require(fiber_check(d, block_tables(d), pts).verdict == Verdict::Pass, std::string(t) + ": fiber check");
  }
}

// 9. free divisors and their lifts
void free_divisors(Gate& g) {
  auto t0 = Clock::now();
  std::vector<std::string> types{"A2", "A3", "B2", "B3", "I2(5)", "I2(6)", "I2(7)", "I2(8)", "H3"};
  for (const auto& t : types) {
    Report r = run_suites(t, {"freediv", "cor55"}, t == "H3" ? Tier::Long : Tier::Fast, g);
    passes(r, "lemma66", t, g);
    passes(r, "solve-B", t, g);
    passes(r, "theorem68", t, g);
    passes(r, "corollary55", t, g);
    g.require(has_constant(find(r, "solve-B", t), "det_B"), t + ": det B not recorded");
    g.require(note(find(r, "theorem68", t), "squarefree") == "yes", t + ": not squarefree");
    g.require(note(find(r, "corollary55", t), "squarefree") == "yes", t + ": lift not squarefree");
    if (t == "A2" || t == "A3") {
      passes(r, "sigma", t, g);
      g.require(!find(r, "sigma", t)->constants.empty() || !find(r, "sigma", t)->identities.empty(),
                t + ": sigma constant not recorded");
    }
  }
  g.require(seconds_since(t0) < 900.0, "free divisors over 15 min");
}

// 10. partial normalization spot checks
void normalization(Gate& g) {
  for (const auto& t : {"I2(5)", "I2(7)", "I2(9)"}) {
    Report r = run_suites(t, {"algebra"}, Tier::Long, g);
    passes(r, "prop56", t, g);
  }
  for (const auto& t : {"A1^2", "A1^3", "A1^4"}) {
    Report r = run_suites(t, {"algebra"}, Tier::Fast, g);
    passes(r, "split", CoxeterType::parse(t).name(), g);
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Gate&)>>> criteria{
      {"catalog", catalog},
      {"delta^2 in p_l", theorem9},
      {"grc arrangement", [](Gate& g) { grc(g, "grc-A", false); }},
      {"grc discriminant + B3 ideal", [](Gate& g) { grc(g, "grc-D", true); }},
      {"hrc / drc / chain", hrc},
      {"multiplication tables", tables},
      {"congruences", congruences},
      {"fibers vs stabilizers", fibers},
      {"free divisors", free_divisors},
      {"normalization spot checks", normalization},
  };
  int failed = 0, n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    Gate g;
    auto t0 = Clock::now();
    try {
      fn(g);
    } catch (const std::exception& e) {
      g.require(false, std::string("exception: ") + e.what());
    }
    std::printf("criterion %2d  %-30s %s  (%.1fs)\n", n, name.c_str(), g.ok ? "PASS" : "FAIL", seconds_since(t0));
    for (const auto& w : g.why) std::printf("              %s\n", w.c_str());
    std::fflush(stdout);
    if (!g.ok) ++failed;
  }
  std::printf("%d/%d criteria pass\n", n - failed, n);
  return failed ? 1 : 0;
}
