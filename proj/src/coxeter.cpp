#include "coxsaito/coxeter.hpp"

#include "coxsaito/kernels.hpp"
#include "coxsaito/saito.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <regex>
#include <unordered_set>

namespace coxsaito {

// ---------------------------------------------------------------------------
// type names

std::string CoxeterType::Factor::name() const {
  if (family == 'I') return "I2(" + std::to_string(n) + ")";
  return std::string(1, family) + std::to_string(n);
}

std::string CoxeterType::name() const {
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? "x" : "") + factors[i].name();
  return s;
}

int CoxeterType::rank() const {
  int r = 0;
  for (const auto& f : factors) r += f.rank();
  return r;
}

CoxeterType CoxeterType::parse(const std::string& text) {
  static const std::regex token(R"(^([A-Za-z])(\d+)(?:\((\d+)\))?(?:\^(\d+))?$)");
  CoxeterType t;
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty Coxeter type");
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t cut = s.find_first_of("x*", start);
    // an 'x' inside I2(...) cannot occur, digits and parens only
    std::string part = s.substr(start, cut == std::string::npos ? std::string::npos : cut - start);
    std::smatch m;
    if (!std::regex_match(part, m, token)) throw std::invalid_argument("cannot parse Coxeter type '" + text + "'");
    char fam = static_cast<char>(std::toupper(static_cast<unsigned char>(m[1].str()[0])));
    int n = std::stoi(m[2]);
    int power = m[4].matched ? std::stoi(m[4]) : 1;
    Factor f;
    f.family = fam;
    f.n = n;
    switch (fam) {
      case 'E':
        throw UnsupportedType("type " + part + " is out of scope (E6, E7, E8 are not supported)");
      case 'G':
        if (n != 2) throw std::invalid_argument("unknown type " + part);
        f.family = 'I';
        f.n = 6;
        break;
      case 'A':
        if (n < 1) throw std::invalid_argument("A needs rank >= 1");
        break;
      case 'B':
      case 'C':
        if (n < 2) throw std::invalid_argument("B needs rank >= 2");
        f.family = 'B';
        break;
      case 'D':
        if (n < 3) throw std::invalid_argument("D needs rank >= 3");
        break;
      case 'F':
        if (n != 4) throw std::invalid_argument("only F4 exists");
        break;
      case 'H':
        if (n != 3 && n != 4) throw std::invalid_argument("only H3 and H4 exist");
        break;
      case 'I':
        if (n != 2 || !m[3].matched) throw std::invalid_argument("dihedral types are written I2(k)");
        f.n = std::stoi(m[3]);
        if (f.n < 3) throw std::invalid_argument("I2(k) needs k >= 3");
        break;
      default:
        throw std::invalid_argument("unknown type " + part);
    }
    if (fam != 'I' && m[3].matched) throw std::invalid_argument("cannot parse Coxeter type '" + text + "'");
    for (int k = 0; k < power; ++k) t.factors.push_back(f);
    if (cut == std::string::npos) break;
    start = cut + 1;
  }
  if (t.rank() > kMaxVars) throw UnsupportedType("total rank exceeds " + std::to_string(kMaxVars));
  return t;
}

// ---------------------------------------------------------------------------
// small vector helpers

namespace {

using Vec = std::vector<Scalar>;

struct VecHash {
  std::size_t operator()(const Vec& v) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& s : v) h = h * 1000003u ^ s.hash();
    return h;
  }
};

Scalar dot(const Vec& a, const Vec& b) {
  Scalar s;
  for (std::size_t i = 0; i < a.size(); ++i) s.add_product(a[i], b[i]);
  return s;
}

Vec mat_vec(const ScalarMatrix& m, const Vec& v) {
  Vec out(m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out[i].add_product(m(i, j), v[j]);
  return out;
}

Scalar form(const ScalarMatrix& g, const Vec& u, const Vec& v) { return dot(u, mat_vec(g, v)); }

Vec neg(Vec v) {
  for (auto& s : v) s = -s;
  return v;
}

Vec unit(int n, int i, const Scalar& c = Scalar(1)) {
  Vec v(n);
  v[i] = c;
  return v;
}

Scalar tau() { return Scalar::quadratic(mpq_class(1, 2), mpq_class(1, 2), 5); }

// Reflection in alpha: v -> v - 2<v,a>/<a,a> a, as a matrix.
ScalarMatrix reflection(const ScalarMatrix& g, const Vec& a) {
  int n = g.rows;
  Vec ga = mat_vec(g, a);
  Scalar f = Scalar(2) / dot(a, ga);
  ScalarMatrix s = ScalarMatrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(i, j) -= f * a[i] * ga[j];
  return s;
}

long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

long long classical_order(const CoxeterType::Factor& f) {
  switch (f.family) {
    case 'A': return factorial(f.n + 1);
    case 'B': return (1ll << f.n) * factorial(f.n);
    case 'D': return (1ll << (f.n - 1)) * factorial(f.n);
    case 'F': return 1152;
    case 'H': return f.n == 3 ? 120 : 14400;
    default: return 2ll * f.n;
  }
}

std::vector<int> classical_degrees(const CoxeterType::Factor& f) {
  std::vector<int> d;
  switch (f.family) {
    case 'A':
      for (int k = 2; k <= f.n + 1; ++k) d.push_back(k);
      break;
    case 'B':
      for (int k = 1; k <= f.n; ++k) d.push_back(2 * k);
      break;
    case 'D':
      for (int k = 1; k < f.n; ++k) d.push_back(2 * k);
      d.push_back(f.n);
      break;
    case 'F': d = {2, 6, 8, 12}; break;
    case 'H': d = f.n == 3 ? std::vector<int>{2, 6, 10} : std::vector<int>{2, 12, 20, 30}; break;
    default: d = {2, f.n};
  }
  std::stable_sort(d.begin(), d.end());
  return d;
}

// q = 4 cos^2(pi/k), defined over Q(sqrt d) for these k only. Even k use the
// Gram matrix [[2, -q], [-q, 2q]].
std::optional<Scalar> dihedral_q(int k) {
  switch (k) {
    case 3: return Scalar(1);
    case 4: return Scalar(2);
    case 5: return tau() + Scalar(1);
    case 6: return Scalar(3);
    case 8: return Scalar::quadratic(2, 1, 2);
    case 10: return tau() + Scalar(2);
    case 12: return Scalar::quadratic(2, 1, 3);
    default: return std::nullopt;
  }
}

struct Realization {
  ScalarMatrix gram;
  std::vector<Vec> generators;  // roots whose reflections generate W
  std::vector<Vec> extra_roots;  // optional explicit root list
  bool closed_form = false;
};

Realization realize(const CoxeterType::Factor& f) {
  Realization r;
  int n = f.rank();
  switch (f.family) {
    case 'A':
      if (n == 1) {
        r.gram = ScalarMatrix::identity(1);
        r.generators = {unit(1, 0)};
        break;
      }
      // basis e_j = eps_j - eps_{n+1}
      r.gram = ScalarMatrix(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.gram(i, j) = Scalar(i == j ? 2 : 1);
      for (int i = 0; i + 1 < n; ++i) {
        Vec v(n);
        v[i] = Scalar(1);
        v[i + 1] = Scalar(-1);
        r.generators.push_back(v);
      }
      r.generators.push_back(unit(n, n - 1));
      break;
    case 'B':
    case 'D':
      r.gram = ScalarMatrix::identity(n);
      for (int i = 0; i + 1 < n; ++i) {
        Vec v(n);
        v[i] = Scalar(1);
        v[i + 1] = Scalar(-1);
        r.generators.push_back(v);
      }
      if (f.family == 'B') {
        r.generators.push_back(unit(n, n - 1));
      } else {
        Vec v(n);
        v[n - 2] = Scalar(1);
        v[n - 1] = Scalar(1);
        r.generators.push_back(v);
      }
      break;
    case 'F': {
      r.gram = ScalarMatrix::identity(4);
      auto v4 = [](Scalar a, Scalar b, Scalar c, Scalar d) { return Vec{a, b, c, d}; };
      Scalar h = Scalar::fraction(1, 2);
      r.generators = {v4(0, 1, -1, 0), v4(0, 0, 1, -1), v4(0, 0, 0, 1), v4(h, -h, -h, -h)};
      break;
    }
    case 'H': {
      r.gram = ScalarMatrix::identity(n);
      Scalar t = tau(), ti = tau() - Scalar(1);
      if (n == 3) {
        r.generators = {Vec{2, 0, 0}, Vec{-t, ti, Scalar(-1)}, Vec{0, 0, 2}};
      } else {
        // all 120 roots: (+-2,0,0,0), (+-1,+-1,+-1,+-1), even permutations of (0,+-1,+-tau,+-1/tau)
        for (int i = 0; i < 4; ++i) {
          r.extra_roots.push_back(unit(4, i, Scalar(2)));
          r.extra_roots.push_back(unit(4, i, Scalar(-2)));
        }
        for (int s = 0; s < 16; ++s) {
          Vec v(4);
          for (int i = 0; i < 4; ++i) v[i] = Scalar((s >> i) & 1 ? -1 : 1);
          r.extra_roots.push_back(v);
        }
        std::array<int, 4> perm{0, 1, 2, 3};
        Vec base{0, 1, t, ti};
        do {
          int inversions = 0;
          for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) inversions += perm[i] > perm[j];
          if (inversions % 2) continue;
          for (int s = 0; s < 8; ++s) {
            Vec v(4);
            for (int i = 0; i < 4; ++i) {
              Scalar c = base[perm[i]];
              if (perm[i] > 0 && ((s >> (perm[i] - 1)) & 1)) c = -c;
              v[i] = c;
            }
            r.extra_roots.push_back(v);
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
        r.generators = r.extra_roots;
      }
      break;
    }
    default: {
      auto q = dihedral_q(f.n);
      if (!q) {
        r.gram = ScalarMatrix::identity(2);
        r.closed_form = true;
        r.generators = {Vec{0, 1}};
        break;
      }
      // odd k: one root orbit, so equal lengths and <a1, a2> = -2cos(pi/k)
      r.gram = ScalarMatrix(2, 2);
      bool odd = f.n % 2 == 1;
      Scalar off = f.n == 5 ? tau() : *q;
      r.gram(0, 0) = Scalar(2);
      r.gram(0, 1) = -off;
      r.gram(1, 0) = -off;
      r.gram(1, 1) = odd ? Scalar(2) : Scalar(2) * *q;
      r.generators = {unit(2, 0), unit(2, 1)};
    }
  }
  return r;
}

// Generic functional for choosing the positive system; powers of 3 keep
// every signed combination of coordinates away from zero.
Scalar height(const Vec& v) {
  Scalar s, w(1);
  for (const auto& c : v) {
    s.add_product(c, w);
    w *= Scalar(3);
  }
  return s;
}

struct RootSystem {
  std::vector<Vec> positive;
  std::vector<Vec> simple;
};

RootSystem close_roots(const ScalarMatrix& g, const std::vector<Vec>& start) {
  std::vector<ScalarMatrix> refl;
  for (const auto& a : start) refl.push_back(reflection(g, a));
  std::unordered_set<Vec, VecHash> seen;
  std::vector<Vec> all;
  std::vector<Vec> frontier;
  for (const auto& a : start)
    for (const Vec& v : {a, neg(a)})
      if (seen.insert(v).second) {
        all.push_back(v);
        frontier.push_back(v);
      }
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const auto& v : frontier)
      for (const auto& s : refl) {
        Vec w = mat_vec(s, v);
        if (seen.insert(w).second) {
          all.push_back(w);
          next.push_back(w);
        }
      }
    frontier = std::move(next);
  }
  RootSystem rs;
  for (const auto& v : all) {
    int sg = height(v).sign();
    if (sg == 0) throw std::logic_error("root on the height hyperplane");
    if (sg > 0) rs.positive.push_back(v);
  }
  std::unordered_set<Vec, VecHash> pos(rs.positive.begin(), rs.positive.end());
  // a positive root is simple iff its reflection permutes the other positive roots
  for (const auto& a : rs.positive) {
    ScalarMatrix s = reflection(g, a);
    bool simple = true;
    for (const auto& b : rs.positive) {
      if (b == a) continue;
      if (!pos.count(mat_vec(s, b))) {
        simple = false;
        break;
      }
    }
    if (simple) rs.simple.push_back(a);
  }
  return rs;
}

std::vector<Vec> group_closure(const std::vector<ScalarMatrix>& gens, int n) {
  auto flat = [](const ScalarMatrix& m) { return m.a; };
  std::unordered_set<Vec, VecHash> seen;
  std::vector<Vec> out;
  std::vector<ScalarMatrix> frontier{ScalarMatrix::identity(n)};
  seen.insert(flat(frontier[0]));
  out.push_back(flat(frontier[0]));
  while (!frontier.empty()) {
    std::vector<ScalarMatrix> next;
    for (const auto& m : frontier)
      for (const auto& s : gens) {
        ScalarMatrix p = s * m;
        if (seen.insert(p.a).second) {
          out.push_back(p.a);
          next.push_back(std::move(p));
        }
      }
    frontier = std::move(next);
  }
  return out;
}

Poly linear_form(const RingPtr& ring, const Vec& c, int offset = 0) {
  std::vector<Term> t;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c[i].is_zero()) t.push_back({Monomial::unit(offset + static_cast<int>(i)), c[i]});
  return Poly::from_terms(ring, std::move(t));
}

Poly quadratic_form(const RingPtr& ring, const ScalarMatrix& g) {
  Poly q(ring);
  for (int i = 0; i < g.rows; ++i)
    for (int j = 0; j < g.cols; ++j)
      if (!g(i, j).is_zero()) q += Poly::var(ring, i) * Poly::var(ring, j) * g(i, j);
  return q;
}

// Seed linear forms after the root form and the first coordinate; fixed so
// that certificates are reproducible.
const int kSeedTable[] = {3, -1, 4, 1, -5, 9, 2, -6, 5, 3, -5, 8, 9, -7, 9, 3, 2, -3, 8, 4, -6, 2, 6, -4,
                          3, 3, -8, 3, 2, 7, -9, 5, 0, 2, 8, -8, 4, 1, 9, -7, 1, 6, -9, 3, 9, 9, 3, 7};

std::vector<int> seed_form(int index, int n) {
  std::vector<int> s(n);
  for (int i = 0; i < n; ++i) s[i] = kSeedTable[(index * n + i) % (sizeof(kSeedTable) / sizeof(int))];
  if (std::all_of(s.begin(), s.end(), [](int v) { return v == 0; })) s[0] = 1;
  return s;
}

// Orbit of a linear form c under c -> S^T c; for even degree one of +-c suffices.
std::vector<Vec> form_orbit(const Vec& c, const std::vector<ScalarMatrix>& gens, bool up_to_sign) {
  std::vector<ScalarMatrix> gt;
  for (const auto& s : gens) gt.push_back(s.transpose());
  std::unordered_set<Vec, VecHash> seen{c};
  std::vector<Vec> all{c}, frontier{c};
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const auto& v : frontier)
      for (const auto& s : gt) {
        Vec w = mat_vec(s, v);
        if (seen.insert(w).second) {
          all.push_back(w);
          next.push_back(w);
        }
      }
    frontier = std::move(next);
  }
  if (!up_to_sign) return all;
  std::vector<Vec> half;
  std::unordered_set<Vec, VecHash> taken;
  for (const auto& v : all)
    if (!taken.count(neg(v))) {
      taken.insert(v);
      half.push_back(v);
    }
  return half;
}

mpz_class fact(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

// Bombieri (apolar) pairing: sum f_a g_a a!/|a|!.
Scalar apolar(const Poly& f, const Poly& g) {
  Scalar s;
  std::size_t j = 0;
  const auto& gt = g.terms();
  for (const auto& t : f.terms()) {
    while (j < gt.size() && grevlex_cmp(gt[j].m, t.m) > 0) ++j;
    if (j == gt.size()) break;
    if (!(gt[j].m == t.m)) continue;
    mpz_class num = 1;
    for (int i = 0; i < f.nvars(); ++i) num *= fact(t.m[i]);
    s.add_product(t.c * gt[j].c, Scalar(mpq_class(num, fact(t.m.deg))));
  }
  return s;
}

// f minus its apolar projection onto span(basis).
Poly project_off(const Poly& f, const std::vector<Poly>& basis) {
  if (basis.empty()) return f;
  int k = static_cast<int>(basis.size());
  ScalarMatrix gm(k, k);
  std::vector<Scalar> rhs(k);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) gm(i, j) = gm(j, i) = apolar(basis[i], basis[j]);
    rhs[i] = apolar(basis[i], f);
  }
  auto c = solve(gm, rhs);
  if (!c) throw std::logic_error("apolar Gram system inconsistent");
  Poly r = f;
  for (int i = 0; i < k; ++i)
    if (!(*c)[i].is_zero()) r -= basis[i] * (*c)[i];
  return r;
}

// Products of the given invariants with total degree d.
std::vector<Poly> decomposables(const std::vector<Poly>& invs, const std::vector<int>& degs, int d) {
  std::vector<Poly> out;
  int k = static_cast<int>(invs.size());
  if (k == 0) return out;
  for (const auto& m : monomials_of_wdeg(k, d, degs)) {
    Poly p = Poly::constant(invs[0].ring(), Scalar(1));
    for (int i = 0; i < k; ++i)
      if (m[i]) p *= invs[i].pow(m[i]);
    out.push_back(std::move(p));
  }
  return out;
}

struct FactorData {
  CoxeterType::Factor factor;
  Realization real;
  RootSystem roots;
  std::vector<ScalarMatrix> simple;
  std::vector<Vec> elements;
  std::vector<int> degrees;
  std::vector<Poly> classical;
  std::vector<std::vector<int>> seeds;
  Poly delta;
  std::vector<Poly> mirrors;
};

// Invariants of a block built from power sums over orbits of seed forms.
std::vector<Poly> seeded_invariants(const RingPtr& ring, const ScalarMatrix& g, const std::vector<int>& degrees,
                                    const std::vector<ScalarMatrix>& gens, const std::vector<Vec>& positive,
                                    std::vector<std::vector<int>>& seeds_used) {
  int n = g.rows;
  std::vector<Poly> invs{quadratic_form(ring, g)};
  std::vector<int> degs{2};
  seeds_used.push_back({});
  for (std::size_t k = 1; k < degrees.size(); ++k) {
    int d = degrees[k];
    std::vector<Poly> basis = decomposables(invs, degs, d);
    for (std::size_t j = 0; j < invs.size(); ++j)
      if (degs[j] == d) basis.push_back(invs[j]);
    Poly chosen(ring);
    for (int attempt = 0; attempt < 40 && chosen.is_zero(); ++attempt) {
      Vec c(n);
      std::vector<int> record;
      if (attempt == 0 && !positive.empty()) {
        c = mat_vec(g, positive.front());
        record = {-1};
      } else if (attempt <= 1) {
        c = unit(n, 0);
        record = {-2};
      } else {
        record = seed_form(attempt, n);
        for (int i = 0; i < n; ++i) c[i] = Scalar(record[i]);
      }
      auto orbit = form_orbit(c, gens, d % 2 == 0);
      Poly s = kernels::power_sum_parallel(orbit, d, ring);
      Poly r = project_off(s, basis);
      if (!r.is_zero()) {
        chosen = r.monic();
        seeds_used.push_back(record);
      }
    }
    if (chosen.is_zero()) throw std::runtime_error("no seed produced a new invariant in degree " + std::to_string(d));
    invs.push_back(chosen);
    degs.push_back(d);
  }
  return invs;
}

std::vector<Poly> classical_invariants(const CoxeterType::Factor& f, const RingPtr& ring, const Realization& real,
                                       const std::vector<int>& degrees, const std::vector<ScalarMatrix>& gens,
                                       const std::vector<Vec>& positive, std::vector<std::vector<int>>& seeds) {
  int n = f.rank();
  std::vector<Poly> x;
  for (int i = 0; i < n; ++i) x.push_back(Poly::var(ring, i));
  std::vector<Poly> out;
  switch (f.family) {
    case 'A': {
      if (n == 1) return {x[0] * x[0]};
      std::vector<Poly> y = x;
      Poly last(ring);
      for (const auto& v : x) last -= v;
      y.push_back(last);
      for (int k = 2; k <= n + 1; ++k) {
        Poly s(ring);
        for (const auto& v : y) s += v.pow(k);
        out.push_back(s);
      }
      break;
    }
    case 'B': {
      // elementary symmetric functions of the squares
      std::vector<Poly> e(n + 1, Poly(ring));
      e[0] = Poly::constant(ring, Scalar(1));
      for (int i = 0; i < n; ++i) {
        Poly sq = x[i] * x[i];
        for (int k = i + 1; k >= 1; --k) e[k] += e[k - 1] * sq;
      }
      out.assign(e.begin() + 1, e.end());
      break;
    }
    case 'D': {
      for (int k = 1; k < n; ++k) {
        Poly s(ring);
        for (const auto& v : x) s += v.pow(2 * k);
        out.push_back(s * Scalar::fraction(1, 2 * k));
      }
      Poly prod = Poly::constant(ring, Scalar(1));
      for (const auto& v : x) prod *= v;
      out.push_back(prod);
      std::stable_sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) { return a.degree() < b.degree(); });
      break;
    }
    default:
      if (real.closed_form) {
        // p1 = x^2 + y^2, p2 = Re (x + i y)^k
        int k = f.n;
        Poly re(ring);
        mpz_class binom = 1;
        for (int j = 0; j <= k; ++j) {
          if (j % 2 == 0) {
            Scalar c(mpq_class(binom * ((j / 2) % 2 ? -1 : 1)));
            re += Poly::monomial(ring, Monomial::from({k - j, j}), c);
          }
          binom = binom * (k - j) / (j + 1);
        }
        return {x[0] * x[0] + x[1] * x[1], re};
      }
      return seeded_invariants(ring, real.gram, degrees, gens, positive, seeds);
  }
  return out;
}

Poly closed_form_delta(const RingPtr& ring, int k) {
  // Im (x + i y)^k
  Poly im(ring);
  mpz_class binom = k;
  for (int j = 1; j <= k; j += 2) {
    // binom = C(k, j)
    Scalar c(mpq_class(binom * (((j - 1) / 2) % 2 ? -1 : 1)));
    im += Poly::monomial(ring, Monomial::from({k - j, j}), c);
    binom = binom * (k - j) * (k - j - 1) / ((j + 1) * (j + 2));
  }
  return im;
}

FactorData build_factor(const CoxeterType::Factor& f) {
  FactorData fd;
  fd.factor = f;
  fd.real = realize(f);
  int n = f.rank();
  RingPtr ring = indexed_ring("x", n);
  fd.degrees = classical_degrees(f);
  if (fd.real.closed_form) {
    ScalarMatrix s = ScalarMatrix::identity(2);
    s(1, 1) = Scalar(-1);
    fd.simple = {s};
    fd.delta = closed_form_delta(ring, f.n);
  } else {
    fd.roots = close_roots(fd.real.gram, fd.real.generators);
    for (const auto& a : fd.roots.simple) fd.simple.push_back(reflection(fd.real.gram, a));
    fd.elements = group_closure(fd.simple, n);
    fd.delta = Poly::constant(ring, Scalar(1));
    for (const auto& a : fd.roots.positive) {
      fd.mirrors.push_back(linear_form(ring, mat_vec(fd.real.gram, a)));
      fd.delta *= fd.mirrors.back();
    }
  }
  fd.classical =
      classical_invariants(f, ring, fd.real, fd.degrees, fd.simple, fd.roots.positive, fd.seeds);
  return fd;
}

Poly integrate_p1(const Poly& a) {
  std::vector<Term> t;
  for (const auto& term : a.terms()) {
    Monomial m = term.m;
    int e = m[0];
    m.set(0, e + 1);
    t.push_back({m, term.c * Scalar::fraction(1, e + 1)});
  }
  return Poly::from_terms(a.ring(), std::move(t));
}

// Modify p_k by polynomials in lower invariants so that eta_k(Delta) = 0 for
// k > 1: eta_k(Delta)/Delta = sum_H <alpha_H, grad p_k> / lambda_H.
std::vector<Poly> harmonize(const FactorData& fd, const ScalarMatrix& gamma) {
  std::vector<Poly> p = fd.classical;
  const RingPtr& ring = p[0].ring();
  int n = ring->nvars();
  p[0] = quadratic_form(ring, fd.real.gram);
  int hyperplanes = fd.real.closed_form ? fd.factor.n : static_cast<int>(fd.mirrors.size());
  auto log_derivative = [&](const Poly& pk) {
    std::vector<Poly> grad;
    for (int i = 0; i < n; ++i) grad.push_back(pk.differentiate(i));
    Poly total(ring);
    if (fd.real.closed_form) {
      Poly num(ring);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (!gamma(i, j).is_zero()) num += grad[i] * fd.delta.differentiate(j) * gamma(i, j);
      auto q = num.divide_exact(fd.delta);
      if (!q) throw std::logic_error("eta(Delta) not divisible by Delta");
      return *q;
    }
    for (std::size_t h = 0; h < fd.mirrors.size(); ++h) {
      Poly num(ring);
      const Vec& a = fd.roots.positive[h];
      for (int i = 0; i < n; ++i)
        if (!a[i].is_zero()) num += grad[i] * a[i];
      auto q = num.divide_exact(fd.mirrors[h]);
      if (!q) throw std::logic_error("invariant derivative not divisible by its mirror");
      total += *q;
    }
    return total;
  };
  RingPtr r = invariant_ring(static_cast<int>(p.size()));
  for (std::size_t k = 1; k < p.size(); ++k) {
    Poly a = log_derivative(p[k]);
    if (a.is_zero()) continue;
    std::vector<Poly> lower(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(k));
    RingPtr rk = invariant_ring(static_cast<int>(k));
    Poly ar = express_in_invariants(a, lower, rk);
    Poly q = integrate_p1(ar) * Scalar::fraction(-1, 2 * hyperplanes);
    p[k] += q.substitute(lower);
    if (!log_derivative(p[k]).is_zero()) throw std::logic_error("harmonization did not converge");
  }
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------

int CoxeterDatum::hyperplane_count() const {
  int n = 0;
  for (const auto& b : blocks) n += b.hyperplanes;
  return n;
}

int CoxeterDatum::coxeter_number() const {
  if (blocks.size() != 1) throw std::logic_error("Coxeter number of a reducible type");
  return blocks[0].h;
}

std::vector<Poly> basic_invariants(const CoxeterDatum& partial) { return partial.classical; }

CoxeterDatum build_datum(const CoxeterType& t) {
  CoxeterDatum d;
  d.type = t;
  d.rank = t.rank();
  d.ring = indexed_ring("x", d.rank);
  d.gram = ScalarMatrix(d.rank, d.rank);
  d.delta = Poly::constant(d.ring, Scalar(1));
  d.order = 1;
  int offset = 0;
  for (const auto& f : t.factors) {
    FactorData fd = build_factor(f);
    int n = f.rank();
    Block b;
    b.factor = f;
    b.offset = offset;
    b.rank = n;
    b.h = fd.degrees.back();
    b.hyperplanes = fd.real.closed_form ? f.n : static_cast<int>(fd.mirrors.size());
    d.blocks.push_back(b);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d.gram(offset + i, offset + j) = fd.real.gram(i, j);
    ScalarMatrix gamma_f = inverse(fd.real.gram);
    for (const auto& a : fd.roots.positive) {
      Vec full(d.rank);
      for (int i = 0; i < n; ++i) full[offset + i] = a[i];
      d.roots.push_back(full);
    }
    for (const auto& m : fd.mirrors) d.mirrors.push_back(m.rebase(d.ring, offset));
    d.delta *= fd.delta.rebase(d.ring, offset);
    for (const auto& s : fd.simple) {
      ScalarMatrix full = ScalarMatrix::identity(d.rank);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) full(offset + i, offset + j) = s(i, j);
      d.simple_reflections.push_back(full);
    }
    long long fo = fd.real.closed_form ? 2ll * f.n : static_cast<long long>(fd.elements.size());
    d.order *= fo;
    d.degrees.insert(d.degrees.end(), fd.degrees.begin(), fd.degrees.end());
    for (int w : fd.degrees) d.exponents.push_back(w - 1);
    for (const auto& p : fd.classical) d.classical.push_back(p.rebase(d.ring, offset));
    for (const auto& p : harmonize(fd, gamma_f)) d.invariants.push_back(p.rebase(d.ring, offset));
    for (auto s : fd.seeds) d.seeds.push_back(s);
    if (fo != classical_order(f)) throw std::logic_error("group order mismatch for " + f.name());
    // full element list only for irreducible root realizations
    if (t.irreducible()) d.elements = std::move(fd.elements);
    offset += n;
  }
  d.gamma = inverse(d.gram);
  for (const auto& p : d.invariants)
    if (!is_invariant(p, d)) throw std::logic_error("constructed invariant is not W-invariant");
  Poly detj = determinant(jacobian(d.invariants));
  auto c = detj.divide_exact(d.delta);
  if (!c || !c->is_constant() || c->is_zero()) throw std::logic_error("det J is not a constant multiple of Delta");
  d.jacobian_constant = c->constant_term();
  d.radicand = 0;
  for (const auto& p : d.invariants) d.radicand = common_radicand(d.radicand, p.radicand());
  d.radicand = common_radicand(d.radicand, d.delta.radicand());
  return d;
}

bool is_invariant(const Poly& f, const CoxeterDatum& d) {
  for (const auto& s : d.simple_reflections) {
    std::vector<Poly> images;
    for (int i = 0; i < d.rank; ++i) {
      Poly row(d.ring);
      for (int j = 0; j < d.rank; ++j)
        if (!s(i, j).is_zero()) row += Poly::var(d.ring, j) * s(i, j);
      images.push_back(row);
    }
    if (!(f.substitute(images) == f)) return false;
  }
  return true;
}

Poly reynolds_average(const Poly& f, const CoxeterDatum& d) {
  if (d.elements.empty()) throw std::invalid_argument("Reynolds operator needs the group elements of an irreducible root realization");
  Poly s = kernels::orbit_sum_parallel(f, d.elements);
  return s * Scalar(mpq_class(1, static_cast<long>(d.elements.size())));
}

std::string classify_root_system(int rank, int n) {
  if (rank == 1 && n == 1) return "A1";
  if (rank == 2) return n == 3 ? "A2" : n == 4 ? "B2" : "I2(" + std::to_string(n) + ")";
  if (rank == 3 && n == 15) return "H3";
  if (rank == 4 && n == 24) return "F4";
  if (rank == 4 && n == 60) return "H4";
  if (n == rank * (rank + 1) / 2) return "A" + std::to_string(rank);
  if (n == rank * rank) return "B" + std::to_string(rank);
  if (n == rank * (rank - 1)) return "D" + std::to_string(rank);
  return "?";
}

StabilizerSummary stabilizer_components(const CoxeterDatum& d, const std::vector<Scalar>& x) {
  if (static_cast<int>(x.size()) != d.rank) throw std::invalid_argument("point has wrong length");
  StabilizerSummary out;
  // vanishing roots
  std::vector<int> vanish;
  for (std::size_t i = 0; i < d.roots.size(); ++i)
    if (d.mirrors[i].evaluate(x).is_zero()) vanish.push_back(static_cast<int>(i));
  std::vector<int> parent(vanish.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (std::size_t i = 0; i < vanish.size(); ++i)
    for (std::size_t j = i + 1; j < vanish.size(); ++j)
      if (!form(d.gram, d.roots[vanish[i]], d.roots[vanish[j]]).is_zero())
        parent[find(static_cast<int>(i))] = find(static_cast<int>(j));
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < vanish.size(); ++i) groups[find(static_cast<int>(i))].push_back(vanish[i]);
  for (auto& [root, members] : groups) {
    ScalarMatrix m(static_cast<int>(members.size()), d.rank);
    for (std::size_t r = 0; r < members.size(); ++r)
      for (int c = 0; c < d.rank; ++c) m(static_cast<int>(r), c) = d.roots[members[r]][c];
    StabilizerComponent comp;
    comp.roots = members;
    comp.rank = rank(m);
    comp.type = classify_root_system(comp.rank, static_cast<int>(members.size()));
    out.components.push_back(std::move(comp));
  }
  // closed-form dihedral blocks: the origin or a mirror line
  for (const auto& b : d.blocks) {
    if (dihedral_q(b.factor.n) || b.factor.family != 'I') continue;
    Vec local(x.begin() + b.offset, x.begin() + b.offset + 2);
    RingPtr r2 = indexed_ring("x", 2);
    StabilizerComponent comp;
    if (local[0].is_zero() && local[1].is_zero()) {
      comp.rank = 2;
      comp.type = b.factor.name();
    } else if (closed_form_delta(r2, b.factor.n).evaluate(local).is_zero()) {
      comp.rank = 1;
      comp.type = "A1";
    } else {
      continue;
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

}  // namespace coxsaito
