#include "coxsaito/tilde_algebra.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

namespace coxsaito {

namespace {

std::string idx(int i) { return std::to_string(i + 1); }

void require_irreducible(const CoxeterDatum& d, const char* what) {
  if (!d.type.irreducible()) throw std::invalid_argument(std::string(what) + " runs per irreducible factor");
}

bool divisible(const Poly& f, const Poly& g) { return f.is_zero() || f.divide_exact(g).has_value(); }

// f(Sx) for x -> Sx.
Poly act(const Poly& f, const ScalarMatrix& S) {
  std::vector<Poly> images;
  for (int r = 0; r < S.rows; ++r) {
    Poly v(f.ring());
    for (int c = 0; c < S.cols; ++c)
      if (!S(r, c).is_zero()) v += Poly::var(f.ring(), c) * S(r, c);
    images.push_back(v);
  }
  return f.substitute(images);
}

Poly weighted_numerator(const MinorTable& t, int i, const std::vector<Scalar>& lambda) {
  Poly n(t.ring);
  for (int j = 0; j < t.l; ++j)
    if (!lambda[j].is_zero()) n += t.minor(i, j) * lambda[j];
  return n;
}

// The common denominator must not vanish on a component of the defining
// hypersurface.
bool regular_denominator(const CoxeterDatum& d, const MinorTable& t, const Poly& den) {
  if (den.is_zero()) return false;
  if (t.side == Side::Discriminant) return !divisible(den, t.det);
  if (!d.closed_form()) {
    for (const auto& m : d.mirrors)
      if (divisible(den, m)) return false;
    return true;
  }
  IdealBasis both = IdealBasis::graded(t.ring, {t.det, den}, t.weights);
  return krull_dimension(both) <= t.l - 2;
}

std::vector<Scalar> choose_lambda(const CoxeterDatum& d, const MinorTable& t) {
  const int l = t.l;
  if (t.side == Side::Discriminant) {
    std::vector<Scalar> e(l, Scalar(0));
    e[l - 1] = Scalar(1);
    if (regular_denominator(d, t, t.minor(l - 1, l - 1))) return e;
  }
  std::mt19937_64 rng(0x7a1de5ULL + static_cast<unsigned>(l));
  std::uniform_int_distribution<int> dist(1, 9);
  for (int attempt = 0; attempt < 32; ++attempt) {
    std::vector<Scalar> lambda;
    for (int j = 0; j < l; ++j) lambda.push_back(attempt == 0 ? Scalar(j + 1) : Scalar(dist(rng)));
    if (regular_denominator(d, t, weighted_numerator(t, l - 1, lambda))) return lambda;
  }
  throw std::runtime_error("no column combination gives a regular denominator");
}

}  // namespace

std::vector<FractionalGenerator> generators(const CoxeterDatum& d, const MinorTable& t, Certificate& cert) {
  require_irreducible(d, "tilde algebra");
  const int l = t.l;
  auto lambda = choose_lambda(d, t);
  Poly den = weighted_numerator(t, l - 1, lambda);
  std::vector<FractionalGenerator> out;
  for (int i = 0; i < l; ++i) {
    FractionalGenerator g;
    g.index = i;
    g.side = t.side;
    g.num = weighted_numerator(t, i, lambda);
    g.den = den;
    g.lambda = lambda;
    g.degree = t.degrees[i] - t.degrees[l - 1];
    // h_i m^l_j == m^i_j modulo the defining equation, for every j
    for (int j = 0; j < l; ++j) {
      Poly diff = g.num * t.minor(l - 1, j) - t.minor(i, j) * den;
      auto q = diff.is_zero() ? std::optional<Poly>(Poly(t.ring)) : diff.divide_exact(t.det);
      if (!q) throw std::runtime_error("cross identity fails for h_" + idx(i) + " at column " + idx(j));
      if (!diff.is_zero())
        cert.identities.push_back(
            Identity::combination("cross " + idx(i) + "," + idx(j), diff, {t.det}, {*q}));
    }
    out.push_back(std::move(g));
  }
  std::string lam;
  for (int j = 0; j < l; ++j) lam += (j ? "," : "") + lambda[j].to_string();
  cert.note("column_weights", lam);
  return out;
}

MulTable multiplication_table(const CoxeterDatum& d, const MinorTable& t, const std::vector<FractionalGenerator>& g,
                              Certificate& cert, const EngineOptions& opt) {
  require_irreducible(d, "tilde algebra");
  const int l = t.l;
  MulTable m;
  m.side = t.side;
  m.type = t.type;
  m.l = l;
  m.ring = t.ring;
  m.weights = t.weights;
  m.defining = t.det;
  m.relations = t.matrix.transpose();
  for (const auto& gi : g) {
    m.numerators.push_back(gi.num);
    m.degrees.push_back(gi.degree);
  }
  m.lambda = g.front().lambda;
  const Poly& den = m.numerators[l - 1];
  std::vector<Poly> gens;
  for (int k = 0; k < l; ++k) gens.push_back(m.numerators[k] * den);
  gens.push_back(m.defining);
  IdealBasis ideal = IdealBasis::graded(t.ring, gens, t.weights);

  std::vector<Poly> targets;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i + 1 < l; ++i)
    for (int j = i; j + 1 < l; ++j) {
      targets.push_back(m.numerators[i] * m.numerators[j]);
      pairs.emplace_back(i, j);
    }
  auto res = graded_membership_batch(targets, ideal, opt);

  m.c.assign(l, std::vector<std::vector<Poly>>(l, std::vector<Poly>(l, Poly(t.ring))));
  for (int j = 0; j < l; ++j) {
    m.c[l - 1][j][j] = Poly::constant(t.ring, Scalar(1));
    m.c[j][l - 1][j] = Poly::constant(t.ring, Scalar(1));
  }
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    auto [i, j] = pairs[p];
    std::string label = "h_" + idx(i) + " h_" + idx(j);
    if (res[p].status == MembershipStatus::BudgetExhausted) throw BudgetExhausted();
    if (!res[p].member()) throw std::runtime_error("structure constants for " + label + " do not exist");
    const auto& cof = res[p].witness->cofactors();
    for (int k = 0; k < l; ++k) {
      m.c[i][j][k] = cof[k];
      m.c[j][i][k] = cof[k];
    }
    cert.identities.push_back(Identity::combination(label, *res[p].witness));
  }
  return m;
}

Certificate check_table(const MulTable& m) {
  Certificate cert;
  cert.check = std::string("algebra-") + to_string(m.side);
  cert.type = m.type;
  const int l = m.l;
  bool ok = true;
  auto fail = [&](const std::string& k, const std::string& v) {
    ok = false;
    cert.note(k, v);
  };
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j)
      for (int k = 0; k < l; ++k) {
        if (!(m.c[i][j][k] == m.c[j][i][k])) fail("commutative", "c^" + idx(k) + "_" + idx(i) + idx(j));
        const Poly& c = m.c[i][j][k];
        int want = m.degrees[i] + m.degrees[j] - m.degrees[k];
        if (!c.is_zero() && (!c.is_homogeneous(m.weights) || c.wdegree(m.weights) != want))
          fail("homogeneous", "c^" + idx(k) + "_" + idx(i) + idx(j));
      }
  for (int j = 0; j < l; ++j)
    for (int k = 0; k < l; ++k) {
      const Poly& c = m.c[l - 1][j][k];
      bool unit = j == k ? (c.is_constant() && c.constant_term().is_one()) : c.is_zero();
      if (!unit) fail("unit", "row l, column " + idx(j));
    }
  // (h_i h_j) h_k == h_i (h_j h_k)
  int triples = 0;
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j)
      for (int k = 0; k < l; ++k) {
        Poly r(m.ring);
        for (int n = 0; n < l; ++n) {
          Poly a(m.ring);
          for (int q = 0; q < l; ++q) {
            if (!m.c[i][j][q].is_zero() && !m.c[q][k][n].is_zero()) a += m.c[i][j][q] * m.c[q][k][n];
            if (!m.c[j][k][q].is_zero() && !m.c[i][q][n].is_zero()) a -= m.c[j][k][q] * m.c[i][q][n];
          }
          if (!a.is_zero()) r += a * m.numerators[n];
        }
        ++triples;
        if (r.is_zero()) continue;
        auto q = r.divide_exact(m.defining);
        if (!q) {
          fail("associative", "(" + idx(i) + "," + idx(j) + "," + idx(k) + ")");
          continue;
        }
        cert.identities.push_back(Identity::combination(
            "assoc " + idx(i) + idx(j) + idx(k), r, {m.defining}, {*q}));
      }
  cert.note("triples", std::to_string(triples));
  cert.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return cert;
}

Certificate check_generator_invariance(const CoxeterDatum& d, const MulTable& m) {
  Certificate cert;
  cert.check = "generator-invariance";
  cert.type = m.type;
  if (m.side == Side::Discriminant) {
    cert.note("side", "discriminant generators live in R");
    cert.verdict = Verdict::Pass;
    return cert;
  }
  bool ok = true;
  const Poly& den = m.numerators[m.l - 1];
  for (std::size_t s = 0; s < d.simple_reflections.size(); ++s) {
    const auto& S = d.simple_reflections[s];
    Poly sden = act(den, S);
    for (int i = 0; i + 1 < m.l; ++i) {
      Poly r = act(m.numerators[i], S) * den - m.numerators[i] * sden;
      if (!divisible(r, m.defining)) {
        ok = false;
        cert.note("h_" + idx(i), "not invariant under s_" + std::to_string(s + 1));
      }
    }
  }
  cert.note("reflections", std::to_string(d.simple_reflections.size()));
  cert.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return cert;
}

Certificate verify_prop12(const CoxeterDatum& d, const SaitoData& s, const MinorTable& ta) {
  Certificate cert;
  cert.check = "prop12";
  cert.type = d.type.name();
  const int l = d.rank;
  std::vector<Poly> pulled;
  for (int i = 0; i < l; ++i) pulled.push_back(s.delta2.differentiate(i).substitute(s.invariants));
  bool ok = true;
  for (int i = 0; i + 1 < l; ++i)
    for (int j = 0; j < l; ++j) {
      Poly r = pulled[i] * ta.minor(l - 1, j) - pulled[l - 1] * ta.minor(i, j);
      if (r.is_zero()) continue;
      auto q = r.divide_exact(ta.det);
      if (!q) {
        ok = false;
        cert.note("pair " + idx(i) + "," + idx(j), "not congruent modulo Delta");
        continue;
      }
      cert.identities.push_back(Identity::combination("prop12 " + idx(i) + "," + idx(j), r, {ta.det}, {*q}));
    }
  if (pulled[l - 1].is_zero() || divisible(pulled[l - 1], ta.det)) {
    ok = false;
    cert.note("denominator", "d Delta^2 / d p_l vanishes modulo Delta");
  }
  cert.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return cert;
}

Certificate verify_prop27(const CoxeterDatum& d, const SaitoData& s, const MinorTable& ta, const MinorTable& td) {
  Certificate cert;
  cert.check = "prop27";
  cert.type = d.type.name();
  const int l = d.rank;
  bool ok = true;
  // ad(K) o p == ad(J^t) ad(Gamma) ad(J)
  ScalarMatrix adj_gamma = d.gamma;
  {
    Scalar det = determinant(d.gamma);
    ScalarMatrix inv = inverse(d.gamma);
    for (auto& v : inv.a) v *= det;
    adj_gamma = inv;
  }
  PolyMatrix product = ta.adj * adj_gamma * ta.adj.transpose();
  std::vector<Poly> M;
  for (int i = 0; i < l; ++i) {
    M.push_back(td.minor(i, l - 1).substitute(s.invariants));
    if (!(M[i] == product(i, l - 1))) {
      ok = false;
      cert.note("M^" + idx(i) + "_l", "pullback differs from ad(J^t) ad(Gamma) ad(J)");
    }
  }
  for (int i = 0; i + 1 < l; ++i)
    for (int j = 0; j < l; ++j) {
      Poly r = M[i] * ta.minor(l - 1, j) - M[l - 1] * ta.minor(i, j);
      if (r.is_zero()) continue;
      auto q = r.divide_exact(ta.det);
      if (!q) {
        ok = false;
        cert.note("pair " + idx(i) + "," + idx(j), "M^i_l is not h_i M^l_l modulo Delta");
        continue;
      }
      cert.identities.push_back(Identity::combination("prop27 " + idx(i) + "," + idx(j), r, {ta.det}, {*q}));
    }
  cert.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return cert;
}

namespace {

// Points of the fiber algebra k^l / span(relations(x)) with the multiplication
// evaluated at x.
int fiber_count(const MulTable& m, const std::vector<Scalar>& x, std::mt19937_64& rng) {
  const int l = m.l;
  ScalarMatrix rel = m.relations.evaluate(x);
  EchelonForm ef = rref(rel.transpose());
  const int r = static_cast<int>(ef.pivots.size());
  if (r == l) return 0;
  ScalarMatrix P(l, l);
  for (int c = 0; c < r; ++c)
    for (int i = 0; i < l; ++i) P(i, c) = ef.r(c, i);
  int col = r;
  for (int i = 0; i < l; ++i)
    if (std::find(ef.pivots.begin(), ef.pivots.end(), i) == ef.pivots.end()) P(i, col++) = Scalar(1);
  ScalarMatrix Pinv = inverse(P);

  std::vector<std::vector<std::vector<Scalar>>> cx(l, std::vector<std::vector<Scalar>>(l, std::vector<Scalar>(l)));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j)
      for (int k = 0; k < l; ++k) cx[i][j][k] = m.c[i][j][k].is_zero() ? Scalar(0) : m.c[i][j][k].evaluate(x);

  std::uniform_int_distribution<int> dist(-5, 5);
  RingPtr tr = make_ring({"t"});
  int best = 0;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Scalar> a(l);
    for (int i = 0; i < l; ++i) a[i] = Scalar(dist(rng));
    ScalarMatrix L(l, l);
    for (int j = 0; j < l; ++j)
      for (int k = 0; k < l; ++k) {
        Scalar v(0);
        for (int i = 0; i < l; ++i)
          if (!a[i].is_zero()) v.add_product(a[i], cx[i][j][k]);
        L(k, j) = v;
      }
    ScalarMatrix T = Pinv * L * P;
    for (int i = r; i < l; ++i)
      for (int j = 0; j < r; ++j)
        if (!T(i, j).is_zero()) throw std::runtime_error("relations are not an ideal at this point");
    const int q = l - r;
    PolyMatrix A(tr, q, q);
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j) {
        Poly e = Poly::constant(tr, -T(r + i, r + j));
        if (i == j) e += Poly::var(tr, 0);
        A(i, j) = e;
      }
    best = std::max(best, distinct_root_count(determinant(A)));
  }
  return best;
}

}  // namespace

FiberReport fiber_points(const std::vector<MulTable>& blocks, const CoxeterDatum& d, const std::vector<Scalar>& x,
                         std::uint64_t seed) {
  if (blocks.size() != d.blocks.size()) throw std::invalid_argument("one multiplication table per block");
  if (static_cast<int>(x.size()) != d.rank) throw std::invalid_argument("point has wrong length");
  FiberReport rep;
  rep.point = x;
  std::mt19937_64 rng(seed);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].side != Side::Arrangement) throw std::invalid_argument("fibers use the arrangement side");
    const auto& blk = d.blocks[b];
    std::vector<Scalar> local(x.begin() + blk.offset, x.begin() + blk.offset + blk.rank);
    rep.points += fiber_count(blocks[b], local, rng);
  }
  auto st = stabilizer_components(d, x);
  rep.components = st.count();
  for (const auto& c : st.components) rep.types.push_back(c.type);
  rep.pass = rep.points == rep.components;
  return rep;
}

std::vector<long long> ring_hilbert(const std::vector<int>& weights, int max_degree) {
  std::vector<long long> h;
  for (int dg = 0; dg <= max_degree; ++dg)
    h.push_back(static_cast<long long>(monomials_of_wdeg(static_cast<int>(weights.size()), dg, weights).size()));
  return h;
}

std::vector<long long> cokernel_hilbert(const PolyMatrix& m, const std::vector<int>& weights,
                                        const std::vector<int>& row_shift, const std::vector<int>& col_shift,
                                        int max_degree) {
  const int n = static_cast<int>(weights.size());
  std::vector<long long> out;
  for (int dg = 0; dg <= max_degree; ++dg) {
    std::vector<std::unordered_map<Monomial, int, MonomialHash>> index(m.rows());
    int nrows = 0;
    for (int r = 0; r < m.rows(); ++r)
      if (dg - row_shift[r] >= 0)
        for (const auto& mono : monomials_of_wdeg(n, dg - row_shift[r], weights)) index[r][mono] = nrows++;
    LinearSystem sys;
    sys.nrows = nrows;
    for (int c = 0; c < m.cols(); ++c) {
      if (dg - col_shift[c] < 0) continue;
      for (const auto& mu : monomials_of_wdeg(n, dg - col_shift[c], weights)) {
        SparseVec v;
        for (int r = 0; r < m.rows(); ++r)
          for (const auto& term : m(r, c).terms()) {
            auto it = index[r].find(mu * term.m);
            if (it == index[r].end()) throw NonHomogeneous("presentation entry has the wrong degree");
            v.emplace_back(it->second, term.c);
          }
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        if (!v.empty()) sys.columns.push_back(std::move(v));
      }
    }
    int rk = sys.columns.empty() ? 0 : exact_rank(sys);
    out.push_back(nrows - rk);
  }
  return out;
}

Certificate prop56_check(const CoxeterDatum& d, const SaitoData& s) {
  const auto& f = d.type.factors;
  if (f.size() != 1 || f[0].family != 'I' || f[0].n % 2 == 0)
    throw std::invalid_argument("semigroup check applies to I2(k), k odd");
  Certificate cert;
  cert.check = "prop56";
  cert.type = d.type.name();
  const int h = f[0].n;
  const int wl = s.weights[1];
  std::vector<int> row{wl - s.weights[0], 0}, col{s.weights[0] - 2 + wl, s.weights[1] - 2 + wl};
  const int top = 3 * h;
  auto hf = cokernel_hilbert(s.K_R, s.weights, row, col, top);
  auto hr = ring_hilbert(s.weights, top);
  auto at = [&](int dg) { return dg < 0 ? 0LL : hr[dg]; };
  bool ok = true;
  std::string seq;
  for (int dg = 0; dg <= top; ++dg) {
    long long formula = at(dg) + at(dg - (h - 2)) - at(dg - h) - at(dg - 2 * h + 2);
    bool in_semigroup = false;
    for (int b = 0; b * (h - 2) <= dg; ++b)
      if ((dg - b * (h - 2)) % 2 == 0) in_semigroup = true;
    if (hf[dg] != formula) ok = false;
    if (hf[dg] != (in_semigroup ? 1 : 0)) ok = false;
    seq += (dg ? "," : "") + std::to_string(hf[dg]);
  }
  cert.note("hilbert", seq);
  // C[t] has dimension 1 in degree 1; the partial normalization has none
  if (hf[1] != 0) {
    ok = false;
    cert.note("strict", "degree 1 is present");
  }
  // g_1 = M^1_2 / M^2_2 is a multiple of p_2 / p_1
  PolyMatrix adj = adjugate(s.K_R);
  const Poly& num = adj(0, 1);
  const Poly& den = adj(1, 1);
  Poly p1 = Poly::var(s.r_ring, 0), p2 = Poly::var(s.r_ring, 1);
  if (num.size() != 1 || den.size() != 1 || !(num.leading().m == p2.leading().m) ||
      !(den.leading().m == p1.leading().m)) {
    ok = false;
    cert.note("g_1", "not a multiple of p_2/p_1");
  } else {
    cert.constant("g_1 / (p_2/p_1)", num.leading().c / den.leading().c);
  }
  cert.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return cert;
}

Certificate split_check(const CoxeterDatum& d, const SaitoData& s) {
  for (const auto& f : d.type.factors)
    if (f.family != 'A' || f.n != 1) throw std::invalid_argument("split check applies to A1^l");
  Certificate cert;
  cert.check = "split";
  cert.type = d.type.name();
  const int l = d.rank;
  bool ok = true;
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      const Poly& e = s.J(i, j);
      bool want_zero = i != j;
      if (want_zero != e.is_zero()) ok = false;
      if (i == j && (e.size() != 1 || !(e.leading().m == Monomial::unit(i)))) ok = false;
    }
  if (!ok) cert.note("jacobian", "not diagonal in the coordinates");
  const int top = 6;
  std::vector<int> ones(l, 1);
  auto whole = cokernel_hilbert(s.J, ones, std::vector<int>(l, 0), std::vector<int>(l, 1), top);
  std::vector<int> fewer(l - 1, 1);
  auto poly = l > 1 ? ring_hilbert(fewer, top) : std::vector<long long>(top + 1, 0);
  if (l == 1) poly[0] = 1;
  for (int i = 0; i < l; ++i) {
    PolyMatrix one(s.J.ring(), 1, 1);
    one(0, 0) = s.J(i, i);
    auto part = cokernel_hilbert(one, ones, {0}, {1}, top);
    if (part != poly) {
      ok = false;
      cert.note("factor " + idx(i), "not a polynomial ring in l-1 variables");
    }
  }
  std::string seq;
  for (int dg = 0; dg <= top; ++dg) {
    if (whole[dg] != l * poly[dg]) ok = false;
    seq += (dg ? "," : "") + std::to_string(whole[dg]);
  }
  cert.note("hilbert", seq);
  cert.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return cert;
}

}  // namespace coxsaito
