#include "coxsaito/saito.hpp"

#include "coxsaito/linsolve.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace coxsaito {

RingPtr invariant_ring(int l) { return indexed_ring("p", l); }

namespace {

std::vector<int> degrees_of(const std::vector<Poly>& invariants) {
  std::vector<int> w;
  for (const auto& p : invariants) w.push_back(p.degree());
  return w;
}

Scalar power(const Scalar& x, int k) {
  Scalar r(1);
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// Homogeneous f of degree d: fit the weighted ansatz at sample points.
Poly express_homogeneous(const Poly& f, const std::vector<Poly>& invariants, const RingPtr& target,
                         std::mt19937_64& rng) {
  const int l = static_cast<int>(invariants.size());
  const int d = f.degree();
  std::vector<int> w = degrees_of(invariants);
  std::vector<Monomial> basis = monomials_of_wdeg(l, d, w);
  if (basis.empty()) throw NotExpressible("no invariant monomials of degree " + std::to_string(d));
  const int n = static_cast<int>(basis.size());
  std::uniform_int_distribution<int> coord(-9, 9);
  LinearSystem sys;
  sys.columns.assign(n, {});
  sys.rhs.assign(1, {});
  int points = 0;
  auto add_points = [&](int count) {
    for (int k = 0; k < count; ++k) {
      std::vector<Scalar> x(f.nvars());
      for (auto& c : x) c = Scalar(coord(rng));
      std::vector<Scalar> pv;
      for (const auto& p : invariants) pv.push_back(p.evaluate(x));
      int row = points++;
      for (int j = 0; j < n; ++j) {
        Scalar v(1);
        for (int i = 0; i < l; ++i)
          if (basis[j][i]) v *= power(pv[i], basis[j][i]);
        if (!v.is_zero()) sys.columns[j].push_back({row, v});
      }
      Scalar fv = f.evaluate(x);
      if (!fv.is_zero()) sys.rhs[0].push_back({row, fv});
    }
    sys.nrows = points;
  };
  add_points(n + 3);
  for (int attempt = 0; attempt < 6; ++attempt) {
    LinearSolution sol = solve_modular(sys);
    if (!sol.x[0]) throw NotExpressible("f is not a polynomial in the invariants");
    if (sol.rank == n) {
      std::vector<Term> terms;
      for (int j = 0; j < n; ++j)
        if (!(*sol.x[0])[j].is_zero()) terms.push_back({basis[j], (*sol.x[0])[j]});
      return Poly::from_terms(target, std::move(terms));
    }
    add_points(n);
  }
  throw NotExpressible("interpolation system stayed singular");
}

}  // namespace

Poly express_in_invariants(const Poly& f, const std::vector<Poly>& invariants, const RingPtr& target) {
  if (target->nvars() != static_cast<int>(invariants.size())) throw std::invalid_argument("target ring size");
  if (f.is_zero()) return Poly(target);
  std::mt19937_64 rng(0x5eed0001ull + static_cast<unsigned long long>(f.degree()));
  Poly g(target);
  std::map<int, std::vector<Term>> parts;
  for (const auto& t : f.terms()) parts[t.m.deg].push_back(t);
  for (auto& [deg, terms] : parts) {
    Poly part = Poly::from_terms(f.ring(), std::move(terms));
    if (deg == 0) {
      g += Poly::constant(target, part.constant_term());
      continue;
    }
    g += express_homogeneous(part, invariants, target, rng);
  }
  if (!(g.substitute(invariants) == f)) throw NotExpressible("resubstitution check failed");
  return g;
}

Poly express_in_invariants(const Poly& f, const CoxeterDatum& d) {
  if (!is_invariant(f, d)) throw NotExpressible("polynomial is not W-invariant");
  return express_in_invariants(f, d.invariants, invariant_ring(d.rank));
}

PolyMatrix jacobian(const CoxeterDatum& d) {
  PolyMatrix j = jacobian(d.invariants);
  auto q = determinant(j).divide_exact(d.delta);
  if (!q || !q->is_constant() || q->is_zero()) throw std::logic_error("det J is not a constant multiple of Delta");
  return j;
}

SaitoData saito_K(const CoxeterDatum& d) { return saito_K(d, d.invariants); }

SaitoData saito_K(const CoxeterDatum& d, const std::vector<Poly>& invariants) {
  SaitoData s;
  s.s_ring = d.ring;
  s.r_ring = invariant_ring(d.rank);
  s.invariants = invariants;
  s.weights = degrees_of(invariants);
  s.J = jacobian(invariants);
  s.K_S = s.J * d.gamma * s.J.transpose();
  const int l = d.rank;
  s.K_R = PolyMatrix(s.r_ring, l, l);
  s.K_bar = PolyMatrix(s.r_ring, l, l);
  for (int i = 0; i < l; ++i)
    for (int j = i; j < l; ++j) {
      Poly e = express_in_invariants(s.K_S(i, j), invariants, s.r_ring);
      std::vector<Term> lin;
      for (const auto& t : e.terms())
        if (t.m.deg == 1) lin.push_back(t);
      Poly lp = Poly::from_terms(s.r_ring, std::move(lin));
      s.K_R(i, j) = e;
      s.K_R(j, i) = e;
      s.K_bar(i, j) = lp;
      s.K_bar(j, i) = lp;
    }
  s.delta2 = determinant(s.K_R);
  // Entries of K_R resubstitute to K_S exactly, so det(K_R) o p = det(J)^2 det(Gamma).
  auto cj = determinant(s.J).divide_exact(d.delta);
  if (!cj || !cj->is_constant() || cj->is_zero()) throw std::logic_error("det J is not a constant multiple of Delta");
  s.delta2_constant = cj->constant_term() * cj->constant_term() * determinant(d.gamma);
  s.change = ScalarMatrix::identity(l);
  for (int i = 0; i < l; ++i) s.change_images.push_back(Poly::var(s.r_ring, i));
  return s;
}

Poly apply_delta(const SaitoData& s, int j, const Poly& f) {
  Poly r(f.ring());
  for (int i = 0; i < s.K_R.rows(); ++i) {
    Poly df = f.differentiate(i);
    if (!df.is_zero()) r += s.K_R(i, j) * df;
  }
  return r;
}

Poly apply_eta(const CoxeterDatum& d, const std::vector<Poly>& invariants, int j, const Poly& f) {
  Poly r(f.ring());
  std::vector<Poly> gp, gf;
  for (int a = 0; a < d.rank; ++a) {
    gp.push_back(invariants[j].differentiate(a));
    gf.push_back(f.differentiate(a));
  }
  for (int a = 0; a < d.rank; ++a)
    for (int b = 0; b < d.rank; ++b)
      if (!d.gamma(a, b).is_zero() && !gf[a].is_zero() && !gp[b].is_zero()) r += gf[a] * gp[b] * d.gamma(a, b);
  return r;
}

namespace {

// Degree of f in variable v, and the coefficient of v^deg (a polynomial).
std::pair<int, Poly> leading_in(const Poly& f, int v) {
  int top = 0;
  for (const auto& t : f.terms()) top = std::max(top, static_cast<int>(t.m[v]));
  std::vector<Term> lead;
  for (const auto& t : f.terms())
    if (t.m[v] == top) {
      Monomial m = t.m;
      m.set(v, 0);
      lead.push_back({m, t.c});
    }
  return {top, Poly::from_terms(f.ring(), std::move(lead))};
}

}  // namespace

Certificate theorem9_check(const CoxeterDatum& d, const SaitoData& s) {
  Certificate cert;
  cert.check = "theorem9";
  cert.type = d.type.name();
  bool ok = true;
  for (std::size_t b = 0; b < d.blocks.size(); ++b) {
    const Block& blk = d.blocks[b];
    PolyMatrix sub(s.r_ring, blk.rank, blk.rank);
    for (int i = 0; i < blk.rank; ++i)
      for (int j = 0; j < blk.rank; ++j) sub(i, j) = s.K_R(blk.offset + i, blk.offset + j);
    Poly det = determinant(sub);
    int top = blk.offset + blk.rank - 1;
    auto [deg, lead] = leading_in(det, top);
    std::string tag = d.blocks.size() > 1 ? "[" + std::to_string(b) + "]" : "";
    cert.note("degree_in_p_l" + tag, std::to_string(deg));
    if (deg != blk.rank || !lead.is_constant() || lead.is_zero()) {
      ok = false;
      cert.note("failure" + tag, "leading coefficient " + lead.to_string());
      continue;
    }
    cert.constant("leading_coefficient" + tag, lead.constant_term());
    cert.identities.push_back(Identity::determinant("block determinant" + tag, sub, Scalar(1), det));
  }
  cert.constant("delta2_constant", s.delta2_constant);
  cert.identities.push_back(Identity::determinant("det K", s.K_R, Scalar(1), s.delta2));
  cert.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return cert;
}

namespace {

bool rational_sqrt(const Scalar& x, Scalar& out) {
  if (!x.is_rational() || sgn(x.a()) < 0) return false;
  mpz_class num = x.a().get_num(), den = x.a().get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  out = Scalar(mpq_class(rn, rd));
  return true;
}

}  // namespace

NormalizedSaito normalize_linear_part(const CoxeterDatum& d, const SaitoData& s) {
  NormalizedSaito out;
  out.data = s;
  if (!d.type.irreducible()) {
    out.failure = "normalization applies to irreducible types";
    return out;
  }
  const int l = d.rank;
  const int top = l - 1;
  const int h = d.degrees.back();
  auto coeff_top = [&](const SaitoData& sd, int i, int j) { return sd.K_bar(i, j).coeff(Monomial::unit(top)); };

  // Self-paired groups of equal degree (w + w = h + 2) are made isotropic.
  ScalarMatrix change = ScalarMatrix::identity(l);
  for (int i = 0; i < l; ++i) {
    int j = i + 1;
    if (j >= l || s.weights[i] != s.weights[j] || 2 * s.weights[i] != h + 2) continue;
    Scalar a = coeff_top(s, i, i), b = coeff_top(s, i, j), c = coeff_top(s, j, j);
    if (a.is_zero() && c.is_zero()) continue;
    // find (u, v) with a u^2 + 2 b u v + c v^2 = 0, twice independent
    Scalar disc = b * b - a * c, r;
    if (!rational_sqrt(disc, r)) {
      out.failure = "p_l-coefficient block [[" + a.to_string() + ", " + b.to_string() + "], [" + b.to_string() +
                    ", " + c.to_string() + "]] at invariants " + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                    " has no rational isotropic basis";
      return out;
    }
    std::vector<std::vector<Scalar>> iso;
    if (!a.is_zero()) {
      iso = {{(-b + r) / a, Scalar(1)}, {(-b - r) / a, Scalar(1)}};
    } else {
      // a = 0: (1, 0) is isotropic; the other solves 2 b u + c v = 0
      iso = {{Scalar(1), Scalar(0)}, {-c, Scalar(2) * b}};
    }
    if (r.is_zero()) {
      out.failure = "degenerate p_l-coefficient block at invariants " + std::to_string(i + 1);
      return out;
    }
    for (int k = 0; k < 2; ++k) {
      change(i + k, i) = iso[k][0];
      change(i + k, j) = iso[k][1];
    }
    ++i;
  }
  out.data.change = change;
  if (!(change == ScalarMatrix::identity(l))) {
    std::vector<Poly> fresh;
    for (int i = 0; i < l; ++i) {
      Poly p(d.ring);
      for (int j = 0; j < l; ++j)
        if (!change(i, j).is_zero()) p += s.invariants[j] * change(i, j);
      fresh.push_back(p);
    }
    ScalarMatrix back = inverse(change);
    SaitoData nd = saito_K(d, fresh);
    nd.change = change;
    nd.change_images.clear();
    for (int i = 0; i < l; ++i) {
      Poly p(nd.r_ring);
      for (int j = 0; j < l; ++j)
        if (!back(i, j).is_zero()) p += Poly::var(nd.r_ring, j) * back(i, j);
      nd.change_images.push_back(p);
    }
    out.data = std::move(nd);
  }

  const SaitoData& n = out.data;
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      Scalar c = coeff_top(n, i, j);
      bool anti = i + j == l - 1;
      if (anti && c.is_zero()) {
        out.failure = "anti-diagonal entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") vanishes";
        return out;
      }
      if (!anti && !c.is_zero()) {
        out.failure = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") carries p_l";
        return out;
      }
      if (i + j > l - 1 && !n.K_bar(i, j).is_zero()) {
        out.failure = "nonzero entry below the anti-diagonal";
        return out;
      }
    }
  for (int i = 0; i < l; ++i) out.alpha.push_back(coeff_top(n, i, l - 1 - i));
  for (int i = 0; i < l; ++i)
    if (!(out.alpha[i] == out.alpha[l - 1 - i])) {
      out.failure = "anti-diagonal is not symmetric";
      return out;
    }
  out.scale = Scalar(2);
  for (int j = 0; j < l; ++j) {
    Poly expect = Poly::var(n.r_ring, j) * Scalar(2 * n.weights[j]);
    if (!(n.K_bar(0, j) == expect)) {
      out.failure = "first row of the linear part is not (2 w_j p_j)";
      return out;
    }
  }
  out.shape_ok = true;
  return out;
}

std::pair<Scalar, Scalar> rank_two_coefficients(const CoxeterDatum& d, const SaitoData& s) {
  if (d.rank != 2 || !d.type.irreducible()) throw std::invalid_argument("rank-two irreducible type expected");
  const int h = d.degrees.back();
  Poly q = s.K_R(1, 1) * Scalar::fraction(1, 2);
  Scalar a = q.coeff(Monomial::from({h - 1, 0}));
  Scalar b = h % 2 == 0 ? q.coeff(Monomial::from({h / 2 - 1, 1})) : Scalar(0);
  Poly rebuilt = Poly::monomial(s.r_ring, Monomial::from({h - 1, 0}), a);
  if (h % 2 == 0) rebuilt += Poly::monomial(s.r_ring, Monomial::from({h / 2 - 1, 1}), b);
  if (!(rebuilt == q)) throw std::logic_error("rank-two Saito entry has unexpected shape: " + q.to_string());
  if (!(s.K_R(0, 0) == Poly::var(s.r_ring, 0) * Scalar(4)) || !(s.K_R(0, 1) == Poly::var(s.r_ring, 1) * Scalar(2 * h)))
    throw std::logic_error("rank-two Saito matrix first row has unexpected shape");
  return {a, b};
}

}  // namespace coxsaito
