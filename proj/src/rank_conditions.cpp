#include "coxsaito/rank_conditions.hpp"

#include <algorithm>
#include <numeric>

namespace coxsaito {

const char* to_string(Side s) { return s == Side::Arrangement ? "arrangement" : "discriminant"; }

namespace {

std::string idx(int i) { return std::to_string(i + 1); }

std::string pair_label(const std::string& stem, int i, int j) { return stem + "^" + idx(i) + "_" + idx(j); }

// Attach witnesses or the non-membership outcome of one membership query.
// Returns the verdict contribution.
Verdict record(Certificate& cert, const std::string& label, const Membership& m, const Poly& target,
               const IdealBasis& ideal) {
  switch (m.status) {
    case MembershipStatus::Member:
      cert.identities.push_back(Identity::combination(label, *m.witness));
      return Verdict::Pass;
    case MembershipStatus::BudgetExhausted:
      cert.note(label, "budget exhausted");
      cert.budget = "exhausted";
      return Verdict::Indeterminate;
    default:
      cert.note(label, "not a member");
      if (m.separator)
        cert.identities.push_back(
            Identity::non_member(label + " (separator)", target, ideal.gens, ideal.weights, *m.separator));
      return Verdict::Fail;
  }
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
  if (a == Verdict::Indeterminate || b == Verdict::Indeterminate) return Verdict::Indeterminate;
  return Verdict::Pass;
}

std::vector<int> exponents_of(const std::vector<Poly>& invariants) {
  std::vector<int> m;
  for (const auto& p : invariants) m.push_back(p.degree() - 1);
  return m;
}

void require_irreducible(const CoxeterDatum& d, const char* what) {
  if (!d.type.irreducible()) throw std::invalid_argument(std::string(what) + " runs per irreducible factor");
}

}  // namespace

MinorTable minor_table(const CoxeterDatum& d, const SaitoData& s, Side side) {
  MinorTable t;
  t.side = side;
  t.type = d.type.name();
  t.l = d.rank;
  if (side == Side::Arrangement) {
    t.ring = d.ring;
    t.weights.assign(d.rank, 1);
    t.matrix = s.J.transpose();
    t.det = determinant(t.matrix);
  } else {
    t.ring = s.r_ring;
    t.weights = s.weights;
    t.matrix = s.K_R;
    t.det = s.delta2;
  }
  t.adj = adjugate(t.matrix);
  std::vector<Poly> all, last;
  for (int i = 0; i < t.l; ++i) {
    int deg = -1;
    for (int j = 0; j < t.l; ++j) {
      const Poly& m = t.adj(i, j);
      if (!m.is_zero() && deg < 0) deg = m.wdegree(t.weights);
      all.push_back(m);
      if (i == t.l - 1) last.push_back(m);
    }
    t.degrees.push_back(deg);
  }
  t.fitting = IdealBasis::graded(t.ring, all, t.weights);
  t.last_row = IdealBasis::graded(t.ring, last, t.weights);
  return t;
}

Certificate check_minor_table(const CoxeterDatum& d, const MinorTable& t, const TableChecks& opt) {
  Certificate cert;
  cert.check = std::string("minor-table-") + to_string(t.side);
  cert.type = t.type;
  bool ok = true;
  auto fail = [&](const std::string& key, const std::string& why) {
    ok = false;
    cert.note(key, why);
  };

  PolyMatrix cramer = t.matrix * t.adj;
  PolyMatrix expect = t.det * PolyMatrix::identity(t.ring, t.l);
  if (!(cramer == expect)) fail("cramer", "matrix * adjugate != det * Id");
  PolyMatrix cramer2 = t.adj * t.matrix;
  if (!(cramer2 == expect)) fail("cramer", "adjugate * matrix != det * Id");

  // degree table
  int sum_m = 0;
  for (int w : d.degrees) sum_m += w - 1;
  std::string table;
  for (int i = 0; i < t.l; ++i) {
    table += (i ? "," : "") + std::to_string(t.degrees[i]);
    for (int j = 0; j < t.l; ++j) {
      const Poly& m = t.minor(i, j);
      // over R the degree of M^i_j is deg Delta^2 - deg K^i_j
      int want = t.side == Side::Arrangement ? t.degrees[i]
                                             : t.det.wdegree(t.weights) - (t.weights[i] + t.weights[j] - 2);
      if (!m.is_zero() && (!m.is_homogeneous(t.weights) || m.wdegree(t.weights) != want))
        fail("degrees", "minor " + pair_label("m", i, j) + " has the wrong degree");
    }
    if (t.side == Side::Arrangement && t.degrees[i] != sum_m - (d.degrees[i] - 1))
      fail("degrees", "D_" + idx(i) + " != sum m - m_" + idx(i));
  }
  cert.note("degrees", table);

  // last-row minors linearly independent over the field
  {
    std::vector<Monomial> monos;
    for (int j = 0; j < t.l; ++j)
      for (const auto& term : t.minor(t.l - 1, j).terms())
        if (std::find(monos.begin(), monos.end(), term.m) == monos.end()) monos.push_back(term.m);
    ScalarMatrix c(t.l, static_cast<int>(monos.size()));
    for (int j = 0; j < t.l; ++j)
      for (std::size_t k = 0; k < monos.size(); ++k) c(j, static_cast<int>(k)) = t.minor(t.l - 1, j).coeff(monos[k]);
    int r = rank(c);
    cert.note("last_row_rank", std::to_string(r));
    if (d.type.irreducible() && r != t.l) fail("last_row_rank", "last-row minors are linearly dependent");
  }

  if (t.side == Side::Arrangement && !d.closed_form()) {
    // m^1 = c * Gamma grad Delta
    std::vector<Poly> g;
    for (int k = 0; k < t.l; ++k) g.push_back(d.delta.differentiate(k));
    std::optional<Scalar> c;
    for (int j = 0; j < t.l && ok; ++j) {
      Poly v(t.ring);
      for (int k = 0; k < t.l; ++k)
        if (!d.gamma(j, k).is_zero()) v += g[k] * d.gamma(j, k);
      const Poly& m = t.minor(0, j);
      if (v.is_zero() != m.is_zero()) {
        fail("first_row", "m^1 is not proportional to Gamma grad Delta");
        break;
      }
      if (v.is_zero()) continue;
      Scalar r = m.leading().c / v.leading().c;
      if (c && !(*c == r)) fail("first_row", "proportionality constant differs across j");
      c = r;
      if (!(m == v * r)) fail("first_row", "m^1_" + idx(j) + " is not a multiple of (Gamma grad Delta)_" + idx(j));
      else
        cert.identities.push_back(Identity::equal("first row " + idx(j), m, r, v));
    }
    if (c) cert.constant("first_row_constant", *c);
  } else if (t.side == Side::Arrangement) {
    cert.note("first_row", "closed-form dihedral realization: proportionality checked against grad Delta");
    std::optional<Scalar> c;
    for (int j = 0; j < t.l; ++j) {
      Poly v = d.delta.differentiate(j);
      const Poly& m = t.minor(0, j);
      if (v.is_zero() || m.is_zero()) continue;
      Scalar r = m.leading().c / v.leading().c;
      if (!(m == v * r) || (c && !(*c == r))) fail("first_row", "m^1 is not proportional to grad Delta");
      c = r;
    }
    if (c) cert.constant("first_row_constant", *c);
  }

  cert.identities.push_back(Identity::determinant("det", t.matrix, Scalar(1), t.det));

  if (opt.with_grade) {
    try {
      int dim = krull_dimension(t.fitting, opt.engine.budget);
      cert.note("fitting_dimension", std::to_string(dim));
      if (dim > t.l - 2) fail("grade", "Fitting ideal has grade < 2");
    } catch (const BudgetExhausted&) {
      cert.note("grade", "budget exhausted");
      cert.budget = "exhausted";
    }
  }
  cert.verdict = ok ? (cert.budget == "ok" ? Verdict::Pass : Verdict::Indeterminate) : Verdict::Fail;
  return cert;
}

Certificate check_grc(const MinorTable& t, const EngineOptions& opt) {
  Certificate cert;
  cert.check = t.side == Side::Arrangement ? "grc-A" : "grc-D";
  cert.type = t.type;
  std::vector<Poly> targets;
  for (int i = 0; i < t.l; ++i)
    for (int j = 0; j < t.l; ++j) targets.push_back(t.minor(i, j));
  auto res = graded_membership_batch(targets, t.last_row, opt);
  Verdict v = Verdict::Pass;
  const char* stem = t.side == Side::Arrangement ? "m" : "M";
  for (int i = 0; i < t.l; ++i)
    for (int j = 0; j < t.l; ++j) {
      std::size_t k = static_cast<std::size_t>(i * t.l + j);
      v = combine(v, record(cert, pair_label(stem, i, j), res[k], targets[k], t.last_row));
    }
  cert.note("witnesses", std::to_string(cert.identities.size()));
  cert.verdict = v;
  return cert;
}

Certificate check_drc(const CoxeterDatum& d, const SaitoData& s, const EngineOptions& opt) {
  require_irreducible(d, "drc");
  Certificate cert;
  cert.check = "drc";
  cert.type = d.type.name();
  const int l = d.rank;
  Verdict v = Verdict::Pass;
  std::vector<Poly> top;
  for (int k = 0; k < l; ++k) top.push_back(s.invariants[l - 1].differentiate(k));
  for (int j = 0; j + 1 < l; ++j) {
    std::vector<Poly> gens;
    for (int k = 0; k < l; ++k) gens.push_back(s.invariants[j].differentiate(k));
    for (const auto& p : s.invariants) gens.push_back(p);
    IdealBasis ideal = IdealBasis::graded(d.ring, gens);
    auto res = graded_membership_batch(top, ideal, opt);
    for (int k = 0; k < l; ++k)
      v = combine(v, record(cert, "d_" + idx(k) + " p_" + idx(l - 1) + " in J^" + idx(j) + "+F", res[k], top[k],
                            ideal));
  }
  cert.verdict = v;
  return cert;
}

std::vector<Poly> hessian_action(const CoxeterDatum& d, const std::vector<Poly>& invariants, int i, int j) {
  const int l = d.rank;
  PolyMatrix h = hessian(invariants[i]);
  std::vector<Poly> g(l, Poly(d.ring));
  for (int a = 0; a < l; ++a)
    for (int b = 0; b < l; ++b)
      if (!d.gamma(a, b).is_zero()) g[a] += invariants[j].differentiate(b) * d.gamma(a, b);
  std::vector<Poly> v(l, Poly(d.ring));
  for (int a = 0; a < l; ++a)
    for (int b = 0; b < l; ++b)
      if (!h(a, b).is_zero() && !g[b].is_zero()) v[a] += h(a, b) * g[b];
  return v;
}

Certificate check_hrc(const CoxeterDatum& d, const SaitoData& s, const EngineOptions& opt) {
  require_irreducible(d, "hrc");
  Certificate cert;
  cert.check = "hrc";
  cert.type = d.type.name();
  const int l = d.rank;
  auto m = exponents_of(s.invariants);
  const int wl = s.invariants.back().degree();
  IdealBasis F = IdealBasis::graded(d.ring, s.invariants);
  EngineOptions mopt = opt;
  if (mopt.method == SolveMethod::Auto) mopt.method = SolveMethod::Modular;  // separators come from this path
  Verdict overall = Verdict::Pass;
  std::string pairs;
  for (int j = 0; j < l; ++j) {
    Verdict vj = Verdict::Fail;
    bool any_candidate = false;
    for (int i = 0; i < l && vj != Verdict::Pass; ++i) {
      if (m[i] + m[j] != wl) continue;
      any_candidate = true;
      auto v = hessian_action(d, s.invariants, i, j);
      std::vector<Poly> entries;
      std::vector<int> where;
      for (int k = 0; k < l; ++k)
        if (!v[k].is_zero()) {
          entries.push_back(v[k]);
          where.push_back(k);
        }
      if (entries.empty()) continue;
      auto res = graded_membership_batch(entries, F, mopt);
      for (std::size_t e = 0; e < entries.size(); ++e) {
        if (res[e].status == MembershipStatus::BudgetExhausted) {
          vj = combine(vj == Verdict::Fail ? Verdict::Pass : vj, Verdict::Indeterminate);
          cert.budget = "exhausted";
          continue;
        }
        if (res[e].status == MembershipStatus::NonMember) {
          std::string label = "Hess(p_" + idx(i) + ")(eta_" + idx(j) + ")_" + idx(where[e]) + " not in F";
          if (res[e].separator)
            cert.identities.push_back(Identity::non_member(label, entries[e], F.gens, F.weights, *res[e].separator));
          else
            cert.note(label, "exact rank");
          pairs += (pairs.empty() ? "" : ";") + std::string("(") + idx(i) + "," + idx(j) + ")@" + idx(where[e]);
          vj = Verdict::Pass;
          break;
        }
      }
    }
    if (!any_candidate) cert.note("j=" + idx(j), "no i with m_i + m_j = w_l");
    if (vj != Verdict::Pass) cert.note("j=" + idx(j), "every candidate lies in F Omega^1");
    overall = combine(overall, vj);
  }
  cert.note("pairs", pairs);
  cert.verdict = overall;
  return cert;
}

Certificate check_hrc_dtype(const CoxeterDatum& d, const EngineOptions& opt) {
  require_irreducible(d, "hrc");
  if (d.type.factors[0].family != 'D') throw std::invalid_argument("p-hat route applies to D types");
  Certificate cert;
  cert.check = "hrc-dtype";
  cert.type = d.type.name();
  const int l = d.rank;
  const auto& p = d.classical;  // power sums and the product, Gamma = Id
  int prod = -1;
  for (int k = 0; k < l; ++k)
    if (p[k].size() == 1) prod = k;
  const int top = l - 1;
  std::vector<Poly> x;
  for (int k = 0; k < l; ++k) x.push_back(Poly::var(d.ring, k));
  Poly hat(d.ring);
  for (int j = 0; j < l; ++j) {
    Poly t = Poly::constant(d.ring, Scalar(1));
    for (int i = 0; i < l; ++i)
      if (i != j) t *= x[i] * x[i];
    hat += t;
  }
  bool ok = true;
  // 2 D(p_l) o Hess(p_l) = D(p-hat)
  auto hv = hessian_action(d, p, prod, prod);
  for (int k = 0; k < l; ++k) {
    Poly lhs = hv[k] * Scalar(2);
    Poly rhs = hat.differentiate(k);
    if (!(lhs == rhs)) {
      ok = false;
      cert.note("hessian identity", "fails at coordinate " + idx(k));
    } else {
      cert.identities.push_back(Identity::equal("2 Hess(p_prod) grad p_prod = grad p-hat, entry " + idx(k), lhs,
                                                Scalar(1), rhs));
    }
  }
  // p_top - c p-hat in F^2
  std::vector<Poly> gens{hat};
  for (int a = 0; a < l; ++a)
    for (int b = a; b < l; ++b) gens.push_back(p[a] * p[b]);
  IdealBasis sq = IdealBasis::graded(d.ring, gens);
  auto mem = graded_membership(p[top], sq, opt);
  if (mem.status == MembershipStatus::BudgetExhausted) {
    cert.verdict = Verdict::Indeterminate;
    cert.budget = "exhausted";
    return cert;
  }
  if (!mem.member()) {
    cert.note("p-hat", "top invariant is not c * p-hat modulo F^2");
    cert.verdict = Verdict::Fail;
    return cert;
  }
  Poly c = mem.witness->cofactors().front();
  if (!c.is_constant() || c.is_zero()) ok = false;
  else
    cert.constant("p_top = c * p-hat mod F^2", c.constant_term());
  cert.identities.push_back(Identity::combination("top invariant modulo F^2", *mem.witness));
  // power sums: Hess(p_a) grad p_b = const * grad p_top when a + b = l
  for (int j = 0; j < l; ++j) {
    if (j == prod) continue;
    int b = p[j].degree() / 2;
    int a = l - b;
    int i = -1;
    for (int k = 0; k < l; ++k)
      if (k != prod && p[k].degree() == 2 * a) i = k;
    auto v = hessian_action(d, p, i, j);
    Scalar r(2 * a - 1);
    for (int k = 0; k < l; ++k) {
      Poly g = p[top].differentiate(k);
      if (!(v[k] == g * r)) {
        ok = false;
        cert.note("power sums", "Hess(p_" + idx(i) + ")(eta_" + idx(j) + ") is not a multiple of d p_top");
        break;
      }
    }
    cert.note("pair j=" + idx(j), "i=" + idx(i));
  }
  // some entry of d p_top is not in F
  IdealBasis F = IdealBasis::graded(d.ring, p);
  EngineOptions mopt = opt;
  if (mopt.method == SolveMethod::Auto) mopt.method = SolveMethod::Modular;
  bool found = false;
  for (int k = 0; k < l && !found; ++k) {
    Poly g = p[top].differentiate(k);
    auto r = graded_membership(g, F, mopt);
    if (r.status == MembershipStatus::NonMember) {
      found = true;
      if (r.separator)
        cert.identities.push_back(Identity::non_member("d_" + idx(k) + " p_top not in F", g, F.gens, F.weights,
                                                       *r.separator));
      else
        cert.note("d_" + idx(k) + " p_top not in F", "exact rank");
    }
  }
  if (!found) ok = false;
  cert.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return cert;
}

Certificate equivalence_probe(const std::string& type, const Certificate& hrc, const Certificate& drc,
                              const Certificate& grc) {
  Certificate cert;
  cert.check = "equivalence";
  cert.type = type;
  cert.note("hrc", to_string(hrc.verdict));
  cert.note("drc", to_string(drc.verdict));
  cert.note("grc", to_string(grc.verdict));
  bool broken = (hrc.verdict == Verdict::Pass && drc.verdict == Verdict::Fail) ||
                (drc.verdict == Verdict::Pass && grc.verdict == Verdict::Fail);
  bool open = hrc.verdict == Verdict::Indeterminate || drc.verdict == Verdict::Indeterminate ||
              grc.verdict == Verdict::Indeterminate;
  cert.verdict = broken ? Verdict::Fail : open ? Verdict::Indeterminate : Verdict::Pass;
  return cert;
}

}  // namespace coxsaito
