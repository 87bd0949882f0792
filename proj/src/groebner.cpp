#include "coxsaito/ideal.hpp"

#include <algorithm>
#include <set>

namespace coxsaito {

namespace {

struct Order {
  const std::vector<int>* w;
  int operator()(const Monomial& a, const Monomial& b) const { return wgrevlex_cmp(a, b, *w); }
};

struct GPoly {
  std::vector<Term> t;  // descending in the order
  int sugar = 0;
};

GPoly to_gpoly(const Poly& p, const Order& ord) {
  GPoly g;
  g.t = p.terms();
  std::sort(g.t.begin(), g.t.end(), [&](const Term& a, const Term& b) { return ord(a.m, b.m) > 0; });
  g.sugar = p.wdegree(*ord.w);
  return g;
}

Poly to_poly(const GPoly& g, const RingPtr& ring) { return Poly::from_terms(ring, g.t); }

void make_monic(GPoly& g) {
  if (g.t.empty() || g.t.front().c.is_one()) return;
  Scalar inv = g.t.front().c.inverse();
  for (auto& x : g.t) x.c *= inv;
}

// f - c*m*g over the tail positions of f starting at `from`
std::vector<Term> sub_scaled(std::vector<Term>& f, std::size_t from, const Scalar& c, const Monomial& m,
                             const std::vector<Term>& g, const Order& ord) {
  std::vector<Term> out;
  out.reserve(f.size() - from + g.size());
  std::size_t i = from, j = 0;
  while (i < f.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(std::move(f[i++]));
      continue;
    }
    Monomial gm = g[j].m * m;
    int cmp = i == f.size() ? -1 : ord(f[i].m, gm);
    if (cmp > 0) {
      out.push_back(std::move(f[i++]));
    } else if (cmp < 0) {
      out.push_back({gm, -(c * g[j++].c)});
    } else {
      Term t = std::move(f[i++]);
      t.c.sub_product(c, g[j++].c);
      if (!t.c.is_zero()) out.push_back(std::move(t));
    }
  }
  return out;
}

// Full reduction of f by basis (only the entries flagged active).
GPoly reduce(GPoly f, const std::vector<GPoly>& basis, const std::vector<bool>& active, const Order& ord,
             Budget* budget) {
  std::vector<Term> rem;
  std::vector<Term> p = std::move(f.t);
  std::size_t pos = 0;
  while (pos < p.size()) {
    const Term& lt = p[pos];
    std::size_t which = basis.size();
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (active[k] && basis[k].t.front().m.divides(lt.m)) {
        which = k;
        break;
      }
    if (which == basis.size()) {
      rem.push_back(std::move(p[pos++]));
      continue;
    }
    const GPoly& g = basis[which];
    Monomial m = lt.m / g.t.front().m;
    Scalar c = lt.c / g.t.front().c;
    f.sugar = std::max(f.sugar, g.sugar + m.wdeg(*ord.w));
    charge(budget, static_cast<long long>(p.size() - pos + g.t.size()));
    p = sub_scaled(p, pos, c, m, g.t, ord);
    pos = 0;
  }
  f.t = std::move(rem);
  return f;
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  int sugar;
  std::size_t id;
};

}  // namespace

IdealBasis groebner_basis(const IdealBasis& ideal, Budget* budget) {
  Order ord{&ideal.weights};
  std::vector<GPoly> basis;
  std::vector<bool> active;
  std::vector<Pair> queue;
  // pairs taken off the queue; the chain criterion may only lean on these
  std::set<std::pair<std::size_t, std::size_t>> resolved;
  std::size_t next_id = 0;

  auto add = [&](GPoly g) {
    make_monic(g);
    std::size_t k = basis.size();
    basis.push_back(std::move(g));
    active.push_back(true);
    const Monomial& lk = basis[k].t.front().m;
    for (std::size_t i = 0; i < k; ++i) {
      if (!active[i]) continue;
      const Monomial& li = basis[i].t.front().m;
      Monomial l = lcm(li, lk);
      int s = std::max(basis[i].sugar + (l / li).wdeg(*ord.w), basis[k].sugar + (l / lk).wdeg(*ord.w));
      queue.push_back({i, k, l, s, next_id++});
    }
    // a new leading monomial dividing an old one retires the old element
    for (std::size_t i = 0; i < k; ++i)
      if (active[i] && lk.divides(basis[i].t.front().m) && !(lk == basis[i].t.front().m)) active[i] = false;
  };

  for (const auto& g : ideal.gens) {
    GPoly gp = reduce(to_gpoly(g, ord), basis, active, ord, budget);
    if (!gp.t.empty()) add(std::move(gp));
  }

  while (!queue.empty()) {
    auto it = std::min_element(queue.begin(), queue.end(), [](const Pair& a, const Pair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      return a.id < b.id;
    });
    Pair pr = *it;
    queue.erase(it);
    resolved.insert({pr.i, pr.j});
    const Monomial& li = basis[pr.i].t.front().m;
    const Monomial& lj = basis[pr.j].t.front().m;
    // product criterion
    if ((li * lj) == pr.lcm) continue;
    // chain criterion
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!basis[k].t.front().m.divides(pr.lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
      if (resolved.count(key(pr.i, k)) && resolved.count(key(pr.j, k))) chain = true;
    }
    if (chain) continue;
    GPoly s;
    s.sugar = pr.sugar;
    {
      std::vector<Term> a = basis[pr.i].t;
      std::vector<Term> scaled_a;
      Monomial mi = pr.lcm / li, mj = pr.lcm / lj;
      for (auto& t : a) scaled_a.push_back({t.m * mi, t.c});
      s.t = sub_scaled(scaled_a, 0, Scalar(1), mj, basis[pr.j].t, ord);
    }
    GPoly r = reduce(std::move(s), basis, std::vector<bool>(basis.size(), true), ord, budget);
    if (!r.t.empty()) add(std::move(r));
  }

  // minimal basis, then interreduce tails
  std::vector<GPoly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& lj = basis[j].t.front().m;
      const Monomial& li = basis[i].t.front().m;
      if (lj.divides(li) && (!(lj == li) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<bool> others(minimal.size(), true);
    others[i] = false;
    GPoly head;
    head.t.push_back(minimal[i].t.front());
    GPoly tail;
    tail.t.assign(minimal[i].t.begin() + 1, minimal[i].t.end());
    tail = reduce(std::move(tail), minimal, others, ord, budget);
    head.t.insert(head.t.end(), tail.t.begin(), tail.t.end());
    head.sugar = minimal[i].sugar;
    minimal[i] = std::move(head);
    make_monic(minimal[i]);
  }
  std::sort(minimal.begin(), minimal.end(),
            [&](const GPoly& a, const GPoly& b) { return ord(a.t.front().m, b.t.front().m) < 0; });

  IdealBasis out;
  out.ring = ideal.ring;
  out.weights = ideal.weights;
  for (const auto& g : minimal) out.gens.push_back(to_poly(g, ideal.ring));
  out.homogeneous = std::all_of(out.gens.begin(), out.gens.end(),
                                [&](const Poly& g) { return g.is_homogeneous(out.weights); });
  out.groebner = true;
  return out;
}

Poly normal_form(const Poly& g, const IdealBasis& gb) {
  if (!gb.groebner) throw std::invalid_argument("normal_form needs a Groebner basis");
  Order ord{&gb.weights};
  std::vector<GPoly> basis;
  for (const auto& b : gb.gens) basis.push_back(to_gpoly(b, ord));
  GPoly r = reduce(to_gpoly(g, ord), basis, std::vector<bool>(basis.size(), true), ord, nullptr);
  return to_poly(r, g.ring());
}

bool ideal_equal(const IdealBasis& a, const IdealBasis& b, const EngineOptions& opt) {
  if (a.homogeneous && b.homogeneous && a.weights == b.weights) {
    for (const auto* pair : {&a, &b}) {
      const IdealBasis& from = pair == &a ? b : a;
      const IdealBasis& into = *pair;
      for (const auto& m : graded_membership_batch(from.gens, into, opt)) {
        if (m.status == MembershipStatus::BudgetExhausted) throw BudgetExhausted();
        if (!m.member()) return false;
      }
    }
    return true;
  }
  IdealBasis ga = groebner_basis(a, opt.budget);
  IdealBasis gb = groebner_basis(IdealBasis::plain(b.ring, b.gens, a.weights), opt.budget);
  for (const auto& g : b.gens)
    if (!normal_form(g, ga).is_zero()) return false;
  for (const auto& g : a.gens)
    if (!normal_form(g, gb).is_zero()) return false;
  return true;
}

}  // namespace coxsaito
