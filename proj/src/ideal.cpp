#include "coxsaito/ideal.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace coxsaito {

namespace {

std::vector<int> ones(const RingPtr& ring) { return std::vector<int>(ring ? ring->nvars() : 0, 1); }

}  // namespace

IdealBasis IdealBasis::graded(RingPtr ring, std::vector<Poly> gens, std::vector<int> weights) {
  IdealBasis b = plain(std::move(ring), std::move(gens), std::move(weights));
  for (const auto& g : b.gens)
    if (!g.is_homogeneous(b.weights)) throw NonHomogeneous("generator is not weighted-homogeneous: " + g.to_string());
  b.homogeneous = true;
  return b;
}

IdealBasis IdealBasis::plain(RingPtr ring, std::vector<Poly> gens, std::vector<int> weights) {
  IdealBasis b;
  b.ring = std::move(ring);
  b.weights = weights.empty() ? ones(b.ring) : std::move(weights);
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    if (!same_ring(g.ring(), b.ring)) throw ContextMismatch();
    b.gens.push_back(std::move(g));
  }
  b.homogeneous = std::all_of(b.gens.begin(), b.gens.end(), [&](const Poly& g) { return g.is_homogeneous(b.weights); });
  return b;
}

IdealBasis IdealBasis::operator+(const IdealBasis& o) const {
  std::vector<Poly> all = gens;
  all.insert(all.end(), o.gens.begin(), o.gens.end());
  return plain(ring, std::move(all), weights);
}

bool verify_combination(const Poly& target, const std::vector<Poly>& generators, const std::vector<Poly>& cofactors) {
  if (generators.size() != cofactors.size()) return false;
  Poly s(target.ring());
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (!cofactors[i].is_zero()) s += cofactors[i] * generators[i];
  return s == target;
}

Witness::Witness(Poly target, std::vector<Poly> generators, std::vector<Poly> cofactors)
    : target_(std::move(target)), generators_(std::move(generators)), cofactors_(std::move(cofactors)) {
  if (!verify()) throw std::logic_error("witness does not verify");
}

bool Witness::verify() const { return verify_combination(target_, generators_, cofactors_); }

bool verify_separator(const Poly& target, const std::vector<Poly>& generators, const std::vector<int>& weights,
                      const Separator& sep) {
  std::unordered_map<Monomial, Scalar, MonomialHash> y;
  for (const auto& [m, c] : sep.functional) y[m] = c;
  auto apply = [&](const Poly& f, const Monomial& shift) {
    Scalar s;
    for (const auto& t : f.terms())
      if (auto it = y.find(t.m * shift); it != y.end()) s.add_product(t.c, it->second);
    return s;
  };
  if (!target.is_homogeneous(weights) || target.wdegree(weights) != sep.degree) return false;
  if (!apply(target, Monomial{}).is_one()) return false;
  int n = target.nvars();
  for (const auto& g : generators) {
    int dg = g.wdegree(weights);
    for (const auto& mu : monomials_of_wdeg(n, sep.degree - dg, weights))
      if (!apply(g, mu).is_zero()) return false;
  }
  return true;
}

std::vector<Membership> graded_membership_batch(const std::vector<Poly>& targets, const IdealBasis& ideal,
                                                const EngineOptions& opt) {
  if (!ideal.homogeneous) throw NonHomogeneous("graded membership needs a homogeneous ideal");
  const auto& w = ideal.weights;
  const int n = ideal.ring->nvars();
  std::vector<Membership> out(targets.size());
  std::map<int, std::vector<std::size_t>> by_degree;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const Poly& g = targets[t];
    if (!g.is_homogeneous(w)) throw NonHomogeneous("target is not weighted-homogeneous: " + g.to_string());
    if (g.is_zero()) {
      std::vector<Poly> zeros(ideal.gens.size(), Poly(ideal.ring));
      out[t].status = MembershipStatus::Member;
      out[t].witness.emplace(g, ideal.gens, std::move(zeros));
      continue;
    }
    by_degree[g.wdegree(w)].push_back(t);
  }

  for (const auto& [d, idx] : by_degree) {
    std::vector<Monomial> rows = monomials_of_wdeg(n, d, w);
    std::unordered_map<Monomial, int, MonomialHash> row_of;
    for (std::size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = static_cast<int>(r);
    LinearSystem sys;
    sys.nrows = static_cast<int>(rows.size());
    struct Unknown {
      std::size_t gen;
      Monomial mu;
    };
    std::vector<Unknown> unknowns;
    for (std::size_t i = 0; i < ideal.gens.size(); ++i) {
      const Poly& g = ideal.gens[i];
      for (const auto& mu : monomials_of_wdeg(n, d - g.wdegree(w), w)) {
        SparseVec col;
        for (const auto& t : g.terms()) col.push_back({row_of.at(t.m * mu), t.c});
        std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        sys.columns.push_back(std::move(col));
        unknowns.push_back({i, mu});
      }
    }
    for (std::size_t t : idx) {
      SparseVec col;
      for (const auto& term : targets[t].terms()) col.push_back({row_of.at(term.m), term.c});
      std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      sys.rhs.push_back(std::move(col));
    }
    LinearSolution sol;
    try {
      sol = solve_system(sys, opt.budget, opt.method);
    } catch (const BudgetExhausted&) {
      for (std::size_t t : idx) out[t].status = MembershipStatus::BudgetExhausted;
      continue;
    }
    for (std::size_t k = 0; k < idx.size(); ++k) {
      Membership& m = out[idx[k]];
      if (sol.x[k]) {
        std::vector<std::vector<Term>> cof(ideal.gens.size());
        for (std::size_t j = 0; j < unknowns.size(); ++j)
          if (!(*sol.x[k])[j].is_zero()) cof[unknowns[j].gen].push_back({unknowns[j].mu, (*sol.x[k])[j]});
        std::vector<Poly> cofactors;
        for (auto& c : cof) cofactors.push_back(Poly::from_terms(ideal.ring, std::move(c)));
        m.status = MembershipStatus::Member;
        m.witness.emplace(targets[idx[k]], ideal.gens, std::move(cofactors));
      } else {
        m.status = MembershipStatus::NonMember;
        if (sol.separator[k]) {
          Separator sep;
          sep.degree = d;
          for (const auto& [r, v] : *sol.separator[k]) sep.functional.push_back({rows[r], v});
          m.separator = std::move(sep);
        }
      }
    }
  }
  return out;
}

Membership graded_membership(const Poly& g, const IdealBasis& ideal, const EngineOptions& opt) {
  return graded_membership_batch({g}, ideal, opt).front();
}

int monomial_ideal_dimension(const std::vector<Monomial>& monos, int n) {
  for (const auto& m : monos)
    if (m.deg == 0) return -1;  // unit ideal: empty variety
  int best = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    int size = __builtin_popcount(mask);
    if (size <= best) continue;
    bool independent = true;
    for (const auto& m : monos) {
      bool inside = true;
      for (int i = 0; i < n && inside; ++i)
        if (m[i] && !(mask & (1u << i))) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

int krull_dimension(const IdealBasis& ideal, Budget* budget) {
  IdealBasis gb = ideal.groebner ? ideal : groebner_basis(ideal, budget);
  std::vector<Monomial> lead;
  for (const auto& g : gb.gens) {
    // leading monomial under the weighted order
    Monomial best = g.terms().front().m;
    for (const auto& t : g.terms())
      if (wgrevlex_cmp(t.m, best, gb.weights) > 0) best = t.m;
    lead.push_back(best);
  }
  if (gb.gens.empty()) return ideal.ring->nvars();
  return monomial_ideal_dimension(lead, ideal.ring->nvars());
}

bool squarefree_test(const Poly& f, const std::vector<int>& weights, Budget* budget) {
  if (f.is_zero()) throw std::invalid_argument("squarefree_test of zero");
  if (f.is_constant()) return true;
  std::vector<Poly> gens{f};
  for (int i = 0; i < f.nvars(); ++i) gens.push_back(f.differentiate(i));
  IdealBasis jac = IdealBasis::plain(f.ring(), std::move(gens), weights);
  return krull_dimension(jac, budget) <= f.nvars() - 2;
}

namespace {

using Dense = std::vector<Scalar>;  // coefficient of t^i at index i

void trim(Dense& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

Dense dense_rem(Dense a, const Dense& b) {
  trim(a);
  Scalar inv = b.back().inverse();
  while (a.size() >= b.size()) {
    Scalar f = a.back() * inv;
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i].sub_product(f, b[i]);
    a.pop_back();
    trim(a);
  }
  return a;
}

}  // namespace

int distinct_root_count(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("distinct_root_count of zero");
  if (f.nvars() != 1) throw std::invalid_argument("distinct_root_count needs a univariate polynomial");
  Dense a(f.degree() + 1);
  for (const auto& t : f.terms()) a[t.m[0]] = t.c;
  Dense da;
  for (std::size_t i = 1; i < a.size(); ++i) da.push_back(a[i] * Scalar(static_cast<long>(i)));
  trim(da);
  if (da.empty()) return 0;
  Dense x = a, y = da;
  while (!y.empty()) {
    Dense r = dense_rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  int gcd_deg = static_cast<int>(x.size()) - 1;
  return f.degree() - gcd_deg;
}

}  // namespace coxsaito
