#include "coxsaito/kernels.hpp"

#include "coxsaito/modular.hpp"

#include <omp.h>

#include <algorithm>
#include <unordered_map>

namespace coxsaito::kernels {

int thread_count() { return omp_get_max_threads(); }

namespace {

using Acc = std::unordered_map<Monomial, Scalar, MonomialHash>;

Poly finish(Acc& acc, const RingPtr& ring) {
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!c.is_zero()) terms.push_back({m, std::move(c)});
  return Poly::from_terms(ring, std::move(terms));
}

}  // namespace

Poly mul_parallel(const Poly& a, const Poly& b) {
  const Poly& outer = a.size() >= b.size() ? a : b;
  const Poly& inner = a.size() >= b.size() ? b : a;
  int nt = thread_count();
  std::vector<Acc> partial(nt);
#pragma omp parallel num_threads(nt)
  {
    Acc& acc = partial[omp_get_thread_num()];
    const auto& ot = outer.terms();
#pragma omp for schedule(static)
    for (std::size_t i = 0; i < ot.size(); ++i)
      for (const auto& y : inner.terms()) acc[ot[i].m * y.m].add_product(ot[i].c, y.c);
  }
  for (int t = 1; t < nt; ++t)
    for (auto& [m, c] : partial[t]) partial[0][m] += c;
  return finish(partial[0], a.ring() ? a.ring() : b.ring());
}

namespace {

template <bool Parallel>
std::vector<int> rref_mod_impl(ModMatrix& m, int coeff_cols, std::vector<int>* pivot_rows) {
  const std::uint32_t p = m.p;
  std::vector<int> pivots;
  std::vector<int> nz;
  std::vector<int> origin;
  if (pivot_rows) {
    origin.resize(m.rows);
    for (int i = 0; i < m.rows; ++i) origin[i] = i;
  }
  int row = 0;
  for (int col = 0; col < coeff_cols && row < m.rows; ++col) {
    int piv = -1;
    for (int i = row; i < m.rows; ++i)
      if (m(i, col)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      std::swap_ranges(m.a.begin() + static_cast<std::ptrdiff_t>(piv) * m.cols,
                       m.a.begin() + static_cast<std::ptrdiff_t>(piv + 1) * m.cols,
                       m.a.begin() + static_cast<std::ptrdiff_t>(row) * m.cols);
    if (pivot_rows && piv != row) std::swap(origin[piv], origin[row]);
    std::uint32_t inv = modular::inv_mod(m(row, col), p);
    nz.clear();
    for (int j = col; j < m.cols; ++j)
      if (m(row, j)) {
        m(row, j) = modular::mul_mod(m(row, j), inv, p);
        nz.push_back(j);
      }
    const std::uint32_t* prow = &m.a[static_cast<std::size_t>(row) * m.cols];
    auto eliminate = [&](int i) {
      std::uint32_t* r = &m.a[static_cast<std::size_t>(i) * m.cols];
      std::uint32_t f = r[col];
      if (!f) return;
      std::uint64_t nf = p - f;
      for (int j : nz) r[j] = static_cast<std::uint32_t>((r[j] + nf * prow[j]) % p);
    };
    if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
      for (int i = 0; i < m.rows; ++i)
        if (i != row) eliminate(i);
    } else {
      for (int i = 0; i < m.rows; ++i)
        if (i != row) eliminate(i);
    }
    pivots.push_back(col);
    ++row;
  }
  if (pivot_rows) pivot_rows->assign(origin.begin(), origin.begin() + row);
  return pivots;
}

struct PowerSumPlan {
  std::vector<Monomial> monos;
  std::vector<mpz_class> multinomial;
};

PowerSumPlan plan_power_sum(int n, int d) {
  PowerSumPlan plan;
  plan.monos = monomials_of_wdeg(n, d, std::vector<int>(n, 1));
  mpz_class dfact;
  mpz_fac_ui(dfact.get_mpz_t(), d);
  for (const auto& m : plan.monos) {
    mpz_class c = dfact;
    for (int i = 0; i < n; ++i) {
      mpz_class f;
      mpz_fac_ui(f.get_mpz_t(), m[i]);
      c /= f;
    }
    plan.multinomial.push_back(c);
  }
  return plan;
}

void accumulate_form(const PowerSumPlan& plan, const std::vector<Scalar>& c, int d,
                     std::vector<Scalar>& acc) {
  int n = static_cast<int>(c.size());
  std::vector<std::vector<Scalar>> pw(n);
  for (int i = 0; i < n; ++i) {
    pw[i].reserve(d + 1);
    pw[i].push_back(Scalar(1));
    for (int k = 1; k <= d; ++k) pw[i].push_back(pw[i].back() * c[i]);
  }
  for (std::size_t k = 0; k < plan.monos.size(); ++k) {
    const Monomial& m = plan.monos[k];
    Scalar v(1);
    bool zero = false;
    for (int i = 0; i < n && !zero; ++i) {
      if (!m[i]) continue;
      if (pw[i][1].is_zero()) zero = true;
      else v *= pw[i][m[i]];
    }
    if (!zero) acc[k] += v;
  }
}

Poly assemble_power_sum(const PowerSumPlan& plan, std::vector<Scalar>& acc, const RingPtr& ring) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < plan.monos.size(); ++k) {
    if (acc[k].is_zero()) continue;
    terms.push_back({plan.monos[k], acc[k] * Scalar(mpq_class(plan.multinomial[k]))});
  }
  return Poly::from_sorted(ring, std::move(terms));
}

Poly apply_matrix(const Poly& f, const std::vector<Scalar>& mat) {
  int n = f.nvars();
  std::vector<Poly> images;
  for (int i = 0; i < n; ++i) {
    std::vector<Term> terms;
    for (int j = 0; j < n; ++j)
      if (!mat[static_cast<std::size_t>(i) * n + j].is_zero())
        terms.push_back({Monomial::unit(j), mat[static_cast<std::size_t>(i) * n + j]});
    images.push_back(Poly::from_terms(f.ring(), std::move(terms)));
  }
  return f.substitute(images);
}

}  // namespace

std::vector<int> rref_mod_serial(ModMatrix& m, int coeff_cols, std::vector<int>* pivot_rows) {
  return rref_mod_impl<false>(m, coeff_cols, pivot_rows);
}
std::vector<int> rref_mod_parallel(ModMatrix& m, int coeff_cols, std::vector<int>* pivot_rows) {
  return rref_mod_impl<true>(m, coeff_cols, pivot_rows);
}

Poly power_sum_serial(const std::vector<std::vector<Scalar>>& forms, int d, const RingPtr& ring) {
  PowerSumPlan plan = plan_power_sum(ring->nvars(), d);
  std::vector<Scalar> acc(plan.monos.size());
  for (const auto& c : forms) accumulate_form(plan, c, d, acc);
  return assemble_power_sum(plan, acc, ring);
}

Poly power_sum_parallel(const std::vector<std::vector<Scalar>>& forms, int d, const RingPtr& ring) {
  PowerSumPlan plan = plan_power_sum(ring->nvars(), d);
  int nt = thread_count();
  std::vector<std::vector<Scalar>> partial(nt, std::vector<Scalar>(plan.monos.size()));
#pragma omp parallel for schedule(dynamic, 4) num_threads(nt)
  for (std::size_t f = 0; f < forms.size(); ++f) accumulate_form(plan, forms[f], d, partial[omp_get_thread_num()]);
  for (int t = 1; t < nt; ++t)
    for (std::size_t k = 0; k < plan.monos.size(); ++k) partial[0][k] += partial[t][k];
  return assemble_power_sum(plan, partial[0], ring);
}

Poly orbit_sum_serial(const Poly& f, const std::vector<std::vector<Scalar>>& matrices) {
  Poly s(f.ring());
  for (const auto& m : matrices) s += apply_matrix(f, m);
  return s;
}

Poly orbit_sum_parallel(const Poly& f, const std::vector<std::vector<Scalar>>& matrices) {
  int nt = thread_count();
  std::vector<Poly> partial(nt, Poly(f.ring()));
#pragma omp parallel for schedule(dynamic, 4) num_threads(nt)
  for (std::size_t k = 0; k < matrices.size(); ++k) partial[omp_get_thread_num()] += apply_matrix(f, matrices[k]);
  Poly s(f.ring());
  for (auto& p : partial) s += p;
  return s;
}

}  // namespace coxsaito::kernels
