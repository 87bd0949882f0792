#include "coxsaito/linsolve.hpp"

#include "coxsaito/kernels.hpp"
#include "coxsaito/modular.hpp"

#include <algorithm>
#include <map>

namespace coxsaito {

int LinearSystem::radicand() const {
  int d = 0;
  for (const auto& c : columns)
    for (const auto& [i, v] : c) d = common_radicand(d, v.d());
  for (const auto& c : rhs)
    for (const auto& [i, v] : c) d = common_radicand(d, v.d());
  return d;
}

namespace {

// row -= f * piv, both sorted sparse vectors
void axpy(SparseVec& row, const Scalar& f, const SparseVec& piv) {
  SparseVec out;
  out.reserve(row.size() + piv.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < piv.size()) {
    if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
      out.push_back(std::move(row[i++]));
    } else if (i == row.size() || piv[j].first < row[i].first) {
      out.push_back({piv[j].first, -(f * piv[j].second)});
      ++j;
    } else {
      auto e = std::move(row[i++]);
      e.second.sub_product(f, piv[j++].second);
      if (!e.second.is_zero()) out.push_back(std::move(e));
    }
  }
  row = std::move(out);
}

}  // namespace

LinearSolution solve_exact(const LinearSystem& sys, Budget* budget) {
  const int ncols = static_cast<int>(sys.columns.size());
  const int nrhs = static_cast<int>(sys.rhs.size());
  std::vector<SparseVec> rows(sys.nrows);
  for (int j = 0; j < ncols; ++j)
    for (const auto& [r, v] : sys.columns[j]) rows[r].push_back({j, v});
  for (int k = 0; k < nrhs; ++k)
    for (const auto& [r, v] : sys.rhs[k]) rows[r].push_back({ncols + k, v});
  for (auto& r : rows) std::sort(r.begin(), r.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

  std::vector<int> remaining;
  for (int r = 0; r < sys.nrows; ++r)
    if (!rows[r].empty()) remaining.push_back(r);
  std::vector<std::pair<int, int>> pivots;  // (column, row)
  for (int c = 0; c < ncols; ++c) {
    int best = -1;
    std::size_t best_size = 0;
    for (int r : remaining)
      if (!rows[r].empty() && rows[r].front().first == c && (best < 0 || rows[r].size() < best_size)) {
        best = r;
        best_size = rows[r].size();
      }
    if (best < 0) continue;
    std::vector<int> next;
    next.reserve(remaining.size());
    Scalar inv = rows[best].front().second.inverse();
    for (int r : remaining) {
      if (r == best) continue;
      if (!rows[r].empty() && rows[r].front().first == c) {
        Scalar f = rows[r].front().second * inv;
        charge(budget, static_cast<long long>(rows[r].size() + rows[best].size()));
        axpy(rows[r], f, rows[best]);
      }
      if (!rows[r].empty()) next.push_back(r);
    }
    remaining = std::move(next);
    pivots.push_back({c, best});
  }

  LinearSolution sol;
  sol.rank = static_cast<int>(pivots.size());
  for (const auto& pr : pivots) sol.pivots.push_back(pr.first);
  sol.x.resize(nrhs);
  sol.separator.resize(nrhs);
  for (int k = 0; k < nrhs; ++k) {
    bool consistent = true;
    for (int r : remaining)
      for (const auto& e : rows[r])
        if (e.first == ncols + k) consistent = false;
    if (!consistent) continue;
    std::vector<Scalar> x(ncols);
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      const SparseVec& row = rows[it->second];
      Scalar acc;
      Scalar lead;
      for (const auto& [j, v] : row) {
        if (j == it->first) lead = v;
        else if (j < ncols) {
          if (!x[j].is_zero()) acc.sub_product(v, x[j]);
        } else if (j == ncols + k) {
          acc += v;
        }
      }
      x[it->first] = acc / lead;
    }
    sol.x[k] = std::move(x);
  }
  return sol;
}

int exact_rank(const LinearSystem& sys, Budget* budget) {
  LinearSystem a;
  a.nrows = sys.nrows;
  a.columns = sys.columns;
  return solve_exact(a, budget).rank;
}

bool check_solution(const LinearSystem& sys, int k, const std::vector<Scalar>& x) {
  std::map<int, Scalar> acc;
  for (std::size_t j = 0; j < sys.columns.size(); ++j) {
    if (x[j].is_zero()) continue;
    for (const auto& [r, v] : sys.columns[j]) acc[r].add_product(v, x[j]);
  }
  for (const auto& [r, v] : sys.rhs[k]) acc[r] -= v;
  for (const auto& [r, v] : acc)
    if (!v.is_zero()) return false;
  return true;
}

namespace {

struct ModRun {
  std::vector<int> pivots;
  std::vector<bool> consistent;
  std::vector<std::vector<std::uint32_t>> x;  // per rhs, per column
};

std::uint32_t embed(const Scalar& s, const modular::Prime& pr, bool conj) {
  std::uint32_t a = modular::reduce(s.a(), pr.p);
  if (s.d() == 0) return a;
  std::uint32_t b = modular::reduce(s.b(), pr.p);
  std::uint32_t root = conj ? pr.p - pr.root : pr.root;
  return static_cast<std::uint32_t>((a + static_cast<std::uint64_t>(b) * root) % pr.p);
}

// Rows and columns of a square subsystem carrying the full rank.
struct Restriction {
  std::vector<int> rows;
  std::vector<int> cols;
};

ModRun run_prime(const LinearSystem& sys, const modular::Prime& pr, bool conj, bool parallel, Budget* budget,
                 const Restriction* sub = nullptr, std::vector<int>* pivot_rows = nullptr) {
  const int ncols = static_cast<int>(sys.columns.size());
  const int nrhs = static_cast<int>(sys.rhs.size());
  std::vector<int> row_of, col_ids;
  if (sub) {
    row_of.assign(sys.nrows, -1);
    for (std::size_t i = 0; i < sub->rows.size(); ++i) row_of[sub->rows[i]] = static_cast<int>(i);
    col_ids = sub->cols;
  } else {
    col_ids.resize(ncols);
    for (int j = 0; j < ncols; ++j) col_ids[j] = j;
  }
  const int width = static_cast<int>(col_ids.size());
  kernels::ModMatrix m;
  m.rows = sub ? static_cast<int>(sub->rows.size()) : sys.nrows;
  m.cols = width + nrhs;
  m.p = pr.p;
  m.a.assign(static_cast<std::size_t>(m.rows) * m.cols, 0);
  auto put = [&](int r, int c, const Scalar& v) {
    int rr = sub ? row_of[r] : r;
    if (rr >= 0) m(rr, c) = embed(v, pr, conj);
  };
  for (int j = 0; j < width; ++j)
    for (const auto& [r, v] : sys.columns[col_ids[j]]) put(r, j, v);
  for (int k = 0; k < nrhs; ++k)
    for (const auto& [r, v] : sys.rhs[k]) put(r, width + k, v);
  charge(budget, static_cast<long long>(m.rows) * m.cols * std::min(m.rows, width) / 64 + 1);
  ModRun run;
  auto piv = parallel ? kernels::rref_mod_parallel(m, width, pivot_rows)
                      : kernels::rref_mod_serial(m, width, pivot_rows);
  for (int c : piv) run.pivots.push_back(col_ids[c]);
  int rank = static_cast<int>(piv.size());
  run.consistent.assign(nrhs, true);
  run.x.assign(nrhs, std::vector<std::uint32_t>(ncols, 0));
  for (int k = 0; k < nrhs; ++k) {
    for (int r = rank; r < m.rows; ++r)
      if (m(r, width + k)) {
        run.consistent[k] = false;
        break;
      }
    if (!run.consistent[k]) continue;
    for (int r = 0; r < rank; ++r) run.x[k][run.pivots[r]] = m(r, width + k);
  }
  return run;
}

bool better_profile(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  return a < b;
}

}  // namespace

namespace {

LinearSolution solve_modular_impl(const LinearSystem& sys, Budget* budget, bool parallel, bool allow_dual);

// Solve y.A = 0, y.b = 1 by the transposed system.
std::optional<SparseVec> find_separator(const LinearSystem& sys, int k, Budget* budget, bool parallel) {
  const int ncols = static_cast<int>(sys.columns.size());
  LinearSystem dual;
  dual.nrows = ncols + 1;
  dual.columns.assign(sys.nrows, {});
  for (int j = 0; j < ncols; ++j)
    for (const auto& [r, v] : sys.columns[j]) dual.columns[r].push_back({j, v});
  for (const auto& [r, v] : sys.rhs[k]) dual.columns[r].push_back({ncols, v});
  dual.rhs.push_back({{ncols, Scalar(1)}});
  LinearSolution s = solve_modular_impl(dual, budget, parallel, false);
  if (!s.x[0]) return std::nullopt;
  SparseVec y;
  for (int r = 0; r < sys.nrows; ++r)
    if (!(*s.x[0])[r].is_zero()) y.push_back({r, (*s.x[0])[r]});
  if (!check_separator(sys, k, y)) return std::nullopt;
  return y;
}

}  // namespace

bool check_separator(const LinearSystem& sys, int k, const SparseVec& y) {
  std::map<int, Scalar> yv(y.begin(), y.end());
  auto dot = [&](const SparseVec& col) {
    Scalar s;
    for (const auto& [r, v] : col)
      if (auto it = yv.find(r); it != yv.end()) s.add_product(v, it->second);
    return s;
  };
  for (const auto& col : sys.columns)
    if (!dot(col).is_zero()) return false;
  return dot(sys.rhs[k]).is_one();
}

LinearSolution solve_modular(const LinearSystem& sys, Budget* budget, bool parallel) {
  return solve_modular_impl(sys, budget, parallel, true);
}

namespace {

LinearSolution solve_modular_impl(const LinearSystem& sys, Budget* budget, bool parallel, bool allow_dual) {
  const int ncols = static_cast<int>(sys.columns.size());
  const int nrhs = static_cast<int>(sys.rhs.size());
  const int d = sys.radicand();
  const int width = d == 0 ? ncols : 2 * ncols;
  modular::PrimeStream primes(d);

  std::vector<int> profile;
  std::vector<bool> consistent(nrhs, true);
  std::vector<modular::CrtAccumulator> crt(nrhs, modular::CrtAccumulator(width));
  std::vector<std::optional<std::vector<Scalar>>> last(nrhs);
  std::vector<bool> done(nrhs, false);
  LinearSolution sol;
  sol.x.resize(nrhs);
  sol.separator.resize(nrhs);
  int good = 0;
  const int max_primes = 400;
  // Once a full run has fixed the pivots, later primes solve only the square
  // subsystem on the pivot rows and columns. A reconstruction that fails the
  // exact check sends the next prime back to the full system.
  std::optional<Restriction> sub;
  bool force_full = true;

  for (int attempt = 0; attempt < max_primes; ++attempt) {
    modular::Prime pr = primes.next();
    ModRun run, run2;
    const bool full = force_full || !sub;
    std::vector<int> pivot_rows;
    try {
      run = run_prime(sys, pr, false, parallel, budget, full ? nullptr : &*sub, full ? &pivot_rows : nullptr);
      if (d != 0) run2 = run_prime(sys, pr, true, parallel, budget, full ? nullptr : &*sub);
    } catch (const DivisionByZero&) {
      continue;
    }
    if (d != 0 && run2.pivots != run.pivots) continue;
    if (full) {
      if (good == 0 || better_profile(run.pivots, profile)) sub = Restriction{pivot_rows, run.pivots};
      force_full = false;
    }
    if (good == 0 || better_profile(run.pivots, profile)) {
      if (good > 0) {
        crt.assign(nrhs, modular::CrtAccumulator(width));
        last.assign(nrhs, std::nullopt);
      }
      profile = run.pivots;
      for (int k = 0; k < nrhs; ++k) consistent[k] = run.consistent[k] && (d == 0 || run2.consistent[k]);
      good = 1;
    } else if (run.pivots != profile) {
      continue;
    } else {
      ++good;
      for (int k = 0; k < nrhs; ++k)
        if (!(run.consistent[k] && (d == 0 || run2.consistent[k]))) consistent[k] = false;
    }
    bool all_done = true;
    for (int k = 0; k < nrhs; ++k) {
      if (done[k] || !consistent[k]) continue;
      std::vector<std::uint32_t> residues(width);
      if (d == 0) {
        residues = run.x[k];
      } else {
        std::uint32_t inv2 = modular::inv_mod(2, pr.p);
        std::uint32_t inv2s = modular::inv_mod(modular::mul_mod(2, pr.root, pr.p), pr.p);
        for (int j = 0; j < ncols; ++j) {
          std::uint64_t vp = run.x[k][j], vm = run2.x[k][j];
          residues[j] = modular::mul_mod(static_cast<std::uint32_t>((vp + vm) % pr.p), inv2, pr.p);
          residues[ncols + j] = modular::mul_mod(static_cast<std::uint32_t>((vp + pr.p - vm) % pr.p), inv2s, pr.p);
        }
      }
      crt[k].add(residues, pr.p);
      std::vector<Scalar> x(ncols);
      bool ok = true;
      for (int j = 0; j < ncols && ok; ++j) {
        auto a = modular::rational_reconstruct(crt[k].values()[j], crt[k].modulus());
        if (!a) {
          ok = false;
          break;
        }
        if (d == 0) {
          x[j] = Scalar(*a);
        } else {
          auto b = modular::rational_reconstruct(crt[k].values()[ncols + j], crt[k].modulus());
          if (!b) {
            ok = false;
            break;
          }
          x[j] = Scalar::quadratic(*a, *b, d);
        }
      }
      if (ok && last[k] && *last[k] == x) {
        charge(budget, static_cast<long long>(ncols));
        if (check_solution(sys, k, x)) {
          sol.x[k] = std::move(x);
          done[k] = true;
          continue;
        }
        force_full = true;
      }
      if (ok) last[k] = std::move(x);
      else last[k].reset();
      all_done = false;
    }
    if (all_done && good >= 2) break;
  }
  sol.rank = static_cast<int>(profile.size());
  sol.pivots = profile;

  // Inconsistent right-hand sides need an exact proof: a verified separating
  // functional, else exact elimination.
  std::vector<int> pending;
  for (int k = 0; k < nrhs; ++k) {
    if (done[k]) continue;
    if (!consistent[k] && allow_dual) {
      if (auto y = find_separator(sys, k, budget, parallel)) {
        sol.separator[k] = std::move(y);
        continue;
      }
    }
    pending.push_back(k);
  }
  if (!pending.empty()) {
    LinearSystem rest;
    rest.nrows = sys.nrows;
    rest.columns = sys.columns;
    for (int k : pending) rest.rhs.push_back(sys.rhs[k]);
    LinearSolution ex = solve_exact(rest, budget);
    sol.rank = ex.rank;
    sol.pivots = ex.pivots;
    for (std::size_t i = 0; i < pending.size(); ++i) sol.x[pending[i]] = std::move(ex.x[i]);
  }
  return sol;
}

}  // namespace

LinearSolution solve_system(const LinearSystem& sys, Budget* budget, SolveMethod method) {
  if (method == SolveMethod::Exact) return solve_exact(sys, budget);
  if (method == SolveMethod::Modular) return solve_modular(sys, budget);
  long long size = static_cast<long long>(sys.nrows) * static_cast<long long>(sys.columns.size());
  if (size < 40000) return solve_exact(sys, budget);
  return solve_modular(sys, budget);
}

}  // namespace coxsaito
