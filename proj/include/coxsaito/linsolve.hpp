#pragma once

#include "coxsaito/budget.hpp"
#include "coxsaito/scalar.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace coxsaito {

using SparseVec = std::vector<std::pair<int, Scalar>>;  // sorted by index

// A x = b_k for several right-hand sides, A given column by column.
struct LinearSystem {
  int nrows = 0;
  std::vector<SparseVec> columns;
  std::vector<SparseVec> rhs;
  int radicand() const;
};

struct LinearSolution {
  int rank = 0;
  std::vector<int> pivots;
  // x[k] solves A x = rhs[k] (free unknowns zero), or is empty if inconsistent
  std::vector<std::optional<std::vector<Scalar>>> x;
  // For an inconsistent rhs: y over the rows with y.A = 0 and y.b = 1, when
  // one was found (exactly verified).
  std::vector<std::optional<SparseVec>> separator;
};

enum class SolveMethod { Exact, Modular, Auto };

// Sparse fraction-carrying Gaussian elimination over the Scalar field.
LinearSolution solve_exact(const LinearSystem& sys, Budget* budget = nullptr);
// Multi-modular elimination with CRT and rational reconstruction. Solutions are
// re-verified exactly. A right-hand side the primes call inconsistent is only
// reported absent with an exactly verified separator, or after solve_exact.
LinearSolution solve_modular(const LinearSystem& sys, Budget* budget = nullptr, bool parallel = true);
LinearSolution solve_system(const LinearSystem& sys, Budget* budget = nullptr,
                            SolveMethod method = SolveMethod::Auto);
// Exact rank of A.
int exact_rank(const LinearSystem& sys, Budget* budget = nullptr);
bool check_solution(const LinearSystem& sys, int k, const std::vector<Scalar>& x);
bool check_separator(const LinearSystem& sys, int k, const SparseVec& y);

}  // namespace coxsaito
