#pragma once

// Data-parallel kernels. Each has a serial reference twin with identical
// output; tests compare the two and bench/ times them.

#include "coxsaito/poly.hpp"

#include <cstdint>
#include <vector>

namespace coxsaito::kernels {

constexpr std::size_t kParallelMulThreshold = std::size_t{1} << 14;

Poly mul_parallel(const Poly& a, const Poly& b);

// Dense matrix over Z/p. Columns [0, coeff_cols) are eliminated; the remaining
// columns ride along (right-hand sides).
struct ModMatrix {
  int rows = 0;
  int cols = 0;
  std::uint32_t p = 0;
  std::vector<std::uint32_t> a;
  std::uint32_t& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  std::uint32_t operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

// Reduced row echelon form in place; pivots are taken column by column, first
// available row, so the pivot set is the lexicographically first column basis.
// Returns the pivot columns; row r holds pivot r afterwards. pivot_rows, when
// given, receives the original index of each pivot row.
std::vector<int> rref_mod_serial(ModMatrix& m, int coeff_cols, std::vector<int>* pivot_rows = nullptr);
std::vector<int> rref_mod_parallel(ModMatrix& m, int coeff_cols, std::vector<int>* pivot_rows = nullptr);

// sum over forms c of (c . x)^d, in the ring's variables.
Poly power_sum_serial(const std::vector<std::vector<Scalar>>& forms, int d, const RingPtr& ring);
Poly power_sum_parallel(const std::vector<std::vector<Scalar>>& forms, int d, const RingPtr& ring);

// Apply each matrix (x -> Mx) to f and sum: sum_M f(Mx).
Poly orbit_sum_serial(const Poly& f, const std::vector<std::vector<Scalar>>& matrices);
Poly orbit_sum_parallel(const Poly& f, const std::vector<std::vector<Scalar>>& matrices);

int thread_count();

}  // namespace coxsaito::kernels
