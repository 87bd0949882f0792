#pragma once

#include "coxsaito/poly.hpp"

#include <vector>

namespace coxsaito {

// Dense matrix over the Scalar field.
struct ScalarMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Scalar> a;

  ScalarMatrix() = default;
  ScalarMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
  static ScalarMatrix identity(int n);
  Scalar& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const Scalar& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  ScalarMatrix transpose() const;
  friend ScalarMatrix operator*(const ScalarMatrix& x, const ScalarMatrix& y);
  friend bool operator==(const ScalarMatrix& x, const ScalarMatrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

struct EchelonForm {
  ScalarMatrix r;            // reduced row echelon form
  std::vector<int> pivots;   // pivot column of each nonzero row
};

EchelonForm rref(ScalarMatrix m);
int rank(const ScalarMatrix& m);
Scalar determinant(const ScalarMatrix& m);
ScalarMatrix inverse(const ScalarMatrix& m);
// Columns spanning the right kernel.
ScalarMatrix kernel(const ScalarMatrix& m);
// One solution of m x = b (b a column), or empty optional.
std::optional<std::vector<Scalar>> solve(const ScalarMatrix& m, const std::vector<Scalar>& b);

class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr ring, int rows, int cols);
  static PolyMatrix identity(RingPtr ring, int n);
  static PolyMatrix from_scalars(RingPtr ring, const ScalarMatrix& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const RingPtr& ring() const { return ring_; }
  Poly& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Poly& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

  PolyMatrix transpose() const;
  PolyMatrix column_removed(int j) const;
  PolyMatrix row_removed(int i) const;
  PolyMatrix substitute(const std::vector<Poly>& images) const;
  ScalarMatrix evaluate(const std::vector<Scalar>& point) const;
  bool is_symmetric() const;
  friend PolyMatrix operator*(const PolyMatrix& x, const PolyMatrix& y);
  friend PolyMatrix operator*(const PolyMatrix& x, const ScalarMatrix& y);
  friend PolyMatrix operator*(const ScalarMatrix& x, const PolyMatrix& y);
  friend PolyMatrix operator*(const Scalar& c, PolyMatrix m);
  friend PolyMatrix operator*(const Poly& c, PolyMatrix m);
  friend PolyMatrix operator+(PolyMatrix x, const PolyMatrix& y);
  friend PolyMatrix operator-(PolyMatrix x, const PolyMatrix& y);
  friend bool operator==(const PolyMatrix& x, const PolyMatrix& y);

 private:
  RingPtr ring_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Poly> e_;
};

Poly determinant(const PolyMatrix& m);
Poly determinant_bareiss(const PolyMatrix& m);
Poly determinant_expansion(const PolyMatrix& m);
PolyMatrix adjugate(const PolyMatrix& m);
PolyMatrix hessian(const Poly& f);
// Rows are gradients of the given polynomials.
PolyMatrix jacobian(const std::vector<Poly>& fs);

}  // namespace coxsaito
