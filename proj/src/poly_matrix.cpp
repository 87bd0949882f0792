#include "coxsaito/poly_matrix.hpp"

#include <stdexcept>

namespace coxsaito {

ScalarMatrix ScalarMatrix::identity(int n) {
  ScalarMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

ScalarMatrix ScalarMatrix::transpose() const {
  ScalarMatrix t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ScalarMatrix operator*(const ScalarMatrix& x, const ScalarMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
  ScalarMatrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x(i, k).is_zero()) continue;
      for (int j = 0; j < y.cols; ++j) r(i, j).add_product(x(i, k), y(k, j));
    }
  return r;
}

EchelonForm rref(ScalarMatrix m) {
  EchelonForm out;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int i = row; i < m.rows; ++i)
      if (!m(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(row, j));
    Scalar inv = m(row, col).inverse();
    for (int j = col; j < m.cols; ++j) m(row, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      Scalar f = m(i, col);
      for (int j = col; j < m.cols; ++j)
        if (!m(row, j).is_zero()) m(i, j).sub_product(f, m(row, j));
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.r = std::move(m);
  return out;
}

int rank(const ScalarMatrix& m) { return static_cast<int>(rref(m).pivots.size()); }

Scalar determinant(const ScalarMatrix& m0) {
  if (m0.rows != m0.cols) throw std::invalid_argument("determinant of non-square matrix");
  ScalarMatrix m = m0;
  Scalar det(1);
  int n = m.rows;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (!m(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return Scalar();
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    Scalar inv = m(c, c).inverse();
    for (int i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      Scalar f = m(i, c) * inv;
      for (int j = c; j < n; ++j) m(i, j).sub_product(f, m(c, j));
    }
  }
  return det;
}

ScalarMatrix inverse(const ScalarMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("inverse of non-square matrix");
  int n = m.rows;
  ScalarMatrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar(1);
  }
  EchelonForm e = rref(aug);
  if (static_cast<int>(e.pivots.size()) < n || e.pivots[n - 1] != n - 1) throw DivisionByZero();
  ScalarMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = e.r(i, n + j);
  return inv;
}

ScalarMatrix kernel(const ScalarMatrix& m) {
  EchelonForm e = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int p : e.pivots) is_pivot[p] = true;
  std::vector<int> free;
  for (int j = 0; j < m.cols; ++j)
    if (!is_pivot[j]) free.push_back(j);
  ScalarMatrix k(m.cols, static_cast<int>(free.size()));
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], static_cast<int>(f)) = Scalar(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      k(e.pivots[r], static_cast<int>(f)) = -e.r(static_cast<int>(r), free[f]);
  }
  return k;
}

std::optional<std::vector<Scalar>> solve(const ScalarMatrix& m, const std::vector<Scalar>& b) {
  ScalarMatrix aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
    aug(i, m.cols) = b[i];
  }
  EchelonForm e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols) return std::nullopt;
  std::vector<Scalar> x(m.cols);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.r(static_cast<int>(r), m.cols);
  return x;
}

PolyMatrix::PolyMatrix(RingPtr ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols),
      e_(static_cast<std::size_t>(rows) * cols, Poly(ring_)) {}

PolyMatrix PolyMatrix::identity(RingPtr ring, int n) {
  PolyMatrix m(ring, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Poly::constant(ring, Scalar(1));
  return m;
}

PolyMatrix PolyMatrix::from_scalars(RingPtr ring, const ScalarMatrix& s) {
  PolyMatrix m(ring, s.rows, s.cols);
  for (int i = 0; i < s.rows; ++i)
    for (int j = 0; j < s.cols; ++j) m(i, j) = Poly::constant(ring, s(i, j));
  return m;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(ring_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

PolyMatrix PolyMatrix::column_removed(int c) const {
  PolyMatrix t(ring_, rows_, cols_ - 1);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0, k = 0; j < cols_; ++j)
      if (j != c) t(i, k++) = (*this)(i, j);
  return t;
}

PolyMatrix PolyMatrix::row_removed(int r) const { return transpose().column_removed(r).transpose(); }

PolyMatrix PolyMatrix::substitute(const std::vector<Poly>& images) const {
  RingPtr target = images.empty() ? ring_ : images.front().ring();
  PolyMatrix t(target, rows_, cols_);
  for (std::size_t k = 0; k < e_.size(); ++k) t.e_[k] = e_[k].substitute(images);
  return t;
}

ScalarMatrix PolyMatrix::evaluate(const std::vector<Scalar>& point) const {
  ScalarMatrix s(rows_, cols_);
  for (std::size_t k = 0; k < e_.size(); ++k) s.a[k] = e_[k].evaluate(point);
  return s;
}

bool PolyMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if (!((*this)(i, j) == (*this)(j, i))) return false;
  return true;
}

PolyMatrix operator*(const PolyMatrix& x, const PolyMatrix& y) {
  if (x.cols_ != y.rows_) throw std::invalid_argument("matrix shape mismatch");
  if (!same_ring(x.ring_, y.ring_)) throw ContextMismatch();
  PolyMatrix r(x.ring_, x.rows_, y.cols_);
  for (int i = 0; i < x.rows_; ++i)
    for (int j = 0; j < y.cols_; ++j) {
      Poly s(x.ring_);
      for (int k = 0; k < x.cols_; ++k) s += x(i, k) * y(k, j);
      r(i, j) = std::move(s);
    }
  return r;
}

PolyMatrix operator*(const PolyMatrix& x, const ScalarMatrix& y) {
  return x * PolyMatrix::from_scalars(x.ring_, y);
}

PolyMatrix operator*(const ScalarMatrix& x, const PolyMatrix& y) {
  return PolyMatrix::from_scalars(y.ring_, x) * y;
}

PolyMatrix operator*(const Scalar& c, PolyMatrix m) {
  for (auto& e : m.e_) e *= c;
  return m;
}

PolyMatrix operator*(const Poly& c, PolyMatrix m) {
  for (auto& e : m.e_) e = c * e;
  return m;
}

PolyMatrix operator+(PolyMatrix x, const PolyMatrix& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix shape mismatch");
  for (std::size_t k = 0; k < x.e_.size(); ++k) x.e_[k] += y.e_[k];
  return x;
}

PolyMatrix operator-(PolyMatrix x, const PolyMatrix& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix shape mismatch");
  for (std::size_t k = 0; k < x.e_.size(); ++k) x.e_[k] -= y.e_[k];
  return x;
}

bool operator==(const PolyMatrix& x, const PolyMatrix& y) {
  return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.e_ == y.e_;
}

namespace {

Poly expand_rows(const PolyMatrix& m, std::vector<int>& cols_left, int row) {
  int n = m.rows();
  if (row == n) return Poly::constant(m.ring(), Scalar(1));
  if (row == n - 2) {
    int a = cols_left[0], b = cols_left[1];
    return m(row, a) * m(row + 1, b) - m(row, b) * m(row + 1, a);
  }
  Poly s(m.ring());
  for (std::size_t k = 0; k < cols_left.size(); ++k) {
    int c = cols_left[k];
    if (m(row, c).is_zero()) continue;
    std::vector<int> rest;
    for (std::size_t q = 0; q < cols_left.size(); ++q)
      if (q != k) rest.push_back(cols_left[q]);
    Poly minor = expand_rows(m, rest, row + 1);
    if (minor.is_zero()) continue;
    Poly t = m(row, c) * minor;
    if (k % 2) s -= t;
    else s += t;
  }
  return s;
}

}  // namespace

Poly determinant_expansion(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  std::vector<int> cols;
  for (int j = 0; j < m.cols(); ++j) cols.push_back(j);
  if (m.rows() == 1) return m(0, 0);
  return expand_rows(m, cols, 0);
}

Poly determinant_bareiss(const PolyMatrix& m0) {
  if (m0.rows() != m0.cols()) throw std::invalid_argument("determinant of non-square matrix");
  int n = m0.rows();
  if (n == 0) return Poly::constant(m0.ring(), Scalar(1));
  PolyMatrix m = m0;
  Poly prev = Poly::constant(m.ring(), Scalar(1));
  bool negate = false;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k).is_zero()) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (!m(i, k).is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) return Poly(m.ring());
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Poly num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        auto q = num.divide_exact(prev);
        if (!q) throw std::logic_error("Bareiss: inexact division");
        m(i, j) = std::move(*q);
      }
    prev = m(k, k);
  }
  Poly d = m(n - 1, n - 1);
  return negate ? -d : d;
}

Poly determinant(const PolyMatrix& m) {
  if (m.rows() <= 4) return determinant_expansion(m);
  return determinant_bareiss(m);
}

PolyMatrix adjugate(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("adjugate of non-square matrix");
  int n = m.rows();
  PolyMatrix adj(m.ring(), n, n);
  if (n == 1) {
    adj(0, 0) = Poly::constant(m.ring(), Scalar(1));
    return adj;
  }
  for (int i = 0; i < n; ++i) {
    PolyMatrix without_row = m.row_removed(i);
    for (int j = 0; j < n; ++j) {
      Poly c = determinant(without_row.column_removed(j));
      adj(j, i) = (i + j) % 2 ? -c : c;
    }
  }
  return adj;
}

PolyMatrix hessian(const Poly& f) {
  int n = f.nvars();
  PolyMatrix h(f.ring(), n, n);
  for (int i = 0; i < n; ++i) {
    Poly fi = f.differentiate(i);
    for (int j = i; j < n; ++j) {
      h(i, j) = fi.differentiate(j);
      h(j, i) = h(i, j);
    }
  }
  return h;
}

PolyMatrix jacobian(const std::vector<Poly>& fs) {
  if (fs.empty()) throw std::invalid_argument("jacobian of empty list");
  int n = fs.front().nvars();
  PolyMatrix j(fs.front().ring(), static_cast<int>(fs.size()), n);
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (int k = 0; k < n; ++k) j(static_cast<int>(i), k) = fs[i].differentiate(k);
  return j;
}

}  // namespace coxsaito
