#pragma once

// Hand-rolled random generators for the property tests. Seeds are fixed so a
// failure reproduces.

#include "coxsaito/poly.hpp"
#include "coxsaito/poly_matrix.hpp"

#include <random>

namespace gen {

using coxsaito::Monomial;
using coxsaito::Poly;
using coxsaito::RingPtr;
using coxsaito::Scalar;

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng); }
};

inline Scalar rational(Rng& r, long range = 9) {
  long den = r.uniform(1, 6);
  return Scalar(mpq_class(r.uniform(-range, range), den));
}

// rational or element of Q(sqrt d)
inline Scalar scalar(Rng& r, int d = 0) {
  if (d == 0) return rational(r);
  Scalar a = rational(r), b = rational(r);
  return Scalar::quadratic(a.a(), b.a(), d);
}

inline Scalar nonzero(Rng& r, int d = 0) {
  for (;;) {
    Scalar s = scalar(r, d);
    if (!s.is_zero()) return s;
  }
}

inline Poly poly(Rng& r, const RingPtr& ring, int max_deg, int nterms, int d = 0) {
  std::vector<coxsaito::Term> terms;
  for (int k = 0; k < nterms; ++k) {
    Monomial m;
    int left = static_cast<int>(r.uniform(0, max_deg));
    for (int i = 0; i < ring->nvars() && left > 0; ++i) {
      int e = i + 1 == ring->nvars() ? left : static_cast<int>(r.uniform(0, left));
      m.set(i, e);
      left -= e;
    }
    terms.push_back({m, scalar(r, d)});
  }
  return Poly::from_terms(ring, std::move(terms));
}

inline Poly homogeneous(Rng& r, const RingPtr& ring, int deg, int nterms, int d = 0) {
  std::vector<coxsaito::Term> terms;
  auto monos = coxsaito::monomials_of_wdeg(ring->nvars(), deg, std::vector<int>(ring->nvars(), 1));
  for (int k = 0; k < nterms; ++k)
    terms.push_back({monos[static_cast<std::size_t>(r.uniform(0, static_cast<long>(monos.size()) - 1))], scalar(r, d)});
  return Poly::from_terms(ring, std::move(terms));
}

inline coxsaito::PolyMatrix matrix(Rng& r, const RingPtr& ring, int n, int max_deg, int nterms) {
  coxsaito::PolyMatrix m(ring, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = poly(r, ring, max_deg, nterms);
  return m;
}

}  // namespace gen
