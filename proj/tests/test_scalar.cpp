#include "coxsaito/scalar.hpp"

#include <cmath>

#include "doctest.h"
#include "generators.hpp"

using coxsaito::Scalar;

namespace {
Scalar q(long n, long d) { return Scalar::fraction(n, d); }
Scalar quad(long an, long ad, long bn, long bd, int d = 5) {
  return Scalar::quadratic(mpq_class(an, ad), mpq_class(bn, bd), d);
}
}  // namespace

TEST_CASE("rational arithmetic") {
  CHECK(q(1, 2) + q(1, 3) == q(5, 6));
  CHECK(q(1, 2) - q(1, 3) == q(1, 6));
  CHECK(q(2, 4).a().get_den() == 2);
  CHECK(q(3, -6) == q(-1, 2));
  CHECK(q(3, -6).a().get_den() > 0);
}

TEST_CASE("defining relation of sqrt5 and the golden ratio") {
  Scalar s = Scalar::sqrt_of(5);
  CHECK(s * s == Scalar(5));
  CHECK((s * s).is_rational());
  Scalar tau = quad(1, 2, 1, 2);
  CHECK(tau * tau == quad(3, 2, 1, 2));
  CHECK(tau * tau == tau + Scalar(1));
}

TEST_CASE("inversion") {
  CHECK(q(2, 3).inverse() == q(3, 2));
  CHECK((Scalar(1) + Scalar::sqrt_of(5)).inverse() == quad(-1, 4, 1, 4));
  CHECK_THROWS_AS(Scalar().inverse(), coxsaito::DivisionByZero);
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), coxsaito::DivisionByZero);
}

TEST_CASE("other radicands and mismatches") {
  Scalar r2 = Scalar::sqrt_of(2), r3 = Scalar::sqrt_of(3);
  CHECK(r2 * r2 == Scalar(2));
  CHECK(r3 * r3 == Scalar(3));
  CHECK_THROWS_AS(r2 + r3, coxsaito::FieldMismatch);
  CHECK_THROWS(Scalar::sqrt_of(7));
  CHECK((r2 - r2).is_rational());
}

TEST_CASE("field axioms on random triples") {
  gen::Rng rng(11);
  for (int d : {0, 2, 3, 5})
    for (int trial = 0; trial < 200; ++trial) {
      Scalar a = gen::scalar(rng, d), b = gen::scalar(rng, d), c = gen::scalar(rng, d);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a - a == Scalar());
      if (!a.is_zero()) CHECK(a * a.inverse() == Scalar(1));
      Scalar acc = a;
      acc.add_product(b, c);
      CHECK(acc == a + b * c);
    }
}

TEST_CASE("conjugation is a field automorphism") {
  gen::Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    Scalar x = gen::scalar(rng, 5), y = gen::scalar(rng, 5);
    CHECK((x * y).conj() == x.conj() * y.conj());
    CHECK((x + y).conj() == x.conj() + y.conj());
    CHECK((x * x.conj()).is_rational());
  }
}

TEST_CASE("sign under the real embedding") {
  CHECK(Scalar::quadratic(1, -1, 5).sign() == -1);
  CHECK(Scalar::quadratic(3, -1, 5).sign() == 1);
  CHECK(Scalar::quadratic(-2, 1, 3).sign() == -1);
  CHECK(Scalar::quadratic(0, -1, 2).sign() == -1);
  CHECK(Scalar(0).sign() == 0);
  CHECK(Scalar::fraction(-1, 3).sign() == -1);
  // agrees with a floating-point evaluation on random elements
  gen::Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    Scalar s = gen::scalar(rng, 5);
    double v = s.a().get_d() + s.b().get_d() * std::sqrt(5.0);
    CHECK(s.sign() == (v > 0) - (v < 0));
  }
}
