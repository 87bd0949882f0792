#include "coxsaito/parse.hpp"
#include "coxsaito/poly.hpp"
#include "coxsaito/poly_matrix.hpp"

#include "doctest.h"
#include "generators.hpp"

using namespace coxsaito;

namespace {
RingPtr xy() {
  static RingPtr r = make_ring({"x", "y"});
  return r;
}
Poly P(const std::string& s) { return parse_poly(xy(), s); }
}  // namespace

TEST_CASE("arithmetic examples") {
  CHECK(P("(x+y)*(x-y)") == P("x^2-y^2"));
  CHECK((P("x^3+2*y") * Poly(xy())).is_zero());
  CHECK(P("(x^2+y^2)*(x^2+y^2)") == P("x^4+2*x^2*y^2+y^4"));
  Poly f = P("x^2*y+3*x*y^2"), g = P("x-y");
  CHECK((f * g).is_homogeneous());
  CHECK((f * g).degree() == 4);
  CHECK_THROWS_AS(P("x") + parse_poly(make_ring({"u", "v"}), "u"), ContextMismatch);
}

TEST_CASE("canonical grevlex storage") {
  Poly f = P("y^2 + x*y + x^2 + y + x + 1");
  std::vector<std::vector<int>> expected{{2, 0}, {1, 1}, {0, 2}, {1, 0}, {0, 1}, {0, 0}};
  REQUIRE(f.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(f.terms()[i].m.exps(2) == expected[i]);
  RingPtr r3 = indexed_ring("x", 3);
  // grevlex: x1*x3 < x2^2 since the last variable is penalised
  CHECK(grevlex_cmp(Monomial::from({0, 2, 0}), Monomial::from({1, 0, 1})) > 0);
}

TEST_CASE("differentiate") {
  RingPtr r = indexed_ring("x", 3);
  CHECK(parse_poly(r, "x1^2+x2^2").differentiate(0) == parse_poly(r, "2*x1"));
  CHECK(parse_poly(r, "x1*x2*x3").differentiate(1) == parse_poly(r, "x1*x3"));
  CHECK_THROWS_AS(parse_poly(r, "x1").differentiate(3), std::out_of_range);
}

TEST_CASE("Euler identity on random homogeneous polynomials") {
  gen::Rng rng(21);
  RingPtr r = indexed_ring("x", 3);
  for (int trial = 0; trial < 30; ++trial) {
    int d = static_cast<int>(rng.uniform(0, 7));
    Poly f = gen::homogeneous(rng, r, d, 6, trial % 2 ? 5 : 0);
    Poly euler(r);
    for (int i = 0; i < 3; ++i) euler += Poly::var(r, i) * f.differentiate(i);
    CHECK(euler == f * Scalar(d));
  }
}

TEST_CASE("substitute") {
  RingPtr uv = make_ring({"u", "v"});
  CHECK(parse_poly(uv, "u*v").substitute({P("x^2"), P("y^2")}) == P("x^2*y^2"));
  Poly p1 = P("x^2+y^2");
  CHECK(p1.substitute({P("y"), P("x")}) == p1);
  CHECK_THROWS_AS(p1.substitute({P("x")}), std::invalid_argument);
}

TEST_CASE("substitute is a ring homomorphism") {
  gen::Rng rng(22);
  RingPtr r = indexed_ring("x", 3);
  RingPtr s = make_ring({"x", "y"});
  for (int trial = 0; trial < 25; ++trial) {
    Poly f = gen::poly(rng, r, 3, 5), g = gen::poly(rng, r, 3, 5);
    std::vector<Poly> images;
    for (int i = 0; i < 3; ++i) images.push_back(gen::poly(rng, s, 2, 3));
    CHECK((f * g).substitute(images) == f.substitute(images) * g.substitute(images));
    CHECK((f + g).substitute(images) == f.substitute(images) + g.substitute(images));
  }
}

TEST_CASE("evaluate agrees with substitution by constants") {
  CHECK(P("x^2-y").evaluate({Scalar(2), Scalar(3)}) == Scalar(1));
  gen::Rng rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    Poly f = gen::poly(rng, xy(), 4, 6, 5);
    Scalar a = gen::scalar(rng, 5), b = gen::scalar(rng, 5);
    Poly c = f.substitute({Poly::constant(xy(), a), Poly::constant(xy(), b)});
    CHECK(c.constant_term() == f.evaluate({a, b}));
  }
  CHECK_THROWS_AS(P("x").evaluate({Scalar(1)}), std::invalid_argument);
}

TEST_CASE("exact division") {
  Poly f = P("x^2-y^2"), g = P("x-y");
  auto q = f.divide_exact(g);
  REQUIRE(q);
  CHECK(*q == P("x+y"));
  CHECK_FALSE(P("x^2+y^2").divide_exact(g));
}

TEST_CASE("determinant examples") {
  CHECK(determinant(PolyMatrix::identity(xy(), 3)) == Poly::constant(xy(), Scalar(1)));
  RingPtr r = indexed_ring("x", 5);
  PolyMatrix d(r, 5, 5);
  for (int i = 0; i < 5; ++i) d(i, i) = Poly::var(r, i);
  CHECK(determinant(d) == parse_poly(r, "x1*x2*x3*x4*x5"));
  CHECK_THROWS_AS(determinant(PolyMatrix(xy(), 2, 3)), std::invalid_argument);
}

TEST_CASE("adjugate examples") {
  RingPtr r = make_ring({"a", "b", "c", "d"});
  PolyMatrix m(r, 2, 2);
  m(0, 0) = parse_poly(r, "a");
  m(0, 1) = parse_poly(r, "b");
  m(1, 0) = parse_poly(r, "c");
  m(1, 1) = parse_poly(r, "d");
  PolyMatrix adj = adjugate(m);
  CHECK(adj(0, 0) == parse_poly(r, "d"));
  CHECK(adj(0, 1) == parse_poly(r, "-b"));
  CHECK(adj(1, 0) == parse_poly(r, "-c"));
  CHECK(adj(1, 1) == parse_poly(r, "a"));
  CHECK(adjugate(PolyMatrix::identity(r, 3)) == PolyMatrix::identity(r, 3));
}

TEST_CASE("Cramer identity on random 3x3 and 4x4 matrices") {
  gen::Rng rng(24);
  RingPtr r = indexed_ring("x", 3);
  for (int n : {3, 4})
    for (int trial = 0; trial < 4; ++trial) {
      PolyMatrix m = gen::matrix(rng, r, n, 2, 3);
      Poly det = determinant(m);
      PolyMatrix lhs = m * adjugate(m);
      CHECK(lhs == det * PolyMatrix::identity(r, n) + PolyMatrix(r, n, n));
      CHECK(determinant_bareiss(m) == det);
    }
}

TEST_CASE("determinant is multiplicative") {
  gen::Rng rng(25);
  RingPtr r = make_ring({"x", "y"});
  for (int trial = 0; trial < 5; ++trial) {
    PolyMatrix a = gen::matrix(rng, r, 3, 2, 2), b = gen::matrix(rng, r, 3, 2, 2);
    CHECK(determinant(a * b) == determinant(a) * determinant(b));
  }
  PolyMatrix a = gen::matrix(rng, r, 5, 1, 2), b = gen::matrix(rng, r, 5, 1, 2);
  CHECK(determinant(a * b) == determinant(a) * determinant(b));
}

TEST_CASE("hessian") {
  CHECK(hessian(P("x^2+y^2")) == Scalar(2) * PolyMatrix::identity(xy(), 2));
  PolyMatrix h = hessian(P("x*y"));
  CHECK(h(0, 0).is_zero());
  CHECK(h(0, 1) == P("1"));
  CHECK(h(1, 0) == P("1"));
  CHECK(h(1, 1).is_zero());
}

TEST_CASE("scalar matrices") {
  ScalarMatrix m(2, 2);
  m(0, 0) = Scalar(1);
  m(0, 1) = Scalar(2);
  m(1, 0) = Scalar(3);
  m(1, 1) = Scalar(4);
  CHECK(determinant(m) == Scalar(-2));
  CHECK(m * inverse(m) == ScalarMatrix::identity(2));
  m(1, 0) = Scalar(2);
  m(1, 1) = Scalar(4);
  CHECK(rank(m) == 1);
  ScalarMatrix k = kernel(m);
  REQUIRE(k.cols == 1);
  CHECK((m * k)(0, 0).is_zero());
}
