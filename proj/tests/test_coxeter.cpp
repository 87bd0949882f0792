#include "coxsaito/coxeter.hpp"
#include "coxsaito/ideal.hpp"
#include "coxsaito/parse.hpp"
#include "coxsaito/saito.hpp"

#include "doctest.h"
#include "generators.hpp"

#include <map>
#include <numeric>

using namespace coxsaito;

namespace {

const std::vector<std::string> kCatalog{"A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "H3", "F4",
                                        "I2(5)", "I2(6)", "I2(7)", "I2(8)"};

const std::map<std::string, long long> kOrders{{"A1", 2},    {"A2", 6},     {"A3", 24},    {"A4", 120},
                                               {"B2", 8},    {"B3", 48},    {"B4", 384},   {"D4", 192},
                                               {"H3", 120},  {"F4", 1152},  {"I2(5)", 10}, {"I2(6)", 12},
                                               {"I2(7)", 14}, {"I2(8)", 16}};

const std::map<std::string, std::vector<int>> kDegrees{
    {"A1", {2}},          {"A2", {2, 3}},       {"A3", {2, 3, 4}},     {"A4", {2, 3, 4, 5}},
    {"B2", {2, 4}},       {"B3", {2, 4, 6}},    {"B4", {2, 4, 6, 8}},  {"D4", {2, 4, 4, 6}},
    {"H3", {2, 6, 10}},   {"F4", {2, 6, 8, 12}}, {"I2(5)", {2, 5}},    {"I2(6)", {2, 6}},
    {"I2(7)", {2, 7}},    {"I2(8)", {2, 8}}};

// x -> Mx on a polynomial
Poly act(const ScalarMatrix& m, const Poly& f) {
  std::vector<Poly> images;
  for (int i = 0; i < m.rows; ++i) {
    Poly row(f.ring());
    for (int j = 0; j < m.cols; ++j)
      if (!m(i, j).is_zero()) row += Poly::var(f.ring(), j) * m(i, j);
    images.push_back(row);
  }
  return f.substitute(images);
}

ScalarMatrix element(const CoxeterDatum& d, std::size_t k) {
  ScalarMatrix m(d.rank, d.rank);
  m.a = d.elements[k];
  return m;
}

}  // namespace

TEST_CASE("type parsing") {
  CHECK(CoxeterType::parse("A1^3").factors.size() == 3);
  CHECK(CoxeterType::parse("B2xI2(5)").rank() == 4);
  CHECK(CoxeterType::parse("I2(5)").name() == "I2(5)");
  CHECK_THROWS_AS(CoxeterType::parse("E6"), UnsupportedType);
  CHECK_THROWS_AS(CoxeterType::parse("E8"), UnsupportedType);
  CHECK_THROWS(CoxeterType::parse("Q3"));
}

TEST_CASE("A1 datum") {
  auto d = build_datum("A1");
  CHECK(d.rank == 1);
  CHECK(d.order == 2);
  CHECK(d.degrees == std::vector<int>{2});
  CHECK(d.delta.degree() == 1);
  CHECK(d.delta.size() == 1);
}

TEST_CASE("catalog orders, degrees and |W| = product of degrees") {
  for (const auto& t : kCatalog) {
    CAPTURE(t);
    auto d = build_datum(t);
    CHECK(d.order == kOrders.at(t));
    CHECK(d.degrees == kDegrees.at(t));
    long long prod = 1;
    for (int w : d.degrees) prod *= w;
    CHECK(prod == d.order);
    CHECK(std::accumulate(d.exponents.begin(), d.exponents.end(), 0) == d.hyperplane_count());
    CHECK(d.delta.degree() == d.hyperplane_count());
    const int l = d.rank, h = d.coxeter_number();
    CHECK(d.exponents.front() == 1);
    CHECK(d.exponents.back() == h - 1);
    for (int i = 0; i < l; ++i) CHECK(d.exponents[i] + d.exponents[l - 1 - i] == h);
  }
}

TEST_CASE("H3 and I2(5) data") {
  auto h3 = build_datum("H3");
  CHECK(h3.hyperplane_count() == 15);
  CHECK(h3.exponents == std::vector<int>{1, 5, 9});
  CHECK(h3.coxeter_number() == 10);
  CHECK(h3.order == 120);
  CHECK(h3.radicand == 5);

  auto i5 = build_datum("I2(5)");
  CHECK(i5.coxeter_number() == 5);
  CHECK(i5.degrees == std::vector<int>{2, 5});
  CHECK(i5.delta.degree() == 5);
  CHECK(squarefree_test(i5.delta));
}

TEST_CASE("reflections among the group elements number #A") {
  // an element is a reflection iff M - I has rank one
  for (const auto& t : {"A2", "A3", "B3", "D4", "H3", "I2(6)"}) {
    CAPTURE(t);
    auto d = build_datum(t);
    REQUIRE(static_cast<long long>(d.elements.size()) == d.order);
    int refl = 0;
    for (std::size_t k = 0; k < d.elements.size(); ++k) {
      ScalarMatrix m = element(d, k);
      for (int i = 0; i < d.rank; ++i) m(i, i) -= Scalar(1);
      if (rank(m) == 1) ++refl;
    }
    CHECK(refl == d.hyperplane_count());
  }
}

TEST_CASE("every element preserves the Gram form") {
  for (const auto& t : {"A3", "B3", "H3"}) {
    auto d = build_datum(t);
    for (std::size_t k = 0; k < d.elements.size(); k += 7) {
      ScalarMatrix m = element(d, k);
      CHECK(m.transpose() * d.gram * m == d.gram);
    }
  }
}

TEST_CASE("basic invariants are invariant and det J = c Delta") {
  for (const auto& t : kCatalog) {
    CAPTURE(t);
    auto d = build_datum(t);
    for (const auto& p : d.invariants) {
      CHECK(is_invariant(p, d));
      for (const auto& s : d.simple_reflections) CHECK(act(s, p) == p);
    }
    Poly det = determinant(jacobian(d));
    CHECK_FALSE(d.jacobian_constant.is_zero());
    CHECK(det == d.delta * d.jacobian_constant);
  }
}

TEST_CASE("Delta is the product of the mirror forms and squarefree") {
  for (const auto& t : {"A2", "A3", "B2", "B3", "D4", "H3"}) {
    CAPTURE(t);
    auto d = build_datum(t);
    REQUIRE(static_cast<int>(d.mirrors.size()) == d.hyperplane_count());
    Poly prod = Poly::constant(d.ring, Scalar(1));
    for (const auto& m : d.mirrors) prod *= m;
    Scalar c = d.delta.leading().c / prod.leading().c;
    CHECK(d.delta == prod * c);
    CHECK(squarefree_test(d.delta));
  }
}

TEST_CASE("Delta is anti-invariant") {
  for (const auto& t : {"A3", "B3", "H3", "I2(5)"}) {
    auto d = build_datum(t);
    for (const auto& s : d.simple_reflections) CHECK(act(s, d.delta) == -d.delta);
  }
}

TEST_CASE("Reynolds examples") {
  auto b2 = build_datum("B2");
  Poly x1 = Poly::var(b2.ring, 0), x2 = Poly::var(b2.ring, 1);
  CHECK(reynolds_average(x1 * x1, b2) == (x1 * x1 + x2 * x2) * Scalar::fraction(1, 2));

  auto a2 = build_datum("A2");
  CHECK(reynolds_average(Poly::var(a2.ring, 0), a2).is_zero());
  for (const auto& p : a2.invariants) CHECK(reynolds_average(p, a2) == p);
}

TEST_CASE("Reynolds is idempotent and lands in the invariants") {
  gen::Rng rng(7);
  for (const auto& t : {"A2", "B2", "A3", "I2(5)"}) {
    auto d = build_datum(t);
    for (int k = 0; k < 4; ++k) {
      Poly f = gen::poly(rng, d.ring, static_cast<int>(rng.uniform(1, 6)), 4);
      Poly r = reynolds_average(f, d);
      CHECK(is_invariant(r, d));
      CHECK(reynolds_average(r, d) == r);
    }
  }
}

TEST_CASE("Reynolds average matches the explicit orbit sum") {
  auto d = build_datum("B3");
  gen::Rng rng(11);
  Poly f = gen::poly(rng, d.ring, 4, 5);
  Poly sum(d.ring);
  for (std::size_t k = 0; k < d.elements.size(); ++k) sum += act(element(d, k), f);
  CHECK(reynolds_average(f, d) == sum * Scalar::fraction(1, static_cast<long>(d.order)));
}

TEST_CASE("classical invariants of B and D") {
  auto b3 = build_datum("B3");
  RingPtr r = b3.ring;
  Poly s1 = Poly(r), s2 = Poly(r), s3 = Poly::constant(r, Scalar(1));
  std::vector<Poly> sq;
  for (int i = 0; i < 3; ++i) sq.push_back(Poly::var(r, i) * Poly::var(r, i));
  s1 = sq[0] + sq[1] + sq[2];
  s2 = sq[0] * sq[1] + sq[0] * sq[2] + sq[1] * sq[2];
  s3 = sq[0] * sq[1] * sq[2];
  // elementary symmetric functions of the squares have the same Jacobian up to a constant
  Poly det = determinant(jacobian(std::vector<Poly>{s1, s2, s3}));
  auto q = det.divide_exact(b3.delta);
  REQUIRE(q);
  CHECK(q->is_constant());

  auto d4 = build_datum("D4");
  Poly prod = Poly::constant(d4.ring, Scalar(1));
  for (int i = 0; i < 4; ++i) prod *= Poly::var(d4.ring, i);
  CHECK(is_invariant(prod, d4));
}

TEST_CASE("product types are orthogonal direct sums") {
  auto a2 = build_datum("A2");
  auto b2 = build_datum("B2");
  auto p = build_datum("A2xB2");
  CHECK(p.rank == 4);
  CHECK(p.order == a2.order * b2.order);
  CHECK(p.hyperplane_count() == a2.hyperplane_count() + b2.hyperplane_count());
  CHECK(p.blocks.size() == 2);
  Poly da = a2.delta.rebase(p.ring, 0), db = b2.delta.rebase(p.ring, 2);
  Poly prod = da * db;
  CHECK(p.delta == prod * (p.delta.leading().c / prod.leading().c));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(p.gram(i, 2 + j).is_zero());
  for (const auto& f : p.invariants) CHECK(is_invariant(f, p));
}

TEST_CASE("stabilizer components") {
  auto a3 = build_datum("A3");
  auto at = [&](std::vector<long> v) {
    std::vector<Scalar> x;
    for (long c : v) x.push_back(Scalar(c));
    return stabilizer_components(a3, x);
  };
  // ambient (x1, x2, x3, -x1-x2-x3)
  CHECK(at({1, 2, 4}).count() == 0);
  auto two = at({1, 1, -1});  // (1, 1, -1, -1)
  REQUIRE(two.count() == 2);
  CHECK(two.components[0].type == "A1");
  CHECK(two.components[1].type == "A1");
  auto a2 = at({1, 1, 1});  // (1, 1, 1, -3)
  REQUIRE(a2.count() == 1);
  CHECK(a2.components[0].type == "A2");
  auto origin = at({0, 0, 0});
  REQUIRE(origin.count() == 1);
  CHECK(origin.components[0].type == "A3");

  auto pr = build_datum("A1^3");
  CHECK(stabilizer_components(pr, {Scalar(0), Scalar(0), Scalar(0)}).count() == 3);
  CHECK(stabilizer_components(pr, {Scalar(0), Scalar(2), Scalar(0)}).count() == 2);

  auto h3 = build_datum("H3");
  auto hz = stabilizer_components(h3, std::vector<Scalar>(3, Scalar(0)));
  REQUIRE(hz.count() == 1);
  CHECK(hz.components[0].type == "H3");
}

TEST_CASE("root system classification") {
  CHECK(classify_root_system(1, 1) == "A1");
  CHECK(classify_root_system(2, 3) == "A2");
  CHECK(classify_root_system(2, 4) == "B2");
  CHECK(classify_root_system(3, 6) == "A3");
  CHECK(classify_root_system(3, 9) == "B3");
  CHECK(classify_root_system(3, 15) == "H3");
}

TEST_CASE("stabilizer count of a generic point on one mirror is one") {
  for (const auto& t : {"A3", "B3", "H3"}) {
    auto d = build_datum(t);
    gen::Rng rng(5);
    for (std::size_t r = 0; r < d.roots.size(); r += 3) {
      std::vector<Scalar> x(d.rank);
      for (auto& v : x) v = Scalar(rng.uniform(-9, 9));
      Scalar num = d.mirrors[r].evaluate(x), den = d.mirrors[r].evaluate(d.roots[r]);
      for (int k = 0; k < d.rank; ++k) x[k] -= num / den * d.roots[r][k];
      auto st = stabilizer_components(d, x);
      CHECK(st.count() >= 1);
      if (st.count() == 1 && st.components[0].roots.size() == 1) CHECK(st.components[0].type == "A1");
    }
  }
}
