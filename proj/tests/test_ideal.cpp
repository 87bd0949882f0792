#include "coxsaito/ideal.hpp"
#include "coxsaito/parse.hpp"

#include "doctest.h"
#include "generators.hpp"

using namespace coxsaito;

namespace {
RingPtr xy() {
  static RingPtr r = make_ring({"x", "y"});
  return r;
}
RingPtr xyz() {
  static RingPtr r = make_ring({"x", "y", "z"});
  return r;
}
Poly P(const std::string& s) { return parse_poly(xy(), s); }
Poly Q(const std::string& s) { return parse_poly(xyz(), s); }
}  // namespace

TEST_CASE("graded membership examples") {
  auto ideal = IdealBasis::graded(xy(), {P("x")});
  Membership m = graded_membership(P("x^2"), ideal);
  REQUIRE(m.member());
  CHECK(m.witness->cofactors()[0] == P("x"));

  auto sq = IdealBasis::graded(xy(), {P("x^2"), P("y^2")});
  CHECK(graded_membership(P("x"), sq).status == MembershipStatus::NonMember);
  CHECK_THROWS_AS(graded_membership(P("x^2+y"), sq), NonHomogeneous);
}

TEST_CASE("non-membership comes with a verified separator on the modular path") {
  auto sq = IdealBasis::graded(xy(), {P("x^2"), P("y^2")});
  EngineOptions opt;
  opt.method = SolveMethod::Modular;
  Membership m = graded_membership(P("x*y"), sq, opt);
  CHECK(m.status == MembershipStatus::NonMember);
  REQUIRE(m.separator);
  CHECK(verify_separator(P("x*y"), sq.gens, sq.weights, *m.separator));
}

TEST_CASE("weighted grading") {
  // weights 2,3: x^3 and y^2 both have degree 6
  auto ideal = IdealBasis::graded(xy(), {P("x^3-y^2")}, {2, 3});
  Membership m = graded_membership(P("x^6-x^3*y^2"), ideal);
  REQUIRE(m.member());
  CHECK(m.witness->cofactors()[0] == P("x^3"));
}

TEST_CASE("exact and modular membership agree with Groebner reduction") {
  gen::Rng rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    Poly f = gen::homogeneous(rng, xyz(), 2, 3), g = gen::homogeneous(rng, xyz(), 3, 3);
    if (f.is_zero() || g.is_zero()) continue;
    auto ideal = IdealBasis::graded(xyz(), {f, g});
    IdealBasis gb = groebner_basis(ideal);
    for (int k = 0; k < 3; ++k) {
      Poly target = gen::homogeneous(rng, xyz(), 4, 2) * f + gen::homogeneous(rng, xyz(), 3, 2) * g;
      if (k == 2) target += gen::homogeneous(rng, xyz(), 5, 2);
      if (!target.is_homogeneous()) continue;
      bool by_gb = normal_form(target, gb).is_zero();
      for (SolveMethod method : {SolveMethod::Exact, SolveMethod::Modular}) {
        EngineOptions opt;
        opt.method = method;
        Membership m = graded_membership(target, ideal, opt);
        CHECK(m.member() == by_gb);
        if (m.member()) CHECK(m.witness->verify());
        if (!m.member() && m.separator) CHECK(verify_separator(target, ideal.gens, ideal.weights, *m.separator));
      }
    }
  }
}

TEST_CASE("modular path reconstructs quadratic-field witnesses") {
  Poly s = Q("sqrt(5)*x^2 + 1/3*y*z - z^2");
  Poly t = Q("x*y - (1+sqrt(5))/2*z^2");
  auto ideal = IdealBasis::graded(xyz(), {s, t});
  Poly target = Q("(x - 2/7*sqrt(5)*y)") * s + Q("(3*z + sqrt(5)*x)") * t;
  EngineOptions opt;
  opt.method = SolveMethod::Modular;
  Membership m = graded_membership(target, ideal, opt);
  REQUIRE(m.member());
  CHECK(m.witness->verify());
}

TEST_CASE("Groebner basis examples") {
  IdealBasis gb = groebner_basis(IdealBasis::plain(xy(), {P("x-1"), P("y-x")}));
  REQUIRE(gb.gens.size() == 2);
  CHECK(gb.groebner);
  bool has_x = false, has_y = false;
  for (const auto& g : gb.gens) {
    has_x |= g == P("x-1");
    has_y |= g == P("y-1");
  }
  CHECK(has_x);
  CHECK(has_y);
}

TEST_CASE("B3 fixture ideal") {
  auto ideal = IdealBasis::graded(xyz(), {Q("x^2*y-4*y^2+3*x*z"), Q("x^2*z-3*y*z"), Q("x*y*z-9*z^2")}, {1, 2, 3});
  IdealBasis gb = groebner_basis(ideal);
  CHECK(ideal_equal(ideal, gb));
  CHECK(ideal_equal(ideal, ideal));
  for (const auto& g : ideal.gens) CHECK(normal_form(g, gb).is_zero());
  CHECK(krull_dimension(ideal) == 1);
}

TEST_CASE("Buchberger result is closed under S-pair reduction") {
  gen::Rng rng(32);
  for (int trial = 0; trial < 6; ++trial) {
    Poly f = gen::poly(rng, xyz(), 3, 3), g = gen::poly(rng, xyz(), 3, 3);
    IdealBasis gb = groebner_basis(IdealBasis::plain(xyz(), {f, g}));
    // oracle: every S-polynomial of the output reduces to zero
    for (std::size_t i = 0; i < gb.gens.size(); ++i)
      for (std::size_t j = i + 1; j < gb.gens.size(); ++j) {
        const Term& a = gb.gens[i].leading();
        const Term& b = gb.gens[j].leading();
        Monomial l = lcm(a.m, b.m);
        Poly sp = gb.gens[i].mul_monomial(l / a.m, a.c.inverse()) - gb.gens[j].mul_monomial(l / b.m, b.c.inverse());
        CHECK(normal_form(sp, gb).is_zero());
      }
    CHECK(normal_form(f, gb).is_zero());
    CHECK(normal_form(g, gb).is_zero());
  }
}

TEST_CASE("normal form examples and properties") {
  IdealBasis gx = groebner_basis(IdealBasis::plain(xy(), {P("x")}));
  CHECK(normal_form(P("x^2"), gx).is_zero());
  IdealBasis gxy = groebner_basis(IdealBasis::plain(xy(), {P("x-y")}));
  CHECK(normal_form(P("x+y"), gxy) == P("2*y"));
  CHECK_THROWS(normal_form(P("x"), IdealBasis::plain(xy(), {P("x")})));

  gen::Rng rng(33);
  IdealBasis gb = groebner_basis(IdealBasis::plain(xyz(), {Q("x^2-y*z"), Q("y^3-x*z+1")}));
  for (int trial = 0; trial < 15; ++trial) {
    Poly f = gen::poly(rng, xyz(), 4, 5), g = gen::poly(rng, xyz(), 4, 5);
    Scalar a = gen::scalar(rng), b = gen::scalar(rng);
    Poly nf = normal_form(f, gb);
    CHECK(normal_form(nf, gb) == nf);
    CHECK(normal_form(f * a + g * b, gb) == normal_form(f, gb) * a + normal_form(g, gb) * b);
    // no term of the normal form is divisible by a leading term
    for (const auto& t : nf.terms())
      for (const auto& h : gb.gens) CHECK_FALSE(h.leading().m.divides(t.m));
  }
}

TEST_CASE("ideal equality") {
  CHECK(ideal_equal(IdealBasis::graded(xy(), {P("x"), P("y")}), IdealBasis::graded(xy(), {P("x+y"), P("x-y")})));
  CHECK_FALSE(ideal_equal(IdealBasis::graded(xy(), {P("x")}), IdealBasis::graded(xy(), {P("x^2")})));
  CHECK(ideal_equal(IdealBasis::plain(xy(), {P("x-1"), P("y-x")}), IdealBasis::plain(xy(), {P("x-1"), P("y-1")})));
}

TEST_CASE("Krull dimension") {
  CHECK(krull_dimension(IdealBasis::plain(xy(), {P("x"), P("y")})) == 0);
  CHECK(krull_dimension(IdealBasis::plain(xy(), {P("x")})) == 1);
  CHECK(krull_dimension(IdealBasis::plain(xyz(), {Q("x*y"), Q("x*z")})) == 2);
  CHECK(krull_dimension(IdealBasis::plain(xy(), {P("x"), P("x-1")})) == -1);
}

TEST_CASE("leading-term dimension survives interreduction") {
  gen::Rng rng(34);
  for (int trial = 0; trial < 6; ++trial) {
    Poly f = gen::homogeneous(rng, xyz(), 2, 3), g = gen::homogeneous(rng, xyz(), 2, 3);
    IdealBasis a = IdealBasis::plain(xyz(), {f, g});
    IdealBasis b = IdealBasis::plain(xyz(), {f, g, f + g, f * Q("x")});
    CHECK(krull_dimension(a) == krull_dimension(b));
  }
}

TEST_CASE("squarefree test") {
  CHECK_FALSE(squarefree_test(P("x^2")));
  CHECK(squarefree_test(P("x*y")));
  CHECK_FALSE(squarefree_test(Q("(x-y)^2*z")));
  CHECK(squarefree_test(Q("x^3+y^3+z^3")));
  CHECK_THROWS(squarefree_test(Poly(xy())));
}

TEST_CASE("distinct roots") {
  RingPtr t = make_ring({"t"});
  CHECK(distinct_root_count(parse_poly(t, "t^2*(t-1)")) == 2);
  CHECK(distinct_root_count(parse_poly(t, "t^3-1")) == 3);
  CHECK(distinct_root_count(parse_poly(t, "(t-1)^4*(t^2-5)")) == 3);
  CHECK(distinct_root_count(parse_poly(t, "t^2-2*sqrt(5)*t+5")) == 1);
  CHECK_THROWS(distinct_root_count(Poly(t)));
}

TEST_CASE("budget exhaustion is distinguishable") {
  Budget tiny(5);
  EngineOptions opt;
  opt.budget = &tiny;
  opt.method = SolveMethod::Exact;
  auto ideal = IdealBasis::graded(xyz(), {Q("x^2+y*z"), Q("y^2-x*z"), Q("z^2+x*y")});
  Membership m = graded_membership(Q("x^5*y+z^6"), ideal, opt);
  CHECK(m.status == MembershipStatus::BudgetExhausted);
  Budget tiny2(5);
  CHECK_THROWS_AS(groebner_basis(ideal, &tiny2), BudgetExhausted);
}
