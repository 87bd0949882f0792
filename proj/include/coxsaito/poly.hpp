#pragma once

#include "coxsaito/scalar.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace coxsaito {

constexpr int kMaxVars = 8;

struct ContextMismatch : std::invalid_argument {
  ContextMismatch() : std::invalid_argument("polynomial variable context mismatch") {}
};

struct Ring {
  std::vector<std::string> names;
  int nvars() const { return static_cast<int>(names.size()); }
};
using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> names);
// x1..xn or p1..pn style rings.
RingPtr indexed_ring(const std::string& stem, int n);
bool same_ring(const RingPtr& a, const RingPtr& b);

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};
  std::uint16_t deg = 0;

  static Monomial from(const std::vector<int>& exps);
  static Monomial unit(int i, int power = 1);
  int operator[](int i) const { return e[i]; }
  void set(int i, int v);
  int wdeg(const std::vector<int>& w) const;
  bool divides(const Monomial& o) const;
  friend Monomial operator*(const Monomial& a, const Monomial& b);
  // a / b, caller guarantees divisibility
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
  std::vector<int> exps(int n) const { return {e.begin(), e.begin() + n}; }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

// >0 when a is larger in degree-reverse-lex order.
int grevlex_cmp(const Monomial& a, const Monomial& b);
// Weighted degree first, then grevlex.
int wgrevlex_cmp(const Monomial& a, const Monomial& b, const std::vector<int>& w);

// All monomials in n variables with given weighted degree, grevlex-descending.
std::vector<Monomial> monomials_of_wdeg(int n, int d, const std::vector<int>& w);

struct Term {
  Monomial m;
  Scalar c;
};

class Poly {
 public:
  Poly() = default;
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}
  static Poly constant(RingPtr ring, const Scalar& c);
  static Poly var(RingPtr ring, int i);
  static Poly monomial(RingPtr ring, const Monomial& m, const Scalar& c);
  // canonicalizes: sorts, merges equal monomials, drops zeros
  static Poly from_terms(RingPtr ring, std::vector<Term> terms);
  // terms already strictly descending and nonzero
  static Poly from_sorted(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  int nvars() const { return ring_ ? ring_->nvars() : 0; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;
  const Term& leading() const { return terms_.front(); }
  Scalar coeff(const Monomial& m) const;
  int radicand() const;

  int degree() const;
  int wdegree(const std::vector<int>& w) const;
  bool is_homogeneous() const;
  bool is_homogeneous(const std::vector<int>& w) const;
  Poly homogeneous_part(int d, const std::vector<int>& w) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Scalar& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Scalar& c) { return a *= c; }
  friend Poly operator*(const Scalar& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);
  // a + c*m*b, the workhorse of reductions
  void add_scaled(const Poly& b, const Scalar& c, const Monomial& m);
  Poly mul_monomial(const Monomial& m, const Scalar& c) const;

  Poly pow(int k) const;
  Poly differentiate(int i) const;
  Poly substitute(const std::vector<Poly>& images) const;
  Scalar evaluate(const std::vector<Scalar>& point) const;
  // Exact quotient, or nullopt when g does not divide this.
  std::optional<Poly> divide_exact(const Poly& g) const;
  // Rename into another ring with the same number of variables, or embed
  // with variable offset into a larger ring.
  Poly rebase(RingPtr ring, int offset = 0) const;
  Poly monic() const;

  std::string to_string() const;

 private:
  void check_ring(const Poly& o) const;
  RingPtr ring_;
  std::vector<Term> terms_;
};

Poly mul_serial(const Poly& a, const Poly& b);

}  // namespace coxsaito
