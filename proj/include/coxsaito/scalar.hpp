#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coxsaito {

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by zero") {}
};

struct FieldMismatch : std::domain_error {
  FieldMismatch(int d1, int d2)
      : std::domain_error("field mismatch: Q(sqrt " + std::to_string(d1) +
                          ") vs Q(sqrt " + std::to_string(d2) + ")") {}
};

// a + b*sqrt(d). d == 0 marks a plain rational (b == 0); otherwise d is one of
// the supported squarefree radicands and b != 0.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : a_(v) {}
  Scalar(int v) : a_(v) {}
  explicit Scalar(mpq_class q) : a_(std::move(q)) { a_.canonicalize(); }
  static Scalar quadratic(mpq_class a, mpq_class b, int d);
  static Scalar sqrt_of(int d);
  static Scalar fraction(long num, long den);
  static bool supported_radicand(int d) { return d == 2 || d == 3 || d == 5; }

  const mpq_class& a() const { return a_; }
  const mpq_class& b() const { return b_; }
  int d() const { return d_; }

  bool is_zero() const { return d_ == 0 && sgn(a_) == 0; }
  bool is_one() const { return d_ == 0 && a_ == 1; }
  bool is_rational() const { return d_ == 0; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }
  // this += x*y without a temporary Scalar
  void add_product(const Scalar& x, const Scalar& y);
  void sub_product(const Scalar& x, const Scalar& y);

  Scalar inverse() const;
  Scalar conj() const;
  // Sign under the real embedding with sqrt(d) > 0.
  int sign() const;
  // a^2 - d b^2
  mpq_class norm() const;

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }
  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

  std::string to_string() const;
  std::size_t hash() const;

 private:
  void normalize();
  static int join(int d1, int d2);

  mpq_class a_;
  mpq_class b_;
  int d_ = 0;
};

// Common radicand of a list of scalars; throws on a clash.
int common_radicand(int d1, int d2);

}  // namespace coxsaito
