#include "coxsaito/scalar.hpp"

#include <functional>

namespace coxsaito {

int common_radicand(int d1, int d2) {
  if (d1 == 0) return d2;
  if (d2 == 0 || d1 == d2) return d1;
  throw FieldMismatch(d1, d2);
}

int Scalar::join(int d1, int d2) { return common_radicand(d1, d2); }

Scalar Scalar::quadratic(mpq_class a, mpq_class b, int d) {
  Scalar s;
  s.a_ = std::move(a);
  s.b_ = std::move(b);
  s.a_.canonicalize();
  s.b_.canonicalize();
  if (sgn(s.b_) != 0) {
    if (!supported_radicand(d))
      throw std::invalid_argument("unsupported radicand " + std::to_string(d));
    s.d_ = d;
  }
  return s;
}

Scalar Scalar::sqrt_of(int d) { return quadratic(0, 1, d); }

Scalar Scalar::fraction(long num, long den) {
  if (den == 0) throw DivisionByZero();
  return Scalar(mpq_class(num, den));
}

void Scalar::normalize() {
  if (d_ != 0 && sgn(b_) == 0) d_ = 0;
}

Scalar Scalar::operator-() const {
  Scalar r;
  r.a_ = -a_;
  r.b_ = -b_;
  r.d_ = d_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  d_ = join(d_, o.d_);
  a_ += o.a_;
  if (o.d_ != 0) b_ += o.b_;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  d_ = join(d_, o.d_);
  a_ -= o.a_;
  if (o.d_ != 0) b_ -= o.b_;
  normalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (o.d_ == 0) {
    a_ *= o.a_;
    if (d_ != 0) b_ *= o.a_;
    normalize();
    return *this;
  }
  if (d_ == 0) {
    b_ = a_ * o.b_;
    a_ *= o.a_;
    d_ = o.d_;
    normalize();
    return *this;
  }
  int d = join(d_, o.d_);
  mpq_class na = a_ * o.a_ + d * (b_ * o.b_);
  mpq_class nb = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  d_ = d;
  normalize();
  return *this;
}

void Scalar::add_product(const Scalar& x, const Scalar& y) {
  if (x.d_ == 0 && y.d_ == 0) {
    mpq_class t = x.a_ * y.a_;
    a_ += t;
    return;
  }
  *this += x * y;
}

void Scalar::sub_product(const Scalar& x, const Scalar& y) {
  if (x.d_ == 0 && y.d_ == 0) {
    mpq_class t = x.a_ * y.a_;
    a_ -= t;
    return;
  }
  *this -= x * y;
}

mpq_class Scalar::norm() const {
  if (d_ == 0) return a_ * a_;
  return a_ * a_ - d_ * (b_ * b_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (d_ == 0) {
    Scalar r;
    r.a_ = 1 / a_;
    return r;
  }
  mpq_class n = norm();
  Scalar r;
  r.a_ = a_ / n;
  r.b_ = -b_ / n;
  r.d_ = d_;
  return r;
}

Scalar Scalar::conj() const {
  Scalar r = *this;
  r.b_ = -r.b_;
  return r;
}

std::string Scalar::to_string() const {
  if (d_ == 0) return a_.get_str();
  std::string s;
  if (sgn(a_) != 0) s = a_.get_str() + (sgn(b_) > 0 ? "+" : "");
  return s + b_.get_str() + "*sqrt(" + std::to_string(d_) + ")";
}

std::size_t Scalar::hash() const {
  auto mix = [](std::size_t h, const mpz_class& z) {
    std::size_t v = mpz_size(z.get_mpz_t()) ? mpz_getlimbn(z.get_mpz_t(), 0) : 0;
    v ^= static_cast<std::size_t>(sgn(z) + 1) << 62;
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  };
  std::size_t h = static_cast<std::size_t>(d_);
  h = mix(h, a_.get_num());
  h = mix(h, a_.get_den());
  h = mix(h, b_.get_num());
  h = mix(h, b_.get_den());
  return h;
}

int Scalar::sign() const {
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  mpq_class lhs = a_ * a_, rhs = b_ * b_ * d_;
  return lhs > rhs ? sa : sb;
}

}  // namespace coxsaito
