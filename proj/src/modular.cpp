#include "coxsaito/modular.hpp"

#include "coxsaito/scalar.hpp"

#include <stdexcept>

namespace coxsaito::modular {

std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw DivisionByZero();
  return pow_mod(a, p - 2, p);
}

std::optional<std::uint32_t> sqrt_mod(std::uint32_t d, std::uint32_t p) {
  d %= p;
  if (d == 0) return 0u;
  if (pow_mod(d, (p - 1) / 2, p) != 1) return std::nullopt;
  // Tonelli-Shanks
  std::uint32_t q = p - 1, s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint32_t z = 2;
  while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint32_t m = s, c = pow_mod(z, q, p), t = pow_mod(d, q, p), r = pow_mod(d, (q + 1) / 2, p);
  while (t != 1) {
    std::uint32_t i = 0, tt = t;
    while (tt != 1) {
      tt = mul_mod(tt, tt, p);
      ++i;
    }
    std::uint32_t b = c;
    for (std::uint32_t k = 0; k + i + 1 < m; ++k) b = mul_mod(b, b, p);
    m = i;
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    r = mul_mod(r, b, p);
  }
  return r;
}

Prime PrimeStream::next() {
  while (cursor_ > 1000) {
    std::uint32_t p = cursor_;
    cursor_ -= 2;
    mpz_class z = p;
    if (!mpz_probab_prime_p(z.get_mpz_t(), 30)) continue;
    if (d_ == 0) return {p, 0};
    if (auto r = sqrt_mod(static_cast<std::uint32_t>(d_), p); r && *r != 0) return {p, *r};
  }
  throw std::runtime_error("prime stream exhausted");
}

std::uint32_t reduce(const mpz_class& z, std::uint32_t p) {
  return static_cast<std::uint32_t>(mpz_fdiv_ui(z.get_mpz_t(), p));
}

std::uint32_t reduce(const mpq_class& q, std::uint32_t p) {
  std::uint32_t den = reduce(q.get_den(), p);
  if (den == 0) throw DivisionByZero();
  return mul_mod(reduce(q.get_num(), p), inv_mod(den, p), p);
}

void CrtAccumulator::add(const std::vector<std::uint32_t>& residues, std::uint32_t p) {
  if (residues.size() != values_.size()) throw std::invalid_argument("CRT size mismatch");
  // x = v + M * ((r - v) * M^{-1} mod p)
  std::uint32_t minv = inv_mod(reduce(modulus_, p), p);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    std::uint32_t v = reduce(values_[i], p);
    std::uint32_t diff = (residues[i] + p - v) % p;
    std::uint32_t k = mul_mod(diff, minv, p);
    values_[i] += modulus_ * k;
  }
  modulus_ *= p;
}

std::optional<mpq_class> rational_reconstruct(const mpz_class& v, const mpz_class& m) {
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = m, r1 = v % m;
  if (r1 < 0) r1 += m;
  mpz_class t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    mpz_class t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return std::nullopt;
  mpq_class out(r1, t1);
  out.canonicalize();
  return out;
}

}  // namespace coxsaito::modular
