#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

namespace coxsaito::modular {

inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}
std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p);
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);
// Square root of d modulo p if one exists.
std::optional<std::uint32_t> sqrt_mod(std::uint32_t d, std::uint32_t p);

struct Prime {
  std::uint32_t p;
  std::uint32_t root;  // a square root of the radicand mod p (0 for rationals)
};

// Primes below 2^31 in decreasing order, skipping those where the radicand
// (if nonzero) is a non-residue.
class PrimeStream {
 public:
  explicit PrimeStream(int radicand) : d_(radicand) {}
  Prime next();

 private:
  int d_;
  std::uint32_t cursor_ = 2147483647u;
};

std::uint32_t reduce(const mpq_class& q, std::uint32_t p);  // throws if p divides the denominator
std::uint32_t reduce(const mpz_class& z, std::uint32_t p);

// Incremental Chinese remaindering of a vector of residues.
class CrtAccumulator {
 public:
  explicit CrtAccumulator(std::size_t n) : values_(n) {}
  void add(const std::vector<std::uint32_t>& residues, std::uint32_t p);
  const mpz_class& modulus() const { return modulus_; }
  const std::vector<mpz_class>& values() const { return values_; }

 private:
  mpz_class modulus_ = 1;
  std::vector<mpz_class> values_;
};

// Wang's rational reconstruction: n/d = v mod m with |n|,|d| <= sqrt(m/2).
std::optional<mpq_class> rational_reconstruct(const mpz_class& v, const mpz_class& m);

}  // namespace coxsaito::modular
