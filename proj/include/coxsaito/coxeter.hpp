#pragma once

#include "coxsaito/poly.hpp"
#include "coxsaito/poly_matrix.hpp"

#include <string>
#include <vector>

namespace coxsaito {

struct UnsupportedType : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A finite Coxeter type, possibly a product of irreducible factors.
struct CoxeterType {
  struct Factor {
    char family = 'A';  // A B D F H I
    int n = 1;          // rank, or k for I2(k)
    int rank() const { return family == 'I' ? 2 : n; }
    std::string name() const;
    friend bool operator==(const Factor& a, const Factor& b) { return a.family == b.family && a.n == b.n; }
  };
  std::vector<Factor> factors;

  // "A3", "I2(5)", "A1xA1", "A1^3", "B2xI2(5)". E-types throw UnsupportedType.
  static CoxeterType parse(const std::string& text);
  std::string name() const;
  int rank() const;
  bool irreducible() const { return factors.size() == 1; }
};

// One irreducible summand, occupying coordinates [offset, offset+rank) and
// invariants with the same indices.
struct Block {
  CoxeterType::Factor factor;
  int offset = 0;
  int rank = 0;
  int h = 0;
  int hyperplanes = 0;
};

struct CoxeterDatum {
  CoxeterType type;
  int rank = 0;
  int radicand = 0;
  RingPtr ring;  // x1..xl
  ScalarMatrix gram;   // G, <u,v> = u^T G v
  ScalarMatrix gamma;  // G^{-1}
  // Positive roots in coordinates; mirrors[i] = <roots[i], x>. Empty when the
  // realization has irrational mirrors (I2(k) closed form).
  std::vector<std::vector<Scalar>> roots;
  std::vector<Poly> mirrors;
  Poly delta;
  std::vector<ScalarMatrix> simple_reflections;
  std::vector<std::vector<Scalar>> elements;  // row-major l x l, x -> Mx
  long long order = 0;
  std::vector<int> degrees;    // per block, ascending within a block
  std::vector<int> exponents;
  std::vector<Block> blocks;
  std::vector<Poly> classical;   // basic invariants as first constructed
  std::vector<Poly> invariants;  // after harmonization (eta_k(Delta) = 0, k > 1)
  Scalar jacobian_constant;      // det J = c * Delta
  std::vector<std::vector<int>> seeds;  // linear forms tried, per invariant

  int hyperplane_count() const;
  int coxeter_number() const;  // irreducible types only
  bool closed_form() const { return roots.empty(); }
};

CoxeterDatum build_datum(const CoxeterType& t);
inline CoxeterDatum build_datum(const std::string& t) { return build_datum(CoxeterType::parse(t)); }

// (1/|W|) sum_w f(w x).
Poly reynolds_average(const Poly& f, const CoxeterDatum& d);
// f(Sx) == f for every simple reflection S.
bool is_invariant(const Poly& f, const CoxeterDatum& d);
// The classical basic invariants of a datum (before harmonization).
std::vector<Poly> basic_invariants(const CoxeterDatum& partial);

struct StabilizerComponent {
  std::vector<int> roots;  // indices into datum.roots
  int rank = 0;
  std::string type;
};

struct StabilizerSummary {
  std::vector<StabilizerComponent> components;
  int count() const { return static_cast<int>(components.size()); }
};

StabilizerSummary stabilizer_components(const CoxeterDatum& d, const std::vector<Scalar>& x);

// Irreducible type with the given rank and number of positive roots.
std::string classify_root_system(int rank, int positive_roots);

}  // namespace coxsaito
