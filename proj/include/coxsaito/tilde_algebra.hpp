#pragma once

#include "coxsaito/rank_conditions.hpp"

#include <cstdint>

namespace coxsaito {

// h_i = num / den, den the same for every i; h_l = 1.
struct FractionalGenerator {
  int index = 0;
  Side side = Side::Arrangement;
  Poly num;
  Poly den;
  int degree = 0;  // w_l - w_i
  std::vector<Scalar> lambda;  // num = sum_j lambda_j minor(i, j)
};

// h_i h_j = sum_k c[i][j][k] h_k modulo the defining equation.
struct MulTable {
  Side side = Side::Arrangement;
  std::string type;
  int l = 0;
  RingPtr ring;
  std::vector<int> weights;
  Poly defining;
  std::vector<Scalar> lambda;     // column weights: num_i = sum_j lambda_j minor(i, j)
  std::vector<Poly> numerators;   // num_i; numerators[l-1] is the common denominator
  std::vector<int> degrees;       // deg h_i
  PolyMatrix relations;           // columns are the relations among the h_i: J, or K_R
  std::vector<std::vector<std::vector<Poly>>> c;
};

// Column weights for the numerators. The discriminant side uses column l,
// the arrangement side a fixed combination avoiding the mirrors.
std::vector<FractionalGenerator> generators(const CoxeterDatum& d, const MinorTable& t, Certificate& cert);
MulTable multiplication_table(const CoxeterDatum& d, const MinorTable& t, const std::vector<FractionalGenerator>& g,
                              Certificate& cert, const EngineOptions& opt = {});
// Commutativity, unit row, homogeneity and associativity on all triples.
Certificate check_table(const MulTable& m);
// The defining congruence of each h_i is preserved by every simple reflection.
Certificate check_generator_invariance(const CoxeterDatum& d, const MulTable& m);

Certificate verify_prop12(const CoxeterDatum& d, const SaitoData& s, const MinorTable& table_a);
Certificate verify_prop27(const CoxeterDatum& d, const SaitoData& s, const MinorTable& table_a,
                          const MinorTable& table_d);

struct FiberReport {
  std::vector<Scalar> point;
  int points = 0;
  int components = 0;
  std::vector<std::string> types;
  bool pass = false;
};
// One table per irreducible block of d, in block order.
FiberReport fiber_points(const std::vector<MulTable>& blocks, const CoxeterDatum& d, const std::vector<Scalar>& x,
                         std::uint64_t seed = 1);

// Hilbert function of coker(m: R^cols -> R^rows), entry (r, c) of degree
// col_shift[c] - row_shift[r], in degrees 0..max_degree.
std::vector<long long> cokernel_hilbert(const PolyMatrix& m, const std::vector<int>& weights,
                                        const std::vector<int>& row_shift, const std::vector<int>& col_shift,
                                        int max_degree);
// Number of monomials of each weighted degree 0..max_degree.
std::vector<long long> ring_hilbert(const std::vector<int>& weights, int max_degree);

// I2(k), k odd: the discriminant-side algebra has the Hilbert function of
// C[t^2, t^(h-2)], strictly smaller than C[t] in degree 1.
Certificate prop56_check(const CoxeterDatum& d, const SaitoData& s);
// A1^l: coker J splits into l copies of a polynomial ring in l-1 variables.
Certificate split_check(const CoxeterDatum& d, const SaitoData& s);

}  // namespace coxsaito
