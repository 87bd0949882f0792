#pragma once

#include "coxsaito/rank_conditions.hpp"

namespace coxsaito {

// D' = {M^l_l = 0} and the matrices of the free-divisor construction.
struct FreeDivisorData {
  std::string type;
  int l = 0;
  RingPtr r_ring;
  std::vector<int> weights;
  Poly M;                // M^l_l over R
  Poly delta2;           // det K_R
  PolyMatrix K;          // K_R
  PolyMatrix B;          // delta~_i = sum_j B(j, i) delta_j
  Scalar det_B;
  Scalar euler_constant;  // delta~_l = euler_constant * delta_1
  PolyMatrix K1;         // K without its last column
  PolyMatrix K2;         // K1 with the column e_l appended
  PolyMatrix KBK2;
  PolyMatrix lifted;     // Gamma J^t (B K2) o p over S
};

// M^l_l with the two side conditions: reduced, and I_D of codimension 2.
Poly adjoint_divisor(const MinorTable& td, Certificate& cert, const EngineOptions& opt = {});
// <delta_1(M), ..., delta_l(M)> == I_D with witnesses both ways.
Certificate verify_lemma66(const SaitoData& s, const MinorTable& td, const EngineOptions& opt = {});
// Columns i < l from the witnesses of M^l_i in <delta_j(M)>; column l from Euler.
PolyMatrix solve_B(const SaitoData& s, const MinorTable& td, Certificate& cert, const EngineOptions& opt = {});

FreeDivisorData free_divisor_data(const CoxeterDatum& d, const SaitoData& s, const MinorTable& td,
                                  const PolyMatrix& B);
Certificate certify_theorem68(const FreeDivisorData& f, const EngineOptions& opt = {});
Certificate certify_corollary55(const FreeDivisorData& f, const CoxeterDatum& d, const SaitoData& s,
                                const EngineOptions& opt = {});

// adj(K_bar)(l, l-i+1) contains p_i p_l^(l-2) and no p_j p_l^(l-2), j != i.
Certificate antidiagonal_check(const SaitoData& s);

// sigma_k of the ambient coordinates (x_1, ..., x_n, -sum x) for A_n.
Poly elementary_symmetric(const CoxeterDatum& d, int k);
// c with a == c * b, if any.
std::optional<Scalar> proportionality(const Poly& a, const Poly& b);

// A2: M o p ~ sigma_2; A3: M o p ~ 8 s2 s4 - 9 s3^2 - 2 s2^3.
Certificate sigma_check(const CoxeterDatum& d, const SaitoData& s, const FreeDivisorData& f);

// The published B3 Saito matrix (entries in e_k(x_i^2)) and its minor ideal.
PolyMatrix b3_classical_matrix(const RingPtr& ring);
std::vector<Poly> b3_fixture_ideal(const RingPtr& ring);
Certificate b3_fixture_check(const CoxeterDatum& d, const SaitoData& s, const MinorTable& td,
                             const EngineOptions& opt = {});

}  // namespace coxsaito
