#pragma once

#include "coxsaito/certificate.hpp"
#include "coxsaito/coxeter.hpp"
#include "coxsaito/poly_matrix.hpp"

namespace coxsaito {

struct NotExpressible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// p1..pl with the datum's degrees as weights.
RingPtr invariant_ring(int l);

// g with g(p_1(x), ..., p_l(x)) = f(x). The ansatz over weighted monomials is
// fitted at small integer points and then verified by resubstitution.
Poly express_in_invariants(const Poly& f, const std::vector<Poly>& invariants, const RingPtr& target);
// As above, after checking f against the simple reflections.
Poly express_in_invariants(const Poly& f, const CoxeterDatum& d);

struct SaitoData {
  RingPtr s_ring;
  RingPtr r_ring;
  std::vector<int> weights;
  std::vector<Poly> invariants;  // the p_i the matrices are built from
  PolyMatrix J;                  // d p_i / d x_j
  PolyMatrix K_S;                // J Gamma J^t
  PolyMatrix K_R;                // same entries in p-variables
  PolyMatrix K_bar;              // linear part of K_R
  Poly delta2;                   // det K_R
  Scalar delta2_constant;        // delta2(p(x)) = c * Delta^2
  ScalarMatrix change;           // p_new = change * p_old on linear parts (identity unless normalized)
  std::vector<Poly> change_images;  // old p_i as polynomials in the new ones
};

PolyMatrix jacobian(const CoxeterDatum& d);
SaitoData saito_K(const CoxeterDatum& d);
SaitoData saito_K(const CoxeterDatum& d, const std::vector<Poly>& invariants);

// Coefficient vector of delta_j in p-coordinates: column j of K_R.
Poly apply_delta(const SaitoData& s, int j, const Poly& f);
// eta_j(f) = (Gamma grad p_j) . grad f over S.
Poly apply_eta(const CoxeterDatum& d, const std::vector<Poly>& invariants, int j, const Poly& f);

// Delta^2 is monic of degree l in p_l, per irreducible block.
Certificate theorem9_check(const CoxeterDatum& d, const SaitoData& s);

struct NormalizedSaito {
  SaitoData data;
  bool shape_ok = false;
  std::string failure;          // offending entry when the shape is unreachable
  std::vector<Scalar> alpha;    // anti-diagonal coefficients, alpha[i] for row i
  Scalar scale;                 // K_bar(0, j) = scale * w_j p_j
};
// Triangular change of invariants putting K_bar into the anti-diagonal shape.
NormalizedSaito normalize_linear_part(const CoxeterDatum& d, const SaitoData& s);

// For I2(k): K_R = [[2p1, h p2], [h p2, a p1^(h-1) + b p1^(h/2-1) p2]]; returns a, b.
std::pair<Scalar, Scalar> rank_two_coefficients(const CoxeterDatum& d, const SaitoData& s);

}  // namespace coxsaito
