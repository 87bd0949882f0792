#pragma once

#include "coxsaito/certificate.hpp"
#include "coxsaito/ideal.hpp"
#include "coxsaito/saito.hpp"

namespace coxsaito {

enum class Side { Arrangement, Discriminant };
const char* to_string(Side s);

// Sub-maximal minors of J^t (over S) or of K_R (over R). minor(i, j) is the
// adjugate entry: row i belongs to the deleted invariant p_i.
struct MinorTable {
  Side side = Side::Arrangement;
  std::string type;
  int l = 0;
  RingPtr ring;
  std::vector<int> weights;  // grading of ring
  PolyMatrix matrix;         // J^t or K_R
  PolyMatrix adj;
  Poly det;                  // det(matrix)
  std::vector<int> degrees;  // D_i, weighted degree of row i
  IdealBasis fitting;        // all l^2 minors
  IdealBasis last_row;       // minors of row l

  const Poly& minor(int i, int j) const { return adj(i, j); }
};

MinorTable minor_table(const CoxeterDatum& d, const SaitoData& s, Side side);

struct TableChecks {
  bool with_grade = true;  // krull dimension of the Fitting ideal
  EngineOptions engine;
};
// Cramer identity, degree table, linear independence of the last row and, on
// the arrangement side, m^1 proportional to Gamma grad Delta.
Certificate check_minor_table(const CoxeterDatum& d, const MinorTable& t, const TableChecks& opt = {});

Certificate check_grc(const MinorTable& t, const EngineOptions& opt = {});
Certificate check_drc(const CoxeterDatum& d, const SaitoData& s, const EngineOptions& opt = {});
Certificate check_hrc(const CoxeterDatum& d, const SaitoData& s, const EngineOptions& opt = {});
// D-types only: the p-hat route through the power-sum invariants.
Certificate check_hrc_dtype(const CoxeterDatum& d, const EngineOptions& opt = {});
// Hrc => drc => grc on the given verdicts.
Certificate equivalence_probe(const std::string& type, const Certificate& hrc, const Certificate& drc,
                              const Certificate& grc);

// Hess(p_i) Gamma grad p_j.
std::vector<Poly> hessian_action(const CoxeterDatum& d, const std::vector<Poly>& invariants, int i, int j);

}  // namespace coxsaito
