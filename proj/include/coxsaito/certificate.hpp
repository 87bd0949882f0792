#pragma once

#include "coxsaito/ideal.hpp"
#include "coxsaito/poly_matrix.hpp"

#include <string>
#include <vector>

namespace coxsaito {

enum class Verdict { Pass, Fail, Indeterminate };
const char* to_string(Verdict v);

// A polynomial identity that can be re-checked by evaluation alone.
struct Identity {
  enum class Kind {
    Combination,  // target == sum cofactors[i] * generators[i]
    Determinant,  // det(matrix) == scale * target
    Equal,        // lhs == scale * rhs, stored as target == scale * generators[0]
    Separator,    // functional kills every mu*g_i in the degree and maps target to 1
  };
  Kind kind = Kind::Combination;
  std::string label;
  Poly target;
  std::vector<Poly> generators;
  std::vector<Poly> cofactors;
  PolyMatrix matrix;
  Scalar scale{1};
  std::vector<int> weights;
  Separator separator;

  static Identity combination(std::string label, Poly target, std::vector<Poly> gens, std::vector<Poly> cof);
  static Identity combination(std::string label, const Witness& w);
  static Identity determinant(std::string label, PolyMatrix m, Scalar scale, Poly target);
  static Identity equal(std::string label, Poly lhs, Scalar scale, Poly rhs);
  static Identity non_member(std::string label, Poly target, std::vector<Poly> gens, std::vector<int> weights,
                             Separator sep);
  bool verify() const;
};

struct Certificate {
  std::string check;
  std::string type;
  Verdict verdict = Verdict::Fail;
  std::vector<Identity> identities;
  std::vector<std::pair<std::string, Scalar>> constants;
  std::vector<std::pair<std::string, std::string>> notes;
  double seconds = 0;
  std::string budget = "ok";

  void note(std::string key, std::string value) { notes.emplace_back(std::move(key), std::move(value)); }
  void constant(std::string key, Scalar value) { constants.emplace_back(std::move(key), std::move(value)); }
  // Pass verdicts additionally require every identity to re-verify.
  bool consistent() const;
  // Index of the first identity that fails, or -1.
  int first_failure() const;
};

}  // namespace coxsaito
