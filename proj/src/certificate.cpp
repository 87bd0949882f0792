#include "coxsaito/certificate.hpp"

namespace coxsaito {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "indeterminate";
  }
}

Identity Identity::combination(std::string label, Poly target, std::vector<Poly> gens, std::vector<Poly> cof) {
  Identity id;
  id.kind = Kind::Combination;
  id.label = std::move(label);
  id.target = std::move(target);
  id.generators = std::move(gens);
  id.cofactors = std::move(cof);
  return id;
}

Identity Identity::combination(std::string label, const Witness& w) {
  return combination(std::move(label), w.target(), w.generators(), w.cofactors());
}

Identity Identity::determinant(std::string label, PolyMatrix m, Scalar scale, Poly target) {
  Identity id;
  id.kind = Kind::Determinant;
  id.label = std::move(label);
  id.matrix = std::move(m);
  id.scale = std::move(scale);
  id.target = std::move(target);
  return id;
}

Identity Identity::equal(std::string label, Poly lhs, Scalar scale, Poly rhs) {
  Identity id;
  id.kind = Kind::Equal;
  id.label = std::move(label);
  id.target = std::move(lhs);
  id.scale = std::move(scale);
  id.generators = {std::move(rhs)};
  return id;
}

Identity Identity::non_member(std::string label, Poly target, std::vector<Poly> gens, std::vector<int> weights,
                              Separator sep) {
  Identity id;
  id.kind = Kind::Separator;
  id.label = std::move(label);
  id.target = std::move(target);
  id.generators = std::move(gens);
  id.weights = std::move(weights);
  id.separator = std::move(sep);
  return id;
}

bool Identity::verify() const {
  try {
    switch (kind) {
      case Kind::Combination:
        return verify_combination(target, generators, cofactors);
      case Kind::Determinant:
        return coxsaito::determinant(matrix) == target * scale;
      case Kind::Equal:
        return generators.size() == 1 && target == generators[0] * scale;
      case Kind::Separator:
        return verify_separator(target, generators, weights, separator);
    }
  } catch (const std::exception&) {
    return false;
  }
  return false;
}

int Certificate::first_failure() const {
  for (std::size_t i = 0; i < identities.size(); ++i)
    if (!identities[i].verify()) return static_cast<int>(i);
  return -1;
}

bool Certificate::consistent() const { return verdict != Verdict::Pass || first_failure() < 0; }

}  // namespace coxsaito
