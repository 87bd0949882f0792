#pragma once

#include "coxsaito/certificate.hpp"
#include "coxsaito/coxeter.hpp"
#include "coxsaito/saito.hpp"
#include "coxsaito/tilde_algebra.hpp"

#include <json.hpp>

#include <stdexcept>

namespace coxsaito {

using json = nlohmann::json;

struct MalformedJson : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// {"a":["num","den"],"b":["num","den"],"d":5}; rationals carry only "a".
json to_json(const Scalar& s);
Scalar scalar_from_json(const json& j);

// {"vars":[...],"field":{"d":..},"terms":[{"exp":[...],"coeff":...}]},
// terms in canonical order.
json to_json(const Poly& p);
Poly poly_from_json(const json& j);

json to_json(const PolyMatrix& m);
PolyMatrix poly_matrix_from_json(const json& j);
json to_json(const ScalarMatrix& m);
ScalarMatrix scalar_matrix_from_json(const json& j);

json to_json(const Identity& id);
Identity identity_from_json(const json& j);
json to_json(const Certificate& c);
Certificate certificate_from_json(const json& j);

json to_json(const MulTable& m);
json to_json(const FiberReport& f);

// Datum and Saito matrices: the CLI cache format.
json fixture_json(const CoxeterDatum& d, const SaitoData& s);

struct Report {
  std::string version;
  std::string type;
  json seeds = json::object();
  std::vector<Certificate> checks;
};
json to_json(const Report& r);
Report report_from_json(const json& j);

// Stable text form: sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

}  // namespace coxsaito
