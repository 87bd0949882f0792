#pragma once

#include "coxsaito/json_io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace coxsaito {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode { kExitPass = 0, kExitFail = 1, kExitUsage = 2, kExitIndeterminate = 3 };

enum class Tier { Fast = 0, Long = 1, Stretch = 2 };
const char* to_string(Tier t);
std::optional<Tier> parse_tier(const std::string& s);

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The request was valid but needs a higher tier.
struct TierRefusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& all_suites();

// Cheapest tier at which a suite runs on one irreducible factor.
Tier required_tier(const CoxeterType::Factor& f, const std::string& suite);

struct RunConfig {
  std::string type;
  std::vector<std::string> suites;  // empty: every suite the tier admits
  Tier tier = Tier::Fast;
  std::string out;
  long long budget_steps = -1;
  std::string cache;
};

struct RunResult {
  Report report;
  int exit_code = kExitPass;
  std::vector<std::string> cache_events;
};

// Throws UsageError, UnsupportedType or TierRefusal before any heavy work.
RunResult run(const RunConfig& config);
int exit_code(const Report& r);

// Catalog facts: exponent sums, duality, group order, det J = c Delta.
Certificate catalog_check(const CoxeterDatum& d);
// The constant c and the quadratic Delta^2 identity of the Saito matrix.
Certificate saito_check(const CoxeterDatum& d, const SaitoData& s);

// The origin, then cycling through generic points, points on one mirror and
// points on two mirrors. Closed-form dihedral factors get no mirror points.
std::vector<std::vector<Scalar>> fiber_sample_points(const CoxeterDatum& d, int count, std::uint64_t seed);
Certificate fiber_check(const CoxeterDatum& d, const std::vector<MulTable>& blocks,
                        const std::vector<std::vector<Scalar>>& points);
// One arrangement-side table per block.
std::vector<MulTable> block_tables(const CoxeterDatum& d, const EngineOptions& opt = {});

// "I2(5)" -> "I2_5", "A1^3" -> "A1p3".
std::string file_stem(const std::string& type_name);
json fixture(const std::string& type);
// Writes <dir>/<stem>.json and returns the path.
std::string emit_fixture(const std::string& type, const std::string& dir);

struct VerifyResult {
  int identities = 0;
  std::vector<std::string> failures;  // "check/type: label"
  bool ok() const { return failures.empty(); }
};
VerifyResult verify_report(const Report& r);

}  // namespace coxsaito
