#include "coxsaito/json_io.hpp"
#include "coxsaito/pipeline.hpp"

#include "doctest.h"
#include "generators.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <sys/wait.h>

using namespace coxsaito;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

std::string bin() {
  const char* b = std::getenv("COXSAITO_BIN");
  return b ? b : "./coxsaito";
}

fs::path scratch() {
  static fs::path p = [] {
    fs::path d = fs::temp_directory_path() / ("coxsaito_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return p;
}

Outcome sh(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " '" + bin() + "' " + args + " 2>&1";
  Outcome o;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  while (std::fgets(buf, sizeof buf, p)) o.out += buf;
  int st = pclose(p);
  o.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("scalar JSON") {
  CHECK(dump(to_json(Scalar::fraction(-3, 4))) == dump(json{{"a", {"-3", "4"}}}));
  Scalar phi = Scalar::quadratic(mpq_class(1, 2), mpq_class(1, 2), 5);
  json j = to_json(phi);
  CHECK(j["d"] == 5);
  CHECK(j["b"] == json::array({"1", "2"}));
  gen::Rng rng(17);
  for (int d : {0, 2, 3, 5})
    for (int k = 0; k < 20; ++k) {
      Scalar s = gen::scalar(rng, d);
      CHECK(scalar_from_json(to_json(s)) == s);
    }
  CHECK_THROWS_AS(scalar_from_json(json{{"a", {"1", "0"}}}), MalformedJson);
  CHECK_THROWS_AS(scalar_from_json(json{{"a", {"1", "2"}}, {"b", {"1", "1"}}, {"d", 7}}), MalformedJson);
  CHECK_THROWS_AS(scalar_from_json(json{{"b", {"1", "2"}}}), MalformedJson);
}

TEST_CASE("polynomial JSON round trip is bit-exact") {
  gen::Rng rng(5);
  RingPtr r = make_ring({"x", "y", "z"});
  for (int d : {0, 5})
    for (int k = 0; k < 20; ++k) {
      Poly f = gen::poly(rng, r, 5, 6, d);
      json j = to_json(f);
      Poly g = poly_from_json(j);
      CHECK(g == f);
      CHECK(dump(to_json(g)) == dump(j));
    }
  // terms come out in canonical order whatever the input order
  json shuffled = {{"vars", {"x", "y"}},
                   {"field", {{"d", 0}}},
                   {"terms", {{{"exp", {0, 1}}, {"coeff", {{"a", {"1", "1"}}}}},
                              {{"exp", {2, 0}}, {"coeff", {{"a", {"3", "1"}}}}}}}};
  json canon = to_json(poly_from_json(shuffled));
  CHECK(canon["terms"][0]["exp"] == json::array({2, 0}));
  CHECK_THROWS_AS(poly_from_json(json{{"vars", {"x"}}, {"terms", {{{"exp", {1, 2}}, {"coeff", {{"a", {"1", "1"}}}}}}}}),
                  MalformedJson);
}

TEST_CASE("identity JSON of every kind re-verifies") {
  RingPtr r = make_ring({"x", "y"});
  Poly x = Poly::var(r, 0), y = Poly::var(r, 1);
  std::vector<Identity> ids;
  ids.push_back(Identity::combination("comb", x * x + x * y, {x}, {x + y}));
  PolyMatrix m(r, 2, 2);
  m(0, 0) = x;
  m(1, 1) = y;
  ids.push_back(Identity::determinant("det", m, Scalar(2), x * y * Scalar::fraction(1, 2)));
  ids.push_back(Identity::equal("eq", x * Scalar(3), Scalar(3), x));
  auto sq = IdealBasis::graded(r, {x * x, y * y});
  EngineOptions opt;
  opt.method = SolveMethod::Modular;
  auto mem = graded_membership(x * y, sq, opt);
  REQUIRE(mem.separator);
  ids.push_back(Identity::non_member("sep", x * y, sq.gens, sq.weights, *mem.separator));
  for (const auto& id : ids) {
    CAPTURE(id.label);
    REQUIRE(id.verify());
    json j = to_json(id);
    Identity back = identity_from_json(j);
    CHECK(back.verify());
    CHECK(dump(to_json(back)) == dump(j));
  }
  // a wrong combination does not verify after a round trip either
  json bad = to_json(ids[0]);
  bad["cofactors"][0] = to_json(x);
  CHECK_FALSE(identity_from_json(bad).verify());
}

TEST_CASE("tier gate") {
  auto f = [](const std::string& t) { return CoxeterType::parse(t).factors[0]; };
  CHECK(required_tier(f("A3"), "freediv") == Tier::Fast);
  CHECK(required_tier(f("D4"), "grc-A") == Tier::Fast);
  CHECK(required_tier(f("D4"), "algebra") == Tier::Long);
  CHECK(required_tier(f("H3"), "hrc") == Tier::Fast);
  CHECK(required_tier(f("H3"), "freediv") == Tier::Long);
  CHECK(required_tier(f("F4"), "grc-A") == Tier::Long);
  CHECK(required_tier(f("F4"), "algebra") == Tier::Stretch);
  CHECK(required_tier(f("H4"), "grc-A") == Tier::Stretch);
  CHECK(required_tier(f("I2(12)"), "datum") == Tier::Long);
  CHECK(required_tier(f("A5"), "datum") == Tier::Stretch);

  RunConfig c;
  c.type = "H4";
  c.suites = {"grc-A"};
  CHECK_THROWS_AS(run(c), TierRefusal);
  c.type = "A3";
  c.suites = {"nonsense"};
  CHECK_THROWS_AS(run(c), UsageError);
}

TEST_CASE("file stems") {
  CHECK(file_stem("I2(5)") == "I2_5");
  CHECK(file_stem("A1^3") == "A1p3");
  CHECK(file_stem("B2xI2(5)") == "B2xI2_5");
}

TEST_CASE("run, verify and tamper detection") {
  fs::path report = scratch() / "a2.json";
  auto r = sh("run --type A2 --out '" + report.string() + "'");
  CHECK(r.code == 0);
  REQUIRE(fs::exists(report));
  json j = json::parse(slurp(report));
  CHECK(j["version"] == kVersion);
  CHECK(j["type"] == "A2");
  CHECK(j.contains("seeds"));
  CHECK(j["checks"].size() > 10);

  CHECK(sh("verify '" + report.string() + "'").code == 0);

  // perturb one cofactor of the first combination identity
  std::string check;
  for (auto& c : j["checks"]) {
    for (auto& id : c["identities"])
      if (id["kind"] == "combination" && !id["cofactors"].empty() && !id["cofactors"][0]["terms"].empty()) {
        id["cofactors"][0]["terms"][0]["coeff"] = to_json(Scalar(12345));
        check = c["check"].get<std::string>();
        break;
      }
    if (!check.empty()) break;
  }
  REQUIRE_FALSE(check.empty());
  fs::path tampered = scratch() / "a2_tampered.json";
  std::ofstream(tampered) << dump(j);
  auto v = sh("verify '" + tampered.string() + "'");
  CHECK(v.code == 1);
  CHECK(v.out.find("FAILED " + check + "/") != std::string::npos);

  fs::path junk = scratch() / "junk.json";
  std::ofstream(junk) << "{\"version\": 1";
  CHECK(sh("verify '" + junk.string() + "'").code == 2);
}

TEST_CASE("reports are reproducible byte for byte") {
  fs::path a = scratch() / "b3_a.json", b = scratch() / "b3_b.json";
  CHECK(sh("run --type B3 --suite grc-D,freediv,cor55 --out '" + a.string() + "'").code == 0);
  CHECK(sh("run --type B3 --suite grc-D,freediv,cor55 --out '" + b.string() + "'").code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(sh("verify '" + a.string() + "'").code == 0);
}

TEST_CASE("the A3 example run") {
  auto r = sh("run --type A3 --suite grc-A,freediv --tier fast --out '" + (scratch() / "a3.json").string() + "'");
  CHECK(r.code == 0);
  CHECK(r.out.find("fail") == std::string::npos);
}

TEST_CASE("usage errors, refusals and unsupported types") {
  auto e6 = sh("run --type E6 --suite hrc");
  CHECK(e6.code == 2);
  CHECK(e6.out.find("unsupported") != std::string::npos);
  auto h4 = sh("run --type H4 --suite grc-A");
  CHECK(h4.code == 2);
  CHECK(h4.out.find("--tier stretch") != std::string::npos);
  CHECK(sh("run --type A3 --suite bogus").code == 2);
  CHECK(sh("run --type A3 --tier medium").code == 2);
  CHECK(sh("run --suite grc-A").code == 2);
  CHECK(sh("").code == 2);
}

TEST_CASE("budget exhaustion is indeterminate") {
  auto r = sh("run --type A3 --suite grc-A --budget-steps 1 --out '" + (scratch() / "budget.json").string() + "'");
  CHECK(r.code == 3);
  CHECK(r.out.find("indeterminate") != std::string::npos);
}

TEST_CASE("reducible types run per factor") {
  fs::path out = scratch() / "prod.json";
  CHECK(sh("run --type A1xA2 --suite datum,grc-A,fibers --out '" + out.string() + "'").code == 0);
  json j = json::parse(slurp(out));
  std::set<std::string> types;
  for (const auto& c : j["checks"]) types.insert(c["type"].get<std::string>());
  CHECK(types.count("A2"));
  CHECK(types.count("A1"));
  CHECK(types.count("A1xA2"));
}

TEST_CASE("fixtures") {
  fs::path dir = scratch() / "fixtures";
  auto b3 = sh("fixture --type B3 --out '" + dir.string() + "'");
  REQUIRE(b3.code == 0);
  json j = json::parse(slurp(dir / "B3.json"));
  CHECK(j["classical_matrix"]["comparison"]["verdict"] == "pass");
  CHECK(j["datum"]["degrees"] == json::array({2, 4, 6}));
  std::string first = slurp(dir / "B3.json");
  REQUIRE(sh("fixture --type B3 --out '" + dir.string() + "'").code == 0);
  CHECK(slurp(dir / "B3.json") == first);

  REQUIRE(sh("fixture --type 'I2(5)' --out '" + dir.string() + "'").code == 0);
  json i5 = json::parse(slurp(dir / "I2_5.json"));
  CHECK(scalar_from_json(i5["rank_two"]["b"]).is_zero());
  CHECK_FALSE(scalar_from_json(i5["rank_two"]["a"]).is_zero());
  // the stored Saito matrix reads back
  PolyMatrix k = poly_matrix_from_json(i5["saito"]["K_R"]);
  CHECK(k.rows() == 2);

  REQUIRE(sh("fixture --type A1 --out '" + dir.string() + "'").code == 0);
  json a1 = json::parse(slurp(dir / "A1.json"));
  CHECK(a1["datum"]["rank"] == 1);
  CHECK(a1["datum"]["order"] == 2);
  CHECK_FALSE(a1.contains("classical_matrix"));
}

TEST_CASE("cache directory from the environment") {
  fs::path dir = scratch() / "cache";
  std::string env = "COXSAITO_CACHE='" + dir.string() + "'";
  auto first = sh("run --type B2 --suite datum --out '" + (scratch() / "c1.json").string() + "'", env);
  CHECK(first.code == 0);
  CHECK(first.out.find("cache written") != std::string::npos);
  CHECK(fs::exists(dir / "B2.json"));
  auto second = sh("run --type B2 --suite datum --out '" + (scratch() / "c2.json").string() + "'", env);
  CHECK(second.out.find("cache hit") != std::string::npos);
}
