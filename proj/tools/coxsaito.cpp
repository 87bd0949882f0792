// coxsaito run|fixture|verify

#include "coxsaito/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace coxsaito;

namespace {

void summary(const Report& r) {
  for (const auto& c : r.checks) {
    std::cout << to_string(c.verdict) << "  " << c.type << "  " << c.check << "  (" << c.identities.size()
              << " identities)";
    for (const auto& [k, v] : c.notes)
      if (k == "error" || k == "failure") std::cout << "  " << k << ": " << v;
    std::cout << "\n";
  }
}

int do_run(const RunConfig& cfg) {
  try {
    auto res = run(cfg);
    for (const auto& e : res.cache_events) std::cerr << e << "\n";
    summary(res.report);
    if (cfg.out.empty()) std::cout << dump(to_json(res.report));
    return res.exit_code;
  } catch (const UnsupportedType& e) {
    std::cerr << "unsupported type: " << e.what() << "\n";
  } catch (const TierRefusal& e) {
    std::cerr << "refused: " << e.what() << "\n";
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
  }
  return kExitUsage;
}

int do_fixture(const std::string& type, const std::string& dir) {
  try {
    std::cout << emit_fixture(type, dir) << "\n";
    return kExitPass;
  } catch (const UnsupportedType& e) {
    std::cerr << "unsupported type: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}

int do_verify(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot read " << path << "\n";
    return kExitUsage;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  Report r;
  try {
    r = report_from_json(json::parse(ss.str()));
  } catch (const std::exception& e) {
    std::cerr << "malformed report: " << e.what() << "\n";
    return kExitUsage;
  }
  auto v = verify_report(r);
  for (const auto& f : v.failures) std::cout << "FAILED " << f << "\n";
  std::cout << v.identities - static_cast<int>(v.failures.size()) << "/" << v.identities
            << " identities re-verified\n";
  return v.ok() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coxeter arrangements, discriminants and their Saito matrices"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string tier = "fast";
  std::vector<std::string> suites;
  if (const char* env = std::getenv("COXSAITO_CACHE")) cfg.cache = env;

  auto* run_cmd = app.add_subcommand("run", "run check suites and write a JSON report");
  run_cmd->add_option("--type", cfg.type, "Coxeter type, e.g. A3, I2(5), A1^3, B2xI2(5)")->required();
  run_cmd->add_option("--suite", suites, "comma-separated suites (default: all admitted by the tier)")
      ->delimiter(',');
  run_cmd->add_option("--tier", tier, "fast | long | stretch")->check(CLI::IsMember({"fast", "long", "stretch"}));
  run_cmd->add_option("--out", cfg.out, "report path (default: stdout)");
  run_cmd->add_option("--budget-steps", cfg.budget_steps, "step limit per suite item; exhaustion is indeterminate");
  run_cmd->add_option("--cache", cfg.cache, "fixture cache directory (default: $COXSAITO_CACHE)");

  std::string fix_type, fix_dir = ".";
  auto* fix_cmd = app.add_subcommand("fixture", "write the datum and Saito matrix fixture");
  fix_cmd->add_option("--type", fix_type, "Coxeter type")->required();
  fix_cmd->add_option("--out", fix_dir, "output directory");
  fix_cmd->add_option("--cache", fix_dir, "alias of --out");

  std::string report_path;
  auto* ver_cmd = app.add_subcommand("verify", "re-check every identity of a report");
  ver_cmd->add_option("report", report_path, "report JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  if (*run_cmd) {
    cfg.tier = *parse_tier(tier);
    cfg.suites = suites;
    return do_run(cfg);
  }
  if (*fix_cmd) return do_fixture(fix_type, fix_dir);
  return do_verify(report_path);
}
