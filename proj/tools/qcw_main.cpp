// qcw: command-line front end.
//
//   qcw analyze <spec.json> [-o report.json] [--table conv.tsv]
//   qcw verify <suite> [--seed n]
//   qcw critical <poly-spec>
//
// Exit codes: 0 success, 1 property violation (verify), 2 invalid input,
// 3 solver or numerical failure.

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcw/errors.hpp"
#include "qcw/report.hpp"
#include "qcw/schwarzian.hpp"
#include "qcw/verify.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

// SOURCE_DATE_EPOCH pins the timestamp for reproducible reports.
std::string timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* e = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::atoll(e));
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

int run_analyze(const std::string& spec_path, const std::string& out_path, const std::string& table_path) {
  const auto spec = qcw::read_problem_spec_file(spec_path);
  const auto report = qcw::analyze(spec);
  const std::string text = qcw::to_json(report, kVersion, timestamp()).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw qcw::UsageError("cannot write " + out_path);
    out << text;
  }
  if (!table_path.empty()) {
    std::ofstream out(table_path);
    if (!out) throw qcw::UsageError("cannot write " + table_path);
    out << qcw::convergence_table(report);
  }
  if (!report.chain_holds) std::cerr << "warning: kappa <= kappa_hat <= |mu|_inf chain violated\n";
  return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed) {
  const auto r = qcw::run_suite(suite, seed);
  std::cout << qcw::format_suite(r);
  return r.passed() ? 0 : 1;
}

int run_critical(const std::string& arg) {
  nlohmann::json j;
  try {
    if (!arg.empty() && (arg.front() == '[' || arg.front() == '{')) {
      j = nlohmann::json::parse(arg);
    } else {
      std::ifstream in(arg);
      if (!in) throw qcw::SpecError("cannot open polynomial spec " + arg);
      j = nlohmann::json::parse(in);
    }
  } catch (const nlohmann::json::parse_error& e) {
    throw qcw::SpecError(std::string("polynomial spec is not valid JSON: ") + e.what());
  }
  const auto p = qcw::parse_polynomial(j);
  std::cout << qcw::format_critical_comparison(p, qcw::compare_critical_data(p));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grunsky norms, Beltrami solver and quasiinvariants"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string spec_path, out_path, table_path;
  auto* analyze = app.add_subcommand("analyze", "Run the full pipeline on a problem spec");
  analyze->add_option("spec", spec_path, "Problem spec (JSON)")->required();
  analyze->add_option("-o,--output", out_path, "Report path (default: stdout)");
  analyze->add_option("--table", table_path, "Also write tab-separated convergence tables");

  std::string suite;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("suite", suite, "grunsky | beltrami | extremal | schwarzian | domains | chain")->required();
  verify->add_option("--seed", seed, "Random seed");

  std::string poly;
  auto* critical = app.add_subcommand("critical", "Critical-point data of a polynomial against kappa and its B-norm");
  critical->alias("thm15");
  critical->add_option("poly", poly, "Ascending coefficients as a JSON array, or a JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return run_analyze(spec_path, out_path, table_path);
    if (*verify) return run_verify(suite, seed);
    if (*critical) return run_critical(poly);
  } catch (const qcw::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qcw::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qcw::IterationLimitError& e) {
    std::cerr << "solver error: " << e.what() << " (iterations " << e.iterations() << ", residual "
              << e.residual() << ")\n";
    return 3;
  } catch (const qcw::NumericError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
