#pragma once

// Declarative problem specifications and the analysis report. The JSON
// schemas are documented in docs/formats.md.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qcw/beltrami.hpp"
#include "qcw/extremal.hpp"
#include "qcw/grunsky.hpp"
#include "qcw/schwarzian.hpp"

namespace qcw {

/// A specification field failed validation; what() names the field path.
class SpecError : public UsageError {
 public:
  using UsageError::UsageError;
};

struct ConstantSource {
  cplx t;
};
struct TeichmuellerSource {
  Polynomial numerator;
  Polynomial denominator;
  double k = 0;
};
struct HarmonicSource {
  Polynomial numerator;
  Polynomial denominator;
  cplx t;
};
struct AhlforsWeillSource {
  Polynomial numerator;
  Polynomial denominator;
};
struct GridFileSource {
  std::string path;
};
using BeltramiSource =
    std::variant<ConstantSource, TeichmuellerSource, HarmonicSource, AhlforsWeillSource, GridFileSource>;

struct CoeffsSource {
  Eigen::VectorXcd b;  // b0, b1, ...
};
struct DiskFunctionSource {
  Eigen::VectorXcd a;  // a0 = 0, a1 = 1, a2, ...
};
using Source = std::variant<CoeffsSource, DiskFunctionSource, BeltramiSource>;

struct AnalysisParameters {
  Index m = 512;
  Index n = 16;
  int p = 4;
  std::vector<double> r_grid{0.90, 0.95, 0.99, 1.0};
  double tol = 1e-10;
  int max_iter = 0;
};

struct ProblemSpec {
  Source source;
  AnalysisParameters params;
  nlohmann::json raw;  // echoed into the report
};

/// Validates and converts; relative grid-file paths resolve against base_dir.
ProblemSpec parse_problem_spec(const nlohmann::json& j, const std::string& base_dir = ".");
ProblemSpec read_problem_spec_file(const std::string& path);

struct Report {
  nlohmann::json inputs;
  NormEstimate<double> kappa;
  std::vector<std::pair<int, double>> kappa_p;  // p = 1..P
  double kappa_hat = 0;
  std::optional<OuterLimit> outer;              // present when mu is known
  std::optional<double> mu_sup;                 // upper end of k_bounds
  Quasiinvariants quasi;
  bool chain_holds = true;
  double chain_tol = 0;
  std::optional<int> solver_iterations;
  std::optional<double> solver_residual;
  std::vector<double> residual_history;
  nlohmann::json source_diagnostics = nlohmann::json::object();
  std::vector<std::string> notes;
};

Report analyze(const ProblemSpec& spec);

nlohmann::json to_json(const Report& r, const std::string& version, const std::string& timestamp);
/// Tab-separated convergence tables (per-size norms, kappa_p, residuals).
std::string convergence_table(const Report& r);

/// The critical-point comparison as a plain-text table.
std::string format_critical_comparison(const Polynomial& p, const CriticalComparison& c);
/// Ascending coefficients from a JSON array (numbers or [re, im] pairs) or an
/// object with a "coefficients" array.
Polynomial parse_polynomial(const nlohmann::json& j, const std::string& field = "polynomial");

/// Number or [re, im].
cplx parse_complex(const nlohmann::json& j, const std::string& field);

}  // namespace qcw
