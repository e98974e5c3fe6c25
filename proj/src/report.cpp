#include "qcw/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "qcw/errors.hpp"
#include "qcw/grid_io.hpp"

namespace qcw {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw SpecError(path + ": expected an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw SpecError(path + "." + key + ": unknown field");
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw SpecError(path + "." + key + ": required field missing");
  return obj.at(key);
}

double parse_real(const json& j, const std::string& field) {
  if (!j.is_number()) throw SpecError(field + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SpecError(field + ": must be finite");
  return v;
}

long parse_int(const json& j, const std::string& field, long lo) {
  if (!j.is_number_integer()) throw SpecError(field + ": expected an integer");
  const long v = j.get<long>();
  if (v < lo) throw SpecError(field + ": must be >= " + std::to_string(lo));
  return v;
}

Eigen::VectorXcd parse_complex_array(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw SpecError(field + ": expected a non-empty array");
  Eigen::VectorXcd v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Index>(i)) = parse_complex(j[i], field + "[" + std::to_string(i) + "]");
  return v;
}

Polynomial optional_polynomial(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) return Polynomial::constant(1.0);
  return parse_polynomial(obj.at(key), path + "." + key);
}

BeltramiSource parse_beltrami(const json& j, const std::string& path, const std::string& base_dir) {
  if (!j.is_object() || j.size() != 1)
    throw SpecError(path + ": exactly one of constant, teichmueller, harmonic, ahlfors_weill, grid_file");
  const std::string kind = j.begin().key();
  const json& body = j.begin().value();
  const std::string p = path + "." + kind;
  if (kind == "constant") {
    check_keys(body, p, {"t"});
    const cplx t = parse_complex(require(body, "t", p), p + ".t");
    if (!(std::abs(t) < 1.0)) throw SpecError(p + ".t: |t| must be < 1");
    return ConstantSource{t};
  }
  if (kind == "teichmueller") {
    check_keys(body, p, {"psi", "psi_denominator", "k"});
    TeichmuellerSource s{parse_polynomial(require(body, "psi", p), p + ".psi"),
                         optional_polynomial(body, "psi_denominator", p), 0.0};
    s.k = parse_real(require(body, "k", p), p + ".k");
    if (!(s.k >= 0.0 && s.k < 1.0)) throw SpecError(p + ".k: must lie in [0, 1)");
    if (s.numerator.is_zero()) throw SpecError(p + ".psi: identically zero");
    return s;
  }
  if (kind == "harmonic") {
    check_keys(body, p, {"numerator", "denominator", "t"});
    HarmonicSource s{parse_polynomial(require(body, "numerator", p), p + ".numerator"),
                     optional_polynomial(body, "denominator", p),
                     parse_complex(require(body, "t", p), p + ".t")};
    if (!(std::abs(s.t) < 1.0)) throw SpecError(p + ".t: |t| must be < 1");
    return s;
  }
  if (kind == "ahlfors_weill") {
    check_keys(body, p, {"numerator", "denominator"});
    return AhlforsWeillSource{parse_polynomial(require(body, "numerator", p), p + ".numerator"),
                              optional_polynomial(body, "denominator", p)};
  }
  if (kind == "grid_file") {
    if (!body.is_string()) throw SpecError(p + ": expected a path string");
    std::filesystem::path fp = body.get<std::string>();
    if (fp.is_relative()) fp = std::filesystem::path(base_dir) / fp;
    return GridFileSource{fp.string()};
  }
  throw SpecError(p + ": unknown Beltrami source kind");
}

AnalysisParameters parse_parameters(const json& j) {
  AnalysisParameters a;
  if (j.is_null()) return a;
  const std::string p = "parameters";
  check_keys(j, p, {"M", "N", "P", "r_grid", "tol", "max_iter"});
  if (j.contains("M")) a.m = parse_int(j["M"], p + ".M", 4);
  if (j.contains("N")) a.n = parse_int(j["N"], p + ".N", 1);
  if (j.contains("P")) a.p = static_cast<int>(parse_int(j["P"], p + ".P", 1));
  if (j.contains("r_grid")) {
    const auto& rg = j["r_grid"];
    if (!rg.is_array() || rg.empty()) throw SpecError(p + ".r_grid: expected a non-empty array");
    a.r_grid.clear();
    for (std::size_t i = 0; i < rg.size(); ++i) {
      const double r = parse_real(rg[i], p + ".r_grid[" + std::to_string(i) + "]");
      if (!(r > 0.0 && r <= 1.0))
        throw SpecError(p + ".r_grid[" + std::to_string(i) + "]: must lie in (0, 1]");
      a.r_grid.push_back(r);
    }
  }
  if (j.contains("tol")) {
    a.tol = parse_real(j["tol"], p + ".tol");
    if (!(a.tol > 0.0)) throw SpecError(p + ".tol: must be positive");
  }
  if (j.contains("max_iter")) a.max_iter = static_cast<int>(parse_int(j["max_iter"], p + ".max_iter", 0));
  return a;
}

BeltramiGrid build_mu(const BeltramiSource& src, Index m, Report& rep) {
  return std::visit(
      [&](const auto& s) -> BeltramiGrid {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConstantSource>) {
          return sample_coefficient([t = s.t](cplx) { return t; }, m);
        } else if constexpr (std::is_same_v<T, TeichmuellerSource>) {
          const QuadDifferential psi(s.numerator, s.denominator);
          rep.source_diagnostics["psi_in_A1_squared"] = psi.in_a1_squared();
          return make_teichmueller_mu(psi, s.k, m);
        } else if constexpr (std::is_same_v<T, HarmonicSource>) {
          auto h = harmonic_mu_from_rational(RationalMap(s.numerator, s.denominator), s.t, m);
          rep.source_diagnostics["ring_max"] = h.ring_max;
          rep.source_diagnostics["global_max"] = h.global_max;
          rep.source_diagnostics["argmax"] = {h.argmax.real(), h.argmax.imag()};
          rep.source_diagnostics["r_b_norm"] = h.r_b_norm;
          if (!(h.r_b_norm < 2.0))
            rep.notes.push_back("B-norm estimate of r is " + std::to_string(h.r_b_norm) + ", not < 2");
          return std::move(h.mu);
        } else if constexpr (std::is_same_v<T, AhlforsWeillSource>) {
          const auto sd = schwarzian(RationalMap(s.numerator, s.denominator));
          rep.source_diagnostics["exterior_b_norm"] = b_norm(sd, Side::exterior);
          return ahlfors_weill_mu(sd, m);
        } else {
          BeltramiGrid g = read_grid_file(s.path);
          if (g.size() != m)
            rep.notes.push_back("grid file size " + std::to_string(g.size()) + " overrides parameters.M");
          return g;
        }
      },
      src);
}

CoeffSeries<double> padded(Eigen::VectorXcd b, Index min_size) {
  if (b.size() < min_size) {
    const Index old = b.size();
    b.conservativeResize(min_size);
    b.tail(min_size - old).setZero();
  }
  return CoeffSeries<double>(std::move(b));
}

json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string fmt(cplx z) {
  std::ostringstream os;
  os << std::setprecision(17) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

cplx parse_complex(const json& j, const std::string& field) {
  if (j.is_number()) return parse_real(j, field);
  if (j.is_array() && j.size() == 2)
    return {parse_real(j[0], field + "[0]"), parse_real(j[1], field + "[1]")};
  throw SpecError(field + ": expected a number or [re, im]");
}

Polynomial parse_polynomial(const json& j, const std::string& field) {
  if (j.is_object()) {
    check_keys(j, field, {"coefficients"});
    return parse_polynomial(require(j, "coefficients", field), field + ".coefficients");
  }
  return Polynomial(parse_complex_array(j, field));
}

ProblemSpec parse_problem_spec(const json& j, const std::string& base_dir) {
  check_keys(j, "spec", {"source", "parameters"});
  const json& src = require(j, "source", "spec");
  if (!src.is_object() || src.size() != 1)
    throw SpecError("source: exactly one of coeffs, disk_function, beltrami");
  ProblemSpec spec{CoeffsSource{}, parse_parameters(j.contains("parameters") ? j["parameters"] : json()), j};
  const std::string kind = src.begin().key();
  const json& body = src.begin().value();
  if (kind == "coeffs") {
    spec.source = CoeffsSource{parse_complex_array(body, "source.coeffs")};
  } else if (kind == "disk_function") {
    Eigen::VectorXcd a = parse_complex_array(body, "source.disk_function");
    if (a.size() < 2 || std::abs(a(0)) > 1e-14 || std::abs(a(1) - cplx(1.0)) > 1e-12)
      throw SpecError("source.disk_function: need a0 = 0 and a1 = 1");
    spec.source = DiskFunctionSource{std::move(a)};
  } else if (kind == "beltrami") {
    spec.source = parse_beltrami(body, "source.beltrami", base_dir);
  } else {
    throw SpecError("source." + kind + ": unknown source kind");
  }
  return spec;
}

ProblemSpec read_problem_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open spec file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("spec file is not valid JSON: ") + e.what());
  }
  return parse_problem_spec(j, std::filesystem::path(path).parent_path().string());
}

Report analyze(const ProblemSpec& spec) {
  const auto& prm = spec.params;
  Report rep;
  rep.inputs = spec.raw;
  rep.chain_tol = 5e-3;
  CoeffSeries<double> f;
  std::optional<BeltramiGrid> mu;

  if (const auto* c = std::get_if<CoeffsSource>(&spec.source)) {
    f = padded(c->b, 2 * prm.n);
  } else if (const auto* d = std::get_if<DiskFunctionSource>(&spec.source)) {
    Eigen::VectorXcd a = d->a;
    if (a.size() < 2 * prm.n + 1) {
      const Index old = a.size();
      a.conservativeResize(2 * prm.n + 1);
      a.tail(a.size() - old).setZero();
    }
    f = disk_inversion(a);
  } else {
    mu = build_mu(std::get<BeltramiSource>(spec.source), prm.m, rep);
    SolverOptions opts;
    opts.tol = prm.tol;
    opts.max_iter = prm.max_iter;
    opts.n_coeffs = 2 * prm.n;
    const auto sol = solve_beltrami(*mu, opts);
    f = sol.f;
    rep.solver_iterations = sol.iterations;
    rep.solver_residual = sol.residual;
    rep.residual_history = sol.residual_history;
  }

  rep.kappa = grunsky_norm(f, prm.n);
  rep.kappa_p.emplace_back(1, rep.kappa.value);
  for (int p = 2; p <= prm.p; ++p) rep.kappa_p.emplace_back(p, grunsky_norm(root_transform(f, p), prm.n).value);

  if (mu) {
    rep.outer = outer_limit_norm(*mu, prm.p, prm.r_grid, prm.n);
    rep.kappa_hat = rep.outer->value;
    rep.mu_sup = mu->k_sup();
    rep.chain_holds = rep.kappa.value <= rep.kappa_hat + rep.chain_tol &&
                      rep.kappa_hat <= *rep.mu_sup + rep.chain_tol;
  } else {
    for (const auto& [p, v] : rep.kappa_p) rep.kappa_hat = std::max(rep.kappa_hat, v);
    rep.notes.push_back("no Beltrami coefficient given: kappa_hat is max over p of kappa_p");
    rep.chain_holds = rep.kappa.value <= rep.kappa_hat + rep.chain_tol;
  }
  if (!rep.kappa.converged)
    rep.notes.push_back("Grunsky norm not converged at N = " + std::to_string(prm.n));
  if (!(rep.kappa_hat < 1.0))
    throw DomainError("analyze: kappa_hat = " + std::to_string(rep.kappa_hat) +
                      " is not < 1; the input is not a quasiconformally extendable univalent map");
  rep.quasi = quasiinvariants(rep.kappa_hat);
  return rep;
}

json to_json(const Report& r, const std::string& version, const std::string& timestamp) {
  json j;
  j["format"] = "qcw-report 1";
  j["inputs"] = r.inputs;
  json per_size = json::array();
  for (const auto& [n, v] : r.kappa.per_size) per_size.push_back({{"N", n}, {"value", num(v)}});
  j["kappa"] = {{"value", num(r.kappa.value)},
                {"converged", r.kappa.converged},
                {"tail_gap", num(r.kappa.tail_gap)},
                {"per_size", per_size}};
  json kp = json::array();
  for (const auto& [p, v] : r.kappa_p) kp.push_back({{"p", p}, {"value", num(v)}});
  j["kappa_p"] = kp;
  json kh = {{"value", num(r.kappa_hat)}};
  if (r.outer) {
    kh["method"] = "outer_limit";
    kh["p"] = r.outer->p;
    kh["r"] = num(r.outer->r);
    json table = json::array();
    for (const auto& e : r.outer->table) table.push_back({{"p", e.p}, {"r", num(e.r)}, {"value", num(e.value)}});
    kh["table"] = table;
  } else {
    kh["method"] = "max_p_kappa_p";
  }
  j["kappa_hat"] = kh;
  j["k_bounds"] = {num(r.kappa_hat), r.mu_sup ? num(*r.mu_sup) : json(nullptr)};
  j["quasiinvariants"] = {{"kappa_hat", num(r.quasi.kappa_hat)},
                          {"fredholm_rho", num(r.quasi.fredholm_rho)},
                          {"reflection_q", num(r.quasi.reflection_q)},
                          {"green_value", num(r.quasi.green_value)},
                          {"teich_distance", num(r.quasi.teich_distance)}};
  j["chain"] = {{"holds", r.chain_holds}, {"tol", num(r.chain_tol)}};
  json diag = json::object();
  if (r.solver_iterations) {
    json hist = json::array();
    for (double v : r.residual_history) hist.push_back(num(v));
    diag["solver"] = {{"iterations", *r.solver_iterations},
                      {"residual", num(*r.solver_residual)},
                      {"residual_history", hist}};
  }
  diag["source"] = r.source_diagnostics;
  j["diagnostics"] = diag;
  j["notes"] = r.notes;
  j["provenance"] = {{"version", version}, {"timestamp", timestamp}};
  return j;
}

std::string convergence_table(const Report& r) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "# kappa per truncation size\nN\tsigma_max\n";
  for (const auto& [n, v] : r.kappa.per_size) os << n << '\t' << v << '\n';
  os << "\n# kappa_p\np\tkappa_p\n";
  for (const auto& [p, v] : r.kappa_p) os << p << '\t' << v << '\n';
  if (r.outer) {
    os << "\n# outer limit sweep\np\tr\tvalue\n";
    for (const auto& e : r.outer->table) os << e.p << '\t' << e.r << '\t' << e.value << '\n';
  }
  if (!r.residual_history.empty()) {
    os << "\n# solver residuals\niteration\tresidual\n";
    for (std::size_t i = 0; i < r.residual_history.size(); ++i) os << i + 1 << '\t' << r.residual_history[i] << '\n';
  }
  return os.str();
}

std::string format_critical_comparison(const Polynomial& p, const CriticalComparison& c) {
  std::ostringstream os;
  os << "polynomial (ascending):";
  for (int k = 0; k <= p.degree(); ++k) os << "  " << fmt(p.coeff(k));
  os << "\n\ncritical points: " << c.terms.size() << "\n";
  if (!c.terms.empty()) {
    os << "  z_j | m_j | c_j = -m(m+2)/2 | c_j by residue | c'_j (first order)\n";
    for (const auto& t : c.terms)
      os << "  " << fmt(t.z) << " | " << t.multiplicity << " | " << fmt(t.c_closed) << " | "
         << fmt(t.c_residue) << " | " << fmt(t.c1) << "\n";
  }
  os << "\nmax|c_j|          " << fmt(c.max_abs_c) << "\n";
  os << "kappa(p)          " << fmt(c.kappa) << (c.kappa_converged ? "" : "  (not converged)") << "\n";
  os << "||S_p||_B (disk)  " << fmt(c.b_norm) << "  (grid lower estimate)\n";
  auto ratio = [](double a, double b) { return b > 0.0 ? fmt(a / b) : std::string("undefined"); };
  os << "kappa / max|c_j|  " << ratio(c.kappa, c.max_abs_c) << "\n";
  os << "||S_p||_B / max|c_j|  " << ratio(c.b_norm, c.max_abs_c) << "\n";
  os << "kappa / ||S_p||_B     " << ratio(c.kappa, c.b_norm) << "\n";
  for (const auto& n : c.notes) os << "note: " << n << "\n";
  os << "No relation between these quantities is asserted.\n";
  return os.str();
}

}  // namespace qcw
