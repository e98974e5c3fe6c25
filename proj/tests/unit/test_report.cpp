#include <doctest.h>

#include <json.hpp>

#include "qcw/errors.hpp"
#include "qcw/report.hpp"

using namespace qcw;
using nlohmann::json;

namespace {

void spec_fails(const std::string& text, const std::string& field) {
  try {
    parse_problem_spec(json::parse(text));
    FAIL("accepted: " << text);
  } catch (const SpecError& e) {
    CHECK_MESSAGE(std::string(e.what()).find(field) != std::string::npos, e.what());
  }
}

}  // namespace

TEST_CASE("complex numbers and polynomials") {
  CHECK(parse_complex(json(2.5), "x") == cplx(2.5));
  CHECK(parse_complex(json::parse("[1, -2]"), "x") == cplx(1.0, -2.0));
  CHECK_THROWS_AS(parse_complex(json::parse("[1, 2, 3]"), "x"), UsageError);
  CHECK_THROWS_AS(parse_complex(json("a"), "x"), UsageError);
  const auto p = parse_polynomial(json::parse("[0, 1, [0, 0.5]]"));
  CHECK(p.degree() == 2);
  CHECK(p.coeff(2) == cplx(0.0, 0.5));
  CHECK(parse_polynomial(json::parse(R"({"coefficients": [1, 2]})")).degree() == 1);
  CHECK_THROWS_AS(parse_polynomial(json::parse("[]")), UsageError);
}

TEST_CASE("problem spec parsing") {
  const auto s = parse_problem_spec(json::parse(R"({"source": {"coeffs": [0, 0.5]}})"));
  REQUIRE(std::holds_alternative<CoeffsSource>(s.source));
  CHECK(std::get<CoeffsSource>(s.source).b.size() == 2);
  CHECK(s.params.m == 512);
  CHECK(s.params.r_grid.back() == 1.0);

  const auto t = parse_problem_spec(json::parse(
      R"({"source": {"beltrami": {"teichmueller": {"psi": [0, 1], "k": 0.3}}}, "parameters": {"M": 64, "N": 8, "P": 2}})"));
  REQUIRE(std::holds_alternative<BeltramiSource>(t.source));
  const auto& b = std::get<BeltramiSource>(t.source);
  REQUIRE(std::holds_alternative<TeichmuellerSource>(b));
  CHECK(std::get<TeichmuellerSource>(b).k == 0.3);
  CHECK(t.params.m == 64);
  CHECK(t.params.p == 2);

  spec_fails(R"({})", "source");
  spec_fails(R"({"source": {"coeffs": [0], "disk_function": [0, 1]}})", "source");
  spec_fails(R"({"source": {"coeffs": [0]}, "extra": 1})", "extra");
  spec_fails(R"({"source": {"beltrami": {"teichmueller": {"psi": [0, 1], "k": 1.3}}}})",
             "source.beltrami.teichmueller.k");
  spec_fails(R"({"source": {"beltrami": {"constant": {"t": 0.5, "s": 1}}}})", "source.beltrami.constant");
  spec_fails(R"({"source": {"coeffs": [0]}, "parameters": {"M": 1}})", "parameters.M");
  spec_fails(R"({"source": {"coeffs": [0]}, "parameters": {"r_grid": [0.5, 1.2]}})", "parameters.r_grid");
}

TEST_CASE("analyze a coefficient source") {
  auto spec = parse_problem_spec(
      json::parse(R"({"source": {"coeffs": [0, 0.5]}, "parameters": {"N": 8, "P": 2}})"));
  const auto r = analyze(spec);
  CHECK(std::abs(r.kappa.value - 0.5) < 1e-12);
  CHECK(std::abs(r.kappa_hat - 0.5) < 1e-9);
  CHECK(std::abs(r.quasi.fredholm_rho - 2.0) < 1e-8);
  CHECK(std::abs(r.quasi.reflection_q - 0.8) < 1e-8);
  CHECK(r.kappa_p.size() == 2);
  CHECK_FALSE(r.outer.has_value());

  const json j = to_json(r, "1.0.0", "2026-01-01T00:00:00Z");
  CHECK(j.at("format") == "qcw-report 1");
  for (const char* key : {"inputs", "kappa", "kappa_p", "kappa_hat", "k_bounds", "quasiinvariants", "chain",
                          "diagnostics", "notes", "provenance"})
    CHECK_MESSAGE(j.contains(key), key);
  CHECK(j.at("provenance").at("version") == "1.0.0");
  CHECK(j.at("kappa").at("per_size").size() == 8);
  CHECK(j.at("inputs") == spec.raw);
  CHECK(convergence_table(r).find('\t') != std::string::npos);

  auto bad = parse_problem_spec(json::parse(R"({"source": {"coeffs": [0, 1.2]}, "parameters": {"N": 4}})"));
  CHECK_THROWS_AS(analyze(bad), DomainError);
}

TEST_CASE("infinite quasiinvariants serialize as strings") {
  auto spec = parse_problem_spec(json::parse(R"({"source": {"coeffs": [0]}, "parameters": {"N": 4, "P": 2}})"));
  const json j = to_json(analyze(spec), "1.0.0", "t");
  CHECK(j.at("quasiinvariants").at("fredholm_rho") == "inf");
  CHECK(j.at("quasiinvariants").at("green_value") == "-inf");
}

TEST_CASE("critical comparison text") {
  const Polynomial p{0.0, 1.0, 0.0, -1.0 / 3.0};
  const auto text = format_critical_comparison(p, compare_critical_data(p));
  CHECK(text.find("No relation between these quantities is asserted.") != std::string::npos);
}
