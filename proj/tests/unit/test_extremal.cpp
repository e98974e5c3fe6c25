#include <doctest.h>

#include <cmath>
#include <limits>

#include "qcw/errors.hpp"
#include "qcw/extremal.hpp"

using namespace qcw;

namespace {

BeltramiGrid constant_grid(double t, Index m) {
  return BeltramiGrid(Eigen::MatrixXcd(t * disk_coverage(m).cast<cplx>()));
}

}  // namespace

TEST_CASE("alpha functional on explicit directions") {
  const Index m = 256;
  CHECK(std::abs(alpha_functional(constant_grid(0.5, m), 8) - 1.0) < 2e-3);
  const auto radial = sample_coefficient(
      [](cplx z) { return z == cplx(0.0) ? cplx(0.0) : 0.9 * std::conj(z) / std::abs(z); }, m);
  CHECK(std::abs(alpha_functional(radial, 8) - 2.0 * std::sqrt(2.0) / 3.0) < 2e-3);
  const auto teich = sample_coefficient(
      [](cplx z) { return z == cplx(0.0) ? cplx(0.0) : 0.9 * std::conj(z * z) / std::norm(z); }, m);
  CHECK(std::abs(alpha_functional(teich, 8) - 1.0) < 2e-3);
  CHECK_THROWS_AS(alpha_functional(BeltramiGrid::zero(16), 4), DomainError);
}

TEST_CASE("grunsky curve") {
  const double alpha = 2.0 * std::sqrt(2.0) / 3.0;
  CHECK(std::abs(grunsky_curve(alpha, 0.3) - 0.290637) < 1e-6);
  CHECK(std::abs(grunsky_curve(1.0, 0.4) - 0.4) < 1e-15);
  CHECK(std::abs(grunsky_curve(0.0, 0.4) - 0.16) < 1e-15);
  CHECK(std::abs(grunsky_curve(0.5, cplx(0.0, 0.3)) - grunsky_curve(0.5, 0.3)) < 1e-15);
  CHECK_THROWS_AS(grunsky_curve(0.5, 1.0), DomainError);
  CHECK_THROWS_AS(grunsky_curve(1.5, 0.3), DomainError);
  double prev = 0;
  for (int i = 1; i < 10; ++i) {
    const double v = grunsky_curve(0.7, 0.1 * i);
    CHECK(v > prev);
    CHECK(v <= 0.1 * i + 1e-15);
    prev = v;
  }
}

TEST_CASE("quasiinvariants") {
  const auto q = quasiinvariants(1.0 / 3.0);
  CHECK(std::abs(q.reflection_q - 0.6) < 1e-15);
  CHECK(std::abs(q.fredholm_rho - 3.0) < 1e-14);
  CHECK(std::abs(q.green_value - std::log(1.0 / 3.0)) < 1e-15);
  CHECK(std::abs(q.teich_distance - 0.5 * std::log(2.0)) < 1e-15);
  const auto z = quasiinvariants(0.0);
  CHECK(z.fredholm_rho == std::numeric_limits<double>::infinity());
  CHECK(z.green_value == -std::numeric_limits<double>::infinity());
  CHECK(z.reflection_q == 0.0);
  CHECK_THROWS_AS(quasiinvariants(1.0), DomainError);
  CHECK_THROWS_AS(quasiinvariants(-0.1), DomainError);
  for (double k : {0.1, 0.5, 0.9}) {
    const auto v = quasiinvariants(k);
    CHECK(std::abs((1 + v.reflection_q) / (1 - v.reflection_q) - std::pow((1 + k) / (1 - k), 2)) < 1e-10);
    CHECK(1.0 / v.fredholm_rho <= v.reflection_q);
  }
}

TEST_CASE("outer limit on a constant coefficient") {
  const auto mu = constant_grid(0.4, 128);
  const auto out = outer_limit_norm(mu, 3, {0.9, 1.0}, 8);
  CHECK(out.table.size() == 6);
  CHECK(std::abs(out.value - 0.4) < 2e-3);
  CHECK(out.r == 1.0);
  for (const auto& e : out.table) CHECK(e.value <= out.value);
  CHECK_THROWS_AS(outer_limit_norm(mu, 2, {}, 8), UsageError);
}

TEST_CASE("inverse Fredholm eigenvalue") {
  const auto chi = constant_grid(0.5, 128);
  CHECK(std::abs(inverse_fredholm_eigenvalue(chi, 0.4, 8) - 0.4) < 2e-3);
  CHECK_THROWS_AS(inverse_fredholm_eigenvalue(chi, 1.0, 8), DomainError);
  CHECK_THROWS_AS(inverse_fredholm_eigenvalue(chi, 0.0, 8), DomainError);
}
