#include <doctest.h>

#include "qcw/beltrami.hpp"
#include "qcw/errors.hpp"

using namespace qcw;

namespace {

constexpr double kPi = 3.14159265358979323846;

BeltramiGrid constant_grid(cplx t, Index m) {
  return BeltramiGrid(Eigen::MatrixXcd(t * disk_coverage(m).cast<cplx>()));
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(BeltramiGrid(Eigen::MatrixXcd::Zero(3, 4)), UsageError);
  Eigen::MatrixXcd corner = Eigen::MatrixXcd::Zero(8, 8);
  corner(0, 0) = 0.1;
  CHECK_THROWS_AS(BeltramiGrid{corner}, DomainError);
  Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(8, 8);
  big(4, 4) = 1.0;
  CHECK_THROWS_AS(BeltramiGrid{big}, DomainError);
  CHECK(BeltramiGrid::zero(16).k_sup() == 0.0);
}

TEST_CASE("disk coverage integrates to pi") {
  const Index m = 128;
  const double h = 2.0 / m;
  CHECK(std::abs(disk_coverage(m).sum() * h * h - kPi) < 1e-3);
}

TEST_CASE("zero coefficient gives the identity") {
  const auto sol = solve_beltrami(BeltramiGrid::zero(32));
  CHECK(sol.f.b.cwiseAbs().maxCoeff() == 0.0);
  CHECK(sol.residual == 0.0);
}

TEST_CASE("constant coefficient gives z + t/z") {
  SolverOptions o;
  o.n_coeffs = 8;
  const auto sol = solve_beltrami(constant_grid(0.3, 128), o);
  CHECK(std::abs(sol.f.b(1) - 0.3) < 3e-3);
  CHECK(std::abs(sol.f.b(0)) < 1e-10);
  CHECK(sol.f.b.tail(7).cwiseAbs().maxCoeff() < 2e-2);
  CHECK(sol.residual <= 1e-10);
  CHECK(sol.residual_history.size() == static_cast<std::size_t>(sol.iterations));
}

TEST_CASE("iteration limit is reported") {
  SolverOptions o;
  o.max_iter = 2;
  o.tol = 1e-14;
  CHECK_THROWS_AS(solve_beltrami(constant_grid(0.6, 32), o), IterationLimitError);
}

TEST_CASE("moment matrix oracles") {
  const Index m = 256;
  const auto a = moment_matrix(constant_grid(0.5, m), 4);
  CHECK(std::abs(a(0, 0) - 0.5) < 2e-4);
  CHECK(a.block(1, 1, 3, 3).cwiseAbs().maxCoeff() < 1e-3);

  // 0.5 conj(z): nonzero only for m + n = 3, value 0.5 sqrt(mn) / 2
  const auto zb = sample_coefficient([](cplx z) { return 0.5 * std::conj(z); }, m);
  const auto b = moment_matrix(zb, 3);
  CHECK(std::abs(b(0, 1) - 0.5 * std::sqrt(2.0) / 2.0) < 1e-3);
  CHECK(std::abs(b(0, 0)) < 1e-10);
  CHECK(std::abs(b(1, 1)) < 1e-3);

  const auto v = cell_moments(disk_coverage(m).cast<cplx>(), 3);
  CHECK(std::abs(v(0) - kPi) < 1e-3);
  CHECK(v.tail(3).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("truncation and root transform of a coefficient") {
  const Index m = 256;
  const auto c = constant_grid(0.4, m);
  const auto tr = truncate_mu(c, 0.5);
  CHECK(std::abs(moment_matrix(tr, 1)(0, 0) - 0.4 * 0.25) < 1e-3);
  CHECK_THROWS_AS(truncate_mu(c, 1.5), DomainError);

  // t (conj z / z): moments vanish except m + n = 4 where A = t sqrt(mn) / 2
  const auto rt = root_transform_mu(c, 2);
  const auto a = moment_matrix(rt, 3);
  CHECK(std::abs(a(1, 1) - 0.4) < 5e-3);
  CHECK(std::abs(a(0, 2) - 0.4 * std::sqrt(3.0) / 2.0) < 5e-3);
  CHECK(std::abs(a(0, 0)) < 1e-3);
  CHECK(rt.k_sup() <= 0.4 + 1e-12);
}

TEST_CASE("Teichmueller coefficient of z^2") {
  const QuadDifferential psi(Polynomial{0.0, 0.0, 1.0});
  REQUIRE(psi.zeros().size() == 1);
  CHECK(psi.zeros()[0].multiplicity == 2);
  CHECK(psi.in_a1_squared());
  CHECK_FALSE(QuadDifferential(Polynomial{0.0, 1.0}).in_a1_squared());
  const auto mu = make_teichmueller_mu(psi, 0.3, 256);
  const auto a = moment_matrix(mu, 3);
  CHECK(std::abs(a(1, 1) - 0.3) < 5e-3);
  CHECK(std::abs(a(0, 2) - 0.3 * std::sqrt(3.0) / 2.0) < 5e-3);
  CHECK_THROWS_AS(QuadDifferential(Polynomial{1.0}, Polynomial{-0.5, 1.0}), UsageError);
  CHECK_THROWS_AS(make_teichmueller_mu(psi, 1.0, 16), DomainError);
}

TEST_CASE("radial stretch has trivial exterior") {
  SolverOptions o;
  o.n_coeffs = 8;
  const auto mu = sample_coefficient([](cplx z) { return z == cplx(0.0) ? cplx(0.0) : 0.5 * z / std::conj(z); }, 128);
  const auto sol = solve_beltrami(mu, o);
  CHECK(sol.f.b.cwiseAbs().maxCoeff() < 1e-2);
}

TEST_CASE("Beurling cell kernel") {
  CHECK(BeurlingOperator::cell_kernel(0.0, 0.1) == cplx(0.0));
  // far field approaches -(h^2/pi) / c^2
  const cplx c(3.0, 1.0);
  const double h = 0.01;
  CHECK(std::abs(BeurlingOperator::cell_kernel(c, h) + h * h / kPi / (c * c)) < 1e-9 * h * h);
}
