#include <doctest.h>

#include "qcw/domains.hpp"
#include "qcw/errors.hpp"

using namespace qcw;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  Eigen::VectorXd x, w;
  gauss_legendre(8, x, w);
  CHECK(std::abs(w.sum() - 2.0) < 1e-14);
  CHECK(std::abs(w.dot(x.array().pow(14).matrix()) - 2.0 / 15.0) < 1e-14);
}

TEST_CASE("ellipse basis") {
  const auto e = ellipse_basis(1.25, 0.75, 8);
  CHECK(e.polynomials.size() == 9);
  CHECK(e.gram_deviation < 1e-10);
  // <1, P_0> = P_0 * area
  const auto ip = domain_inner_products(e, {[](cplx) { return cplx(1.0); }});
  const double p0 = 2.0 / std::sqrt(kPi) / std::sqrt(4.0 - 0.25);
  CHECK(std::abs(ip(0, 0) - kPi * 1.25 * 0.75) < 1e-10);
  CHECK(std::abs(e.polynomials[0](0.0) - p0) < 1e-14);
  CHECK(projection_residual(e, [](cplx z) { return z * z; }, 2) < 1e-10);
  CHECK_THROWS_AS(ellipse_basis(1.25, 0.5, 4), UsageError);
  CHECK_THROWS_AS(ellipse_basis(0.75, 1.25, 4), UsageError);
}

TEST_CASE("lemniscate basis against a polar oracle") {
  const auto l = lemniscate_basis(5);
  CHECK(l.gram_deviation < 1e-8);
  // right lobe: r^2 < 2 cos(2 theta); int |z|^2 dA = pi / 4
  const auto ip = domain_inner_products(l, {[](cplx z) { return z; }});
  CHECK(std::abs(ip(0, 0) - kPi / 4.0) < 1e-8);
  // independent midpoint rule in the z-plane
  const int nt = 400, nr = 400;
  double acc = 0.0;
  for (int i = 0; i < nt; ++i) {
    const double th = -kPi / 4 + (i + 0.5) * (kPi / 2) / nt;
    const double rmax = std::sqrt(2.0 * std::cos(2.0 * th));
    for (int j = 0; j < nr; ++j) {
      const double r = (j + 0.5) * rmax / nr;
      acc += std::norm(l.polynomials[0](std::polar(r, th))) * r * (rmax / nr) * (kPi / 2 / nt);
    }
  }
  CHECK(std::abs(acc - 1.0) < 1e-4);
}

TEST_CASE("starlike basis") {
  const auto s = starlike_basis(Polynomial{0.0, 1.0}, 6);
  CHECK(s.gram_deviation < 1e-12);
  CHECK(std::abs(s.polynomials[3].coeff(3) - std::sqrt(4.0 / kPi)) < 1e-14);
  CHECK(starlike_basis(Polynomial{0.0, 1.0, 0.2}, 4).gram_deviation < 1e-8);
  CHECK_THROWS_AS(starlike_basis(Polynomial{0.1, 1.0}, 3), UsageError);
  CHECK_THROWS_AS(projection_residual(s, [](cplx z) { return z; }, 7), UsageError);
}

TEST_CASE("polygon bound") {
  const auto a = polygon_bound({0.5}, 0.25);
  CHECK(a.value == 0.75);
  CHECK(a.all_equalities);
  const auto sq = polygon_bound({0.5, 0.5, 0.5, 0.5}, 1.0);
  CHECK(sq.value == 0.5);
  CHECK_FALSE(sq.all_equalities);
  CHECK(polygon_bound({}, 0.4).all_equalities);
  CHECK(std::abs(polygon_bound({}, 0.4).value - 0.6) < 1e-15);
  CHECK_THROWS_AS(polygon_bound({0.5}, 0.0), DomainError);
  CHECK_THROWS_AS(polygon_bound({1.0}, 0.5), DomainError);
}
