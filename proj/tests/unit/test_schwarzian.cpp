#include <doctest.h>

#include <algorithm>

#include "qcw/errors.hpp"
#include "qcw/schwarzian.hpp"

using namespace qcw;

namespace {

const CriticalTerm& at(const std::vector<CriticalTerm>& terms, cplx z) {
  auto it = std::min_element(terms.begin(), terms.end(), [z](const CriticalTerm& a, const CriticalTerm& b) {
    return std::abs(a.z - z) < std::abs(b.z - z);
  });
  REQUIRE(it != terms.end());
  return *it;
}

}  // namespace

TEST_CASE("critical partial fractions") {
  const auto sq = critical_partial_fractions(Polynomial{0.0, 0.0, 1.0});
  REQUIRE(sq.size() == 1);
  CHECK(sq[0].multiplicity == 1);
  CHECK(sq[0].c_closed == -1.5);
  CHECK(std::abs(sq[0].c_residue + 1.5) < 1e-10);

  const auto cube = critical_partial_fractions(Polynomial{0.0, 0.0, 0.0, 1.0});
  REQUIRE(cube.size() == 1);
  CHECK(cube[0].multiplicity == 2);
  CHECK(cube[0].c_closed == -4.0);
  CHECK(std::abs(cube[0].c_residue + 4.0) < 1e-10);

  const auto t = critical_partial_fractions(Polynomial{0.0, 1.0, 0.0, -1.0 / 3.0});
  REQUIRE(t.size() == 2);
  CHECK(std::abs(at(t, 1.0).z - 1.0) < 1e-12);
  CHECK(std::abs(at(t, -1.0).z + 1.0) < 1e-12);
  for (const auto& term : t) CHECK(std::abs(term.c_residue + 1.5) < 1e-10);

  CHECK_THROWS_AS(critical_partial_fractions(Polynomial{0.0, 1.0}), UsageError);
}

TEST_CASE("Schwarzian of z + t/z") {
  const double t = 0.1;
  const RationalMap f(Polynomial{t, 0.0, 1.0}, Polynomial{0.0, 1.0});
  CHECK(f.normalized());
  CHECK_FALSE(f.is_polynomial());
  const auto s = schwarzian(f);
  const cplx z(800.0, 300.0);
  CHECK(std::abs(s(z) * std::pow(z, 4) + 6.0 * t) < 1e-5);
  // pointwise value against the rational form
  const cplx w(0.7, -0.4);
  CHECK(std::abs(s(w) - s.num(w) / s.den(w)) < 1e-10 * std::abs(s(w)));
  CHECK(std::abs(b_norm(s, Side::exterior) - 6.0 * t) < 1e-6);
  CHECK(boundary_profile(s, 1.001) < 1e-4);

  const auto aw = ahlfors_weill_mu(s, 128);
  CHECK(std::abs(aw.samples()(64, 64) - 3.0 * t) < 2e-3);
  CHECK(aw.k_sup() <= 3.0 * t + 1e-12);
}

TEST_CASE("Moebius maps") {
  const auto s = schwarzian(RationalMap(Polynomial{1.0, 2.0}, Polynomial{3.0, -1.0}));
  CHECK(s.vanishes());
  CHECK(s.poles.empty());
  const auto aw = ahlfors_weill_mu(s, 32);
  CHECK(aw.k_sup() == 0.0);

  const RationalMap g(Polynomial{0.3, 1.0, cplx(0.0, 0.2), 0.1}, Polynomial{2.0, 0.5});
  const RationalMap mg(cplx(2.0) * g.numerator() + cplx(0.0, 1.0) * g.denominator(),
                       cplx(0.5) * g.numerator() + cplx(1.0, -1.0) * g.denominator());
  CHECK(rational_form_distance(schwarzian(g), schwarzian(mg)) < 1e-10);
  CHECK(std::abs(schwarzian_at(g, cplx(0.2, 0.1)) - schwarzian_at(mg, cplx(0.2, 0.1))) < 1e-9);
}

TEST_CASE("rational map construction") {
  CHECK_THROWS_AS(RationalMap(Polynomial{1.0}, Polynomial()), UsageError);
  // (z^2 - 1) / (z - 1) reduces to z + 1
  const RationalMap r(Polynomial{-1.0, 0.0, 1.0}, Polynomial{-1.0, 1.0});
  CHECK(r.is_polynomial());
  CHECK(std::abs(r(cplx(3.0)) - 4.0) < 1e-12);
  const auto back = r.reflected().reflected();
  CHECK(std::abs(back(cplx(0.3, 0.2)) - r(cplx(0.3, 0.2))) < 1e-12);
  CHECK_THROWS_AS(schwarzian(RationalMap(Polynomial{2.0})), DomainError);
}

TEST_CASE("harmonic coefficient from 1/(z-1)^2") {
  const RationalMap r(Polynomial{1.0}, Polynomial{1.0, -2.0, 1.0});
  const auto h = harmonic_mu_from_rational(r, 0.5, 128);
  CHECK(h.global_max < 1.0);
  CHECK(h.global_max <= 2.0 * 0.5);
  // |mu| -> 2t cos^2(phi) approaching z = 1 at angle phi to the radius
  CHECK(h.global_max > 0.9);
  CHECK(std::abs(h.argmax - 1.0) < 0.1);
  CHECK(h.ring_max > 0.8);
  CHECK(h.r_b_norm > 3.9);
  CHECK(h.r_b_norm <= 4.0 + 1e-9);
  CHECK_THROWS_AS(harmonic_mu_from_rational(r, 1.0, 32), DomainError);
  CHECK_THROWS_AS(harmonic_mu_from_rational(RationalMap(Polynomial{1.0}, Polynomial{-2.0, 1.0}), 0.5, 32),
                  UsageError);
}

TEST_CASE("critical comparison") {
  const auto c = compare_critical_data(Polynomial{0.0, 1.0, 0.0, -1.0 / 3.0});
  CHECK(std::abs(c.max_abs_c - 1.5) < 1e-10);
  CHECK(c.terms.size() == 2);
  CHECK(c.kappa > 0.0);
  CHECK(c.kappa <= 1.0 + 1e-9);
  CHECK(c.b_norm > 0.0);
  CHECK_THROWS_AS(compare_critical_data(Polynomial{0.0, 2.0, 1.0}), NormalizationError);
  CHECK_THROWS_AS(compare_critical_data(Polynomial{1.0}), UsageError);
}
