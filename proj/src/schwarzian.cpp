#include "qcw/schwarzian.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>

#include "qcw/errors.hpp"
#include "qcw/grunsky.hpp"

namespace qcw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kContourNodes = 256;

double max_abs(const Polynomial& p) { return p.coeffs().cwiseAbs().maxCoeff(); }

// (1/2 pi i) contour integrals of (z - z0) S and S on |z - z0| = radius.
std::pair<cplx, cplx> laurent_coefficients(const RationalMap& f, cplx z0, double radius) {
  cplx c = 0.0, c1 = 0.0;
  for (int j = 0; j < kContourNodes; ++j) {
    const cplx e = std::polar(radius, 2.0 * kPi * j / kContourNodes);
    const cplx s = schwarzian_at(f, z0 + e);
    c += e * e * s;
    c1 += e * s;
  }
  return {c / static_cast<double>(kContourNodes), c1 / static_cast<double>(kContourNodes)};
}

std::vector<SchwarzianPole> pole_data(const RationalMap& f, const std::vector<RootCluster>& clusters) {
  std::vector<SchwarzianPole> out;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const cplx z = clusters[i].z;
    double radius = 0.5 * std::max(1.0, std::abs(z));
    for (std::size_t j = 0; j < clusters.size(); ++j)
      if (j != i) radius = std::min(radius, 0.3 * std::abs(clusters[j].z - z));
    const auto [c, c1] = laurent_coefficients(f, z, radius);
    out.push_back({z, clusters[i].multiplicity, c, c1});
  }
  return out;
}

struct SupResult {
  double value = 0;
  int skipped = 0;
};

SupResult weighted_sup(const CoefficientField& phi, const BNormOptions& opts) {
  if (opts.radial < 2 || opts.angular < 4) throw UsageError("b_norm: grid resolution too small");
  SupResult res;
  double best = -1.0, br = 0.0, bt = 0.0;
  auto visit = [&](double r, double theta) {
    const cplx v = phi(std::polar(r, theta));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      ++res.skipped;
      return;
    }
    const double w = (1.0 - r * r) * (1.0 - r * r) * std::abs(v);
    if (w > best) {
      best = w;
      br = r;
      bt = theta;
    }
  };
  const double dr = 1.0 / opts.radial, dt = 2.0 * kPi / opts.angular;
  visit(0.0, 0.0);
  for (int i = 1; i < opts.radial; ++i)
    for (int j = 0; j < opts.angular; ++j) visit(i * dr, j * dt);
  const double r0 = br, t0 = bt;
  constexpr int kRefine = 20;
  for (int a = 0; a <= kRefine; ++a)
    for (int b = 0; b <= kRefine; ++b) {
      const double r = r0 + dr * (2.0 * a / kRefine - 1.0);
      if (r < 0.0 || r >= 1.0) continue;
      visit(r, t0 + dt * (2.0 * b / kRefine - 1.0));
    }
  res.value = std::max(best, 0.0);
  return res;
}

}  // namespace

// ---------------------------------------------------------------------------
// RationalMap

RationalMap::RationalMap(Polynomial numerator, Polynomial denominator, double reduce_tol)
    : num_(numerator.trimmed(0.0)), den_(denominator.trimmed(0.0)) {
  if (den_.is_zero()) throw UsageError("RationalMap: denominator is identically zero");
  if (den_.degree() > 0 && !num_.is_zero()) {
    for (const auto& cl : clustered_roots(den_)) {
      for (int k = 0; k < cl.multiplicity; ++k) {
        if (std::abs(num_(cl.z)) > reduce_tol * num_.magnitude(cl.z)) break;
        num_ = num_.deflated(cl.z);
        den_ = den_.deflated(cl.z);
      }
    }
  }
  const cplx lead = den_.leading();
  num_ = (1.0 / lead) * num_;
  den_ = (1.0 / lead) * den_;
}

bool RationalMap::normalized() const {
  return num_.degree() == den_.degree() + 1 &&
         std::abs(num_.leading() - den_.leading()) <= 1e-12 * std::abs(den_.leading());
}

RationalMap RationalMap::reflected() const {
  // f(1/u) = u^{dQ} Prev(u) / (u^{dP} Qrev(u))
  const int dp = std::max(num_.degree(), 0), dq = den_.degree();
  const Polynomial pr = num_.reversed(), qr = den_.reversed();
  if (num_.is_zero()) return RationalMap(Polynomial(), Polynomial::constant(1.0));
  if (dp >= dq) return RationalMap(pr, Polynomial::monomial(dp - dq) * qr);
  return RationalMap(Polynomial::monomial(dq - dp) * pr, qr);
}

cplx schwarzian_at(const RationalMap& f, cplx z) {
  Eigen::VectorXcd p = f.numerator().taylor(z, 3), q = f.denominator().taylor(z, 3);
  // S is invariant under f -> 1/f; divide by the larger of the two values.
  if (std::abs(q(0)) < std::abs(p(0))) std::swap(p, q);
  cplx g[4];
  for (int k = 0; k < 4; ++k) {
    cplx acc = p(k);
    for (int j = 1; j <= k; ++j) acc -= q(j) * g[k - j];
    g[k] = acc / q(0);
  }
  const cplx r = g[2] / g[1];
  return 6.0 * g[3] / g[1] - 6.0 * r * r;
}

// ---------------------------------------------------------------------------
// Schwarzian and its poles

bool SchwarzianData::vanishes(double rel_tol) const {
  return max_abs(num) <= rel_tol * max_abs(den);
}

SchwarzianData schwarzian(const RationalMap& f) {
  const Polynomial& P = f.numerator();
  const Polynomial& Q = f.denominator();
  const Polynomial a = P.derivative() * Q, b = P * Q.derivative();
  const double scale = std::max(max_abs(a), max_abs(b));
  if (scale == 0.0 || max_abs(a - b) <= 1e-14 * scale)
    throw DomainError("schwarzian: map is constant");
  const Polynomial W = (a - b).trimmed(1e-14);
  // f''/f' = n / d with f' = W / Q^2
  const Polynomial n = W.derivative() * Q - cplx(2.0) * (W * Q.derivative());
  const Polynomial d = W * Q;
  const Polynomial num = cplx(2.0) * (n.derivative() * d - n * d.derivative()) - n * n;
  const Polynomial den = cplx(2.0) * (d * d);
  SchwarzianData s{f, num, den, {}};
  if (W.degree() > 0) s.poles = pole_data(f, clustered_roots(W));
  return s;
}

double rational_form_distance(const SchwarzianData& a, const SchwarzianData& b) {
  const Polynomial x = a.num * b.den, y = b.num * a.den;
  const double scale = std::max({max_abs(x), max_abs(y), max_abs(a.den * b.den)});
  return max_abs(x - y) / scale;
}

std::vector<CriticalTerm> critical_partial_fractions(const Polynomial& p) {
  if (p.degree() < 2) throw UsageError("critical_partial_fractions: degree must be >= 2");
  const Polynomial dp = p.derivative();
  const auto clusters = clustered_roots(dp);
  std::string bad;
  for (const auto& cl : clusters)
    if (cl.residual > 1e-8 * std::max(1.0, dp.magnitude(cl.z)))
      bad += " z=" + std::to_string(cl.z.real()) + "+" + std::to_string(cl.z.imag()) +
             "i residual=" + std::to_string(cl.residual);
  if (!bad.empty()) throw NumericError("critical_partial_fractions: root refinement failed:" + bad);

  const RationalMap f(p);
  std::vector<CriticalTerm> out;
  for (const auto& pole : pole_data(f, clusters)) {
    const double m = pole.multiplicity;
    out.push_back({pole.z, pole.multiplicity, -m * (m + 2.0) / 2.0, pole.c, pole.c1});
  }
  return out;
}

// ---------------------------------------------------------------------------
// B-norms

double weighted_disk_sup(const CoefficientField& phi, const BNormOptions& opts) {
  const auto res = weighted_sup(phi, opts);
  if (res.skipped > 0) std::clog << "b_norm: skipped " << res.skipped << " non-finite nodes\n";
  return res.value;
}

double b_norm(const SchwarzianData& s, Side side, const BNormOptions& opts) {
  if (s.vanishes()) return 0.0;
  if (side == Side::interior)
    return weighted_disk_sup([&s](cplx z) { return schwarzian_at(s.map, z); }, opts);
  // (|z|^2-1)^2 |S_f(z)| = (1-|u|^2)^2 |S_g(u)| with g(u) = f(1/u), z = 1/u.
  const RationalMap g = s.map.reflected();
  return weighted_disk_sup([&g](cplx u) { return schwarzian_at(g, u); }, opts);
}

double boundary_profile(const SchwarzianData& s, double r, int angular) {
  if (!(r > 0.0) || r == 1.0) throw UsageError("boundary_profile: radius must be positive and != 1");
  const double w = (1.0 - r * r) * (1.0 - r * r);
  double best = 0.0;
  for (int j = 0; j < angular; ++j) {
    const cplx v = schwarzian_at(s.map, std::polar(r, 2.0 * kPi * j / angular));
    if (std::isfinite(v.real()) && std::isfinite(v.imag())) best = std::max(best, w * std::abs(v));
  }
  return best;
}

BeltramiGrid ahlfors_weill_mu(const SchwarzianData& s, Index m) {
  if (s.vanishes()) return BeltramiGrid::zero(m);
  const double b = b_norm(s, Side::exterior);
  if (!(b < 2.0))
    throw DomainError("ahlfors_weill_mu: exterior B-norm estimate " + std::to_string(b) + " is not < 2");
  const RationalMap g = s.map.reflected();
  auto field = [&g](cplx z) -> cplx {
    const double w = 1.0 - std::norm(z);
    return -0.5 * w * w * schwarzian_at(g, std::conj(z));
  };
  return sample_coefficient(field, m);
}

HarmonicCoefficient harmonic_mu_from_rational(const RationalMap& r, cplx t, Index m) {
  if (!(std::abs(t) < 1.0)) throw DomainError("harmonic_mu_from_rational: |t| must be < 1");
  if (r.denominator().degree() > 0)
    for (const auto& cl : clustered_roots(r.denominator()))
      if (std::abs(std::abs(cl.z) - 1.0) > 1e-8)
        throw UsageError("harmonic_mu_from_rational: pole at |z| = " + std::to_string(std::abs(cl.z)) +
                         " is not on the unit circle");
  if (r.numerator().is_zero()) return {BeltramiGrid::zero(m), 0.0, 0.0, 0.0, 0.0};

  auto field = [&r, t](cplx z) -> cplx {
    const double w = 1.0 - std::norm(z);
    return -0.5 * t * w * w * r(std::conj(z));
  };
  HarmonicCoefficient out{sample_coefficient(field, m), 0.0, 0.0, 0.0, 0.0};
  const auto& s = out.mu.samples();
  const double ring = 1.0 - 1.5 * out.mu.cell_size();
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) {
      const double a = std::abs(s(i, j));
      const cplx c = out.mu.center(i, j);
      if (a > out.global_max) {
        out.global_max = a;
        out.argmax = c;
      }
      if (std::abs(c) > ring) out.ring_max = std::max(out.ring_max, a);
    }
  out.r_b_norm = weighted_disk_sup([&r](cplx z) { return r(z); });
  return out;
}

// ---------------------------------------------------------------------------

CriticalComparison compare_critical_data(const Polynomial& p, Index n) {
  if (p.degree() < 1) throw UsageError("compare_critical_data: constant polynomial");
  if (std::abs(p.coeff(0)) > 1e-14 || std::abs(p.coeff(1) - cplx(1.0)) > 1e-12)
    throw NormalizationError("compare_critical_data: need p(0) = 0 and p'(0) = 1");
  CriticalComparison out;
  if (p.degree() >= 2) {
    out.terms = critical_partial_fractions(p);
    for (const auto& t : out.terms) {
      out.max_abs_c = std::max(out.max_abs_c, std::abs(t.c_residue));
      if (std::abs(std::abs(t.z) - 1.0) > 1e-9)
        out.notes.push_back("critical point at |z| = " + std::to_string(std::abs(t.z)) +
                            " is not on the unit circle");
    }
    out.b_norm = b_norm(schwarzian(RationalMap(p)), Side::interior);
  }
  const Polynomial pt = p.trimmed(0.0);
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(std::max<Index>(2 * n + 2, pt.degree() + 1));
  a.head(pt.coeffs().size()) = pt.coeffs();
  const auto est = grunsky_norm(disk_inversion(a), n);
  out.kappa = est.value;
  out.kappa_converged = est.converged;
  if (!est.converged)
    out.notes.push_back("Grunsky norm not converged at N = " + std::to_string(n) +
                        " (tail gap " + std::to_string(est.tail_gap) + ")");
  return out;
}

}  // namespace qcw
