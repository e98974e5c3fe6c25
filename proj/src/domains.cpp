#include "qcw/domains.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcw/errors.hpp"

namespace qcw {

namespace {

constexpr double kPi = std::numbers::pi;

struct Quadrature {
  std::vector<cplx> z;
  std::vector<double> w;
};

// Polar tensor rule on the region 0 <= rho <= R(theta): Gauss-Legendre in rho,
// trapezoid in theta (exact for the trigonometric polynomials that appear).
template <typename Radius, typename Map>
Quadrature polar_rule(int quad, Radius&& radius, Map&& map) {
  Eigen::VectorXd x, wx;
  gauss_legendre(quad, x, wx);
  const int nt = 4 * quad;
  Quadrature q;
  q.z.reserve(static_cast<std::size_t>(nt) * quad);
  q.w.reserve(static_cast<std::size_t>(nt) * quad);
  for (int j = 0; j < nt; ++j) {
    const double theta = 2.0 * kPi * j / nt;
    const double rmax = radius(theta);
    for (int i = 0; i < quad; ++i) {
      const double rho = 0.5 * rmax * (x(i) + 1.0);
      const auto [z, jac] = map(rho, theta);
      q.z.push_back(z);
      q.w.push_back(0.5 * rmax * wx(i) * (2.0 * kPi / nt) * jac);
    }
  }
  return q;
}

Quadrature ellipse_rule(double a, double b, int quad) {
  return polar_rule(quad, [](double) { return 1.0; }, [a, b](double rho, double t) {
    return std::pair<cplx, double>{cplx(a * rho * std::cos(t), b * rho * std::sin(t)), a * b * rho};
  });
}

// Right lobe through w = z^2 - 1 onto the unit disk: z = sqrt(1 + w),
// dA_z = dA_w / (4 |1 + w|).
Quadrature lemniscate_rule(int quad) {
  return polar_rule(quad, [](double) { return 1.0; }, [](double rho, double t) {
    const cplx w = std::polar(rho, t);
    return std::pair<cplx, double>{std::sqrt(1.0 + w), rho / (4.0 * std::abs(1.0 + w))};
  });
}

double starlike_radius(const Polynomial& h, double theta) {
  const cplx dir = std::polar(1.0, theta);
  constexpr double kStep = 0.01, kMax = 100.0;
  double lo = 0.0, hi = kStep;
  while (std::abs(h(hi * dir)) < 1.0) {
    lo = hi;
    hi += kStep;
    if (hi > kMax) throw ConstructionError("starlike_basis: boundary not found along a ray");
  }
  for (int it = 0; it < 80 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (std::abs(h(mid * dir)) < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Quadrature starlike_rule(const Polynomial& h, int quad) {
  return polar_rule(quad, [&h](double t) { return starlike_radius(h, t); }, [](double rho, double t) {
    return std::pair<cplx, double>{std::polar(rho, t), rho};
  });
}

Quadrature rule_for(const DomainBasis& basis, int quad) {
  switch (basis.kind) {
    case DomainKind::ellipse: return ellipse_rule(basis.a, basis.b, quad);
    case DomainKind::lemniscate: return lemniscate_rule(quad);
    case DomainKind::starlike: return starlike_rule(basis.h, quad);
  }
  throw UsageError("unknown domain kind");
}

Eigen::MatrixXcd gram_of(const Quadrature& q, const std::vector<std::function<cplx(cplx)>>& fns) {
  const auto n = static_cast<Index>(fns.size());
  const auto nodes = static_cast<Index>(q.z.size());
  Eigen::MatrixXcd vals(nodes, n);
  for (Index k = 0; k < nodes; ++k)
    for (Index i = 0; i < n; ++i) vals(k, i) = fns[i](q.z[k]) * std::sqrt(q.w[k]);
  // G_ij = sum w f_i conj(f_j)
  return (vals.transpose() * vals.conjugate()).eval();
}

std::vector<std::function<cplx(cplx)>> as_functions(const std::vector<Polynomial>& ps) {
  std::vector<std::function<cplx(cplx)>> fns;
  for (const auto& p : ps) fns.emplace_back([p](cplx z) { return p(z); });
  return fns;
}

void attach_gram(DomainBasis& basis, int quad) {
  basis.gram = gram_of(rule_for(basis, quad), as_functions(basis.polynomials));
  const auto n = basis.gram.rows();
  basis.gram_deviation = (basis.gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (basis.gram_deviation > 1e-4)
    throw ConstructionError("domain basis: Gram matrix deviates from identity by " +
                            std::to_string(basis.gram_deviation));
}

void check_sizes(int n_max, int quad) {
  if (n_max < 0) throw UsageError("domain basis: n_max must be >= 0");
  if (quad < 2) throw UsageError("domain basis: quadrature resolution must be >= 2");
}

}  // namespace

void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  if (n < 1) throw UsageError("gauss_legendre: need at least one node");
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes(i) = x;
    weights(i) = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

DomainBasis ellipse_basis(double a, double b, int n_max, int quad) {
  check_sizes(n_max, quad);
  if (!(a > b && b > 0.0)) throw UsageError("ellipse_basis: need a > b > 0");
  if (std::abs(a * a - b * b - 1.0) > 1e-9) throw UsageError("ellipse_basis: foci must be +-1 (a^2 - b^2 = 1)");
  DomainBasis basis;
  basis.kind = DomainKind::ellipse;
  basis.a = a;
  basis.b = b;
  basis.normalization = "2 sqrt((n+1)/pi) U_n(z) / sqrt(R^(2n+2) - R^(-2n-2)), R = a + b";
  const double R = a + b;
  Polynomial u_prev = Polynomial::constant(1.0), u = Polynomial({0.0, 2.0});
  const Polynomial two_z({0.0, 2.0});
  for (int n = 0; n <= n_max; ++n) {
    const Polynomial& un = n == 0 ? u_prev : u;
    const double scale = 2.0 * std::sqrt((n + 1.0) / kPi) /
                         std::sqrt(std::pow(R, 2.0 * n + 2.0) - std::pow(R, -2.0 * n - 2.0));
    basis.polynomials.push_back(cplx(scale) * un);
    if (n >= 1) {
      Polynomial next = two_z * u - u_prev;
      u_prev = u;
      u = next;
    }
  }
  attach_gram(basis, std::max(quad, n_max + 2));
  return basis;
}

DomainBasis lemniscate_basis(int n_max, int quad) {
  check_sizes(n_max, quad);
  DomainBasis basis;
  basis.kind = DomainKind::lemniscate;
  basis.normalization = "2 sqrt((n+1)/pi) z (z^2 - 1)^n";
  Polynomial power = Polynomial::constant(1.0);
  const Polynomial z({0.0, 1.0}), z2m1({-1.0, 0.0, 1.0});
  for (int n = 0; n <= n_max; ++n) {
    basis.polynomials.push_back(cplx(2.0 * std::sqrt((n + 1.0) / kPi)) * (z * power));
    power = power * z2m1;
  }
  attach_gram(basis, std::max(quad, n_max + 2));
  return basis;
}

DomainBasis starlike_basis(const Polynomial& h, int n_max, int quad) {
  check_sizes(n_max, quad);
  if (h.degree() < 1) throw UsageError("starlike_basis: h must be nonconstant");
  if (std::abs(h.coeff(0)) > 1e-14) throw UsageError("starlike_basis: need h(0) = 0");
  DomainBasis basis;
  basis.kind = DomainKind::starlike;
  basis.h = h;
  basis.normalization = "sqrt((n+1)/pi) h^n h'";
  const Polynomial dh = h.derivative();
  Polynomial power = Polynomial::constant(1.0);
  for (int n = 0; n <= n_max; ++n) {
    basis.polynomials.push_back(cplx(std::sqrt((n + 1.0) / kPi)) * (power * dh));
    power = power * h;
  }
  attach_gram(basis, std::max(quad, (n_max + 1) * std::max(h.degree(), 1) + 2));
  return basis;
}

Eigen::MatrixXcd domain_inner_products(const DomainBasis& basis,
                                       const std::vector<std::function<cplx(cplx)>>& fns, int quad) {
  return gram_of(rule_for(basis, quad), fns);
}

double projection_residual(const DomainBasis& basis, const std::function<cplx(cplx)>& g, int n, int quad) {
  if (n < 0 || n >= static_cast<int>(basis.polynomials.size()))
    throw UsageError("projection_residual: n outside the constructed basis");
  const Quadrature q = rule_for(basis, quad);
  std::vector<cplx> coef(n + 1, 0.0);
  for (std::size_t k = 0; k < q.z.size(); ++k) {
    const cplx gz = g(q.z[k]);
    for (int j = 0; j <= n; ++j) coef[j] += q.w[k] * gz * std::conj(basis.polynomials[j](q.z[k]));
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < q.z.size(); ++k) {
    cplx r = g(q.z[k]);
    for (int j = 0; j <= n; ++j) r -= coef[j] * basis.polynomials[j](q.z[k]);
    acc += q.w[k] * std::norm(r);
  }
  return std::sqrt(acc);
}

PolygonBound polygon_bound(const std::vector<double>& finite_angles, double alpha_inf) {
  const double ai = std::abs(alpha_inf);
  if (!(ai > 0.0 && ai <= 1.0)) throw DomainError("polygon_bound: need 0 < |alpha_inf| <= 1");
  PolygonBound out;
  out.value = 1.0 - ai;
  out.all_equalities = true;
  for (double a : finite_angles) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("polygon_bound: interior angle outside (0, 1)");
    out.value = std::max(out.value, 1.0 - a);
    if (!(ai < a)) out.all_equalities = false;
  }
  return out;
}

}  // namespace qcw
