#include "qcw/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcw/errors.hpp"

namespace qcw {

double alpha_functional(const BeltramiGrid& mu, Index n) {
  const double k = mu.k_sup();
  if (k == 0.0) throw DomainError("alpha_functional: coefficient is identically zero");
  return quadratic_form_norm(moment_matrix(Eigen::MatrixXcd(mu.samples() / k), n));
}

double grunsky_curve(double alpha, cplx t) {
  const double a = std::abs(t);
  if (!(a < 1.0)) throw DomainError("grunsky_curve: |t| must be < 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("grunsky_curve: alpha must lie in [0, 1]");
  return a * (a + alpha) / (1.0 + alpha * a);
}

OuterLimit outer_limit_norm(const BeltramiGrid& mu, int max_p, const std::vector<double>& r_grid,
                            Index n) {
  if (r_grid.empty()) throw UsageError("outer_limit_norm: empty radius grid");
  if (max_p < 1) throw UsageError("outer_limit_norm: max root order must be >= 1");
  for (double r : r_grid)
    if (!(r > 0.0 && r <= 1.0)) throw UsageError("outer_limit_norm: radii must lie in (0, 1]");

  OuterLimit out;
  out.value = -1.0;
  for (double r : r_grid) {
    const BeltramiGrid base = r < 1.0 ? truncate_mu(mu, r) : mu;
    for (int p = 1; p <= max_p; ++p) {
      const double v = quadratic_form_norm(moment_matrix(p == 1 ? base : root_transform_mu(base, p), n));
      out.table.push_back({p, r, v});
      if (v > out.value) {
        out.value = v;
        out.p = p;
        out.r = r;
      }
    }
  }
  return out;
}

Quasiinvariants quasiinvariants(double kappa_hat) {
  if (!(kappa_hat >= 0.0 && kappa_hat < 1.0))
    throw DomainError("quasiinvariants: kappa_hat must lie in [0, 1)");
  constexpr double inf = std::numeric_limits<double>::infinity();
  Quasiinvariants q;
  q.kappa_hat = kappa_hat;
  q.fredholm_rho = kappa_hat > 0.0 ? 1.0 / kappa_hat : inf;
  q.reflection_q = 2.0 * kappa_hat / (1.0 + kappa_hat * kappa_hat);
  q.green_value = kappa_hat > 0.0 ? std::log(kappa_hat) : -inf;
  q.teich_distance = std::atanh(kappa_hat);
  return q;
}

double inverse_fredholm_eigenvalue(const BeltramiGrid& direction, double t, Index n) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("inverse_fredholm_eigenvalue: t must lie in (0, 1)");
  // Quadrature can push alpha a hair above its exact bound 1.
  return grunsky_curve(std::min(alpha_functional(direction, n), 1.0), t);
}

}  // namespace qcw
