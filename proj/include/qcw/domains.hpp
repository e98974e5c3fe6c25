#pragma once

// Orthonormal polynomial bases of the Bergman space A2 on special quasidisks
// (ellipse with foci +-1, the right lobe of the Bernoulli lemniscate, starlike
// domains given by a polynomial map onto the disk) and the closed-form
// polygon bound on the Grunsky norm.

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qcw/polynomial.hpp"

namespace qcw {

enum class DomainKind { ellipse, lemniscate, starlike };

struct DomainBasis {
  DomainKind kind = DomainKind::ellipse;
  double a = 0, b = 0;            // ellipse semi-axes
  Polynomial h;                   // starlike map onto the disk
  std::vector<Polynomial> polynomials;
  Eigen::MatrixXcd gram;          // <P_m, P_n> by domain quadrature
  double gram_deviation = 0;      // max |gram - I|
  std::string normalization;      // convention actually used, for reports
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

/// P_n = 2 sqrt((n+1)/pi) U_n(z) / sqrt(R^{2n+2} - R^{-2n-2}), R = a + b.
DomainBasis ellipse_basis(double a, double b, int n_max, int quad = 64);
/// P_n = 2 sqrt((n+1)/pi) z (z^2 - 1)^n.
DomainBasis lemniscate_basis(int n_max, int quad = 64);
/// psi_n = sqrt((n+1)/pi) h^n h'. h(0) = 0 and univalence onto the disk are
/// the caller's responsibility.
DomainBasis starlike_basis(const Polynomial& h, int n_max, int quad = 64);

/// Area inner products of arbitrary functions over the basis domain, with the
/// same quadrature that produced the Gram diagnostic.
Eigen::MatrixXcd domain_inner_products(const DomainBasis& basis,
                                       const std::vector<std::function<cplx(cplx)>>& fns, int quad = 64);

/// || g - sum_k <g, P_k> P_k ||_{L2(domain)} over P_0..P_n.
double projection_residual(const DomainBasis& basis, const std::function<cplx(cplx)>& g, int n,
                           int quad = 64);

struct PolygonBound {
  double value = 0;
  bool all_equalities = false;
};

/// 1 - |alpha| = max(sup_j (1 - alpha_j), 1 - |alpha_inf|).
PolygonBound polygon_bound(const std::vector<double>& finite_angles, double alpha_inf);

}  // namespace qcw
