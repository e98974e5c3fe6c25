#pragma once

// Extremal functionals built on the moment matrix of a Beltrami coefficient:
// the pairing sup alpha, the Grunsky-norm curve of the homotopy t mu0, the
// outer-limit norm over root transforms and truncations, and the
// quasiinvariants that follow from the outer-limit value.

#include <vector>

#include "qcw/beltrami.hpp"

namespace qcw {

/// sup |<mu / |mu|_inf, psi>| over unit-norm psi in A1^2, realised through
/// psi = (1/pi) sum sqrt(mn) x_m x_n z^{m+n-2}: the quadratic-form norm of the
/// N x N moment matrix of the normalized direction.
double alpha_functional(const BeltramiGrid& mu, Index n);

/// |t| (|t| + alpha) / (1 + alpha |t|).
double grunsky_curve(double alpha, cplx t);

struct OuterLimitEntry {
  int p = 1;
  double r = 1.0;
  double value = 0;
};

struct OuterLimit {
  double value = 0;
  int p = 1;        // argmax root order (1: no root transform)
  double r = 1.0;   // argmax radius (1: untruncated)
  std::vector<OuterLimitEntry> table;
};

/// max over p = 1..P and r in r_grid of the moment-matrix norm of
/// R_p^* (mu truncated to radius r). A radius of 1 means no truncation.
OuterLimit outer_limit_norm(const BeltramiGrid& mu, int max_p, const std::vector<double>& r_grid,
                            Index n);

struct Quasiinvariants {
  double kappa_hat = 0;
  double fredholm_rho = 0;     // 1 / kappa_hat, +inf at 0
  double reflection_q = 0;     // (1+q)/(1-q) = ((1+k)/(1-k))^2
  double green_value = 0;      // log kappa_hat, -inf at 0
  double teich_distance = 0;   // artanh kappa_hat
};

Quasiinvariants quasiinvariants(double kappa_hat);

/// 1/rho_L for the curve f^{t mu0}(S^1): grunsky_curve(alpha(mu0), t). The
/// direction is normalized internally, so any nonzero coefficient is accepted.
double inverse_fredholm_eigenvalue(const BeltramiGrid& direction, double t, Index n);

}  // namespace qcw
