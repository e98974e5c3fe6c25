#pragma once

// Beltrami coefficients on a uniform grid over [-1, 1]^2 and the Neumann-series
// solver for w = z + T rho, rho = mu + mu Pi rho.
//
// Grid layout: samples(row, col) is the value on the cell centred at
//   x = -1 + (col + 1/2) h,  y = -1 + (row + 1/2) h,  h = 2 / M.
// A sample is the cell average of mu * chi_D, so cells cut by the unit circle
// carry the covered fraction and cells outside the closed disk are zero.

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "qcw/grunsky.hpp"
#include "qcw/polynomial.hpp"

namespace qcw {

using CoefficientField = std::function<cplx(cplx)>;

class BeltramiGrid {
 public:
  /// Validates squareness, support in the closed unit disk and k_sup < 1.
  explicit BeltramiGrid(Eigen::MatrixXcd samples);

  static BeltramiGrid zero(Index m);

  Index size() const { return samples_.rows(); }
  double cell_size() const { return 2.0 / static_cast<double>(size()); }
  double k_sup() const { return k_sup_; }
  const Eigen::MatrixXcd& samples() const { return samples_; }
  cplx center(Index row, Index col) const;

  /// Pointwise reconstruction: bilinear in the cell-centre values, divided by
  /// cell coverage so boundary cells report the local value rather than the
  /// covered average. Zero outside the unit disk.
  cplx value_at(cplx z) const;

 private:
  Eigen::MatrixXcd samples_;
  double k_sup_ = 0;
};

/// Fraction of each cell covered by the disk |z| < radius (8x8 sub-sampling).
Eigen::MatrixXd disk_coverage(Index m, double radius = 1.0);

/// Sample a pointwise coefficient on an M x M grid: centre values on interior
/// cells, sub-sampled averages on cells cut by |z| = support_radius.
BeltramiGrid sample_coefficient(const CoefficientField& mu, Index m, double support_radius = 1.0);

/// Holomorphic quadratic differential psi on the unit disk, polynomial or rational.
class QuadDifferential {
 public:
  enum class Kind { polynomial, rational };
  struct Zero {
    cplx root;
    int multiplicity;
  };

  explicit QuadDifferential(Polynomial numerator);
  QuadDifferential(Polynomial numerator, Polynomial denominator);

  Kind kind() const { return kind_; }
  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  /// Zeros in the open unit disk with multiplicities.
  const std::vector<Zero>& zeros() const { return zeros_; }
  /// True iff every interior zero has even order (psi is a square).
  bool in_a1_squared() const;

  cplx operator()(cplx z) const { return num_(z) / den_(z); }

 private:
  Kind kind_;
  Polynomial num_;
  Polynomial den_;
  std::vector<Zero> zeros_;
};

/// k |psi| / psi on the disk; cells containing a zero of psi are set to 0.
BeltramiGrid make_teichmueller_mu(const QuadDifferential& psi, double k, Index m);

/// Discrete Beurling transform Pi on cell-centre samples.
///
/// Pi rho(z) = -(1/pi) p.v. int rho(zeta) / (zeta - z)^2, applied to the
/// piecewise-constant interpolant of rho and evaluated at cell centres. The
/// cell-integrated kernel is convolved by a 2M-padded FFT (aperiodic, no
/// wrap-around); its transform approximates the multiplier conj(xi)/xi.
class BeurlingOperator {
 public:
  explicit BeurlingOperator(Index m);
  ~BeurlingOperator();
  BeurlingOperator(BeurlingOperator&&) noexcept;
  BeurlingOperator& operator=(BeurlingOperator&&) noexcept;

  Index size() const;
  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;

  /// -(1/pi) times the integral of 1/w^2 over the square of side h centred
  /// at c (principal value, zero for c = 0).
  static cplx cell_kernel(cplx c, double h);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Eigen::MatrixXcd beurling_transform(const Eigen::MatrixXcd& rho);

struct SolverOptions {
  double tol = 1e-10;
  int max_iter = 0;       // 0: ceil(log tol / log k_sup) + 20
  Index n_coeffs = 64;    // retain b_0..b_{n_coeffs}
};

struct BeltramiSolution {
  Eigen::MatrixXcd rho;
  Coeffs f;
  int iterations = 0;
  double residual = 0;
  std::vector<double> residual_history;
};

/// Fixed point of rho = mu + mu Pi rho; the conformal restriction's coefficients
/// come from moments: b_k = (1/pi) int rho zeta^{k-1} for k >= 1 and, with the
/// normalization f(0) = 0, b_0 = (1/pi) int rho / zeta.
BeltramiSolution solve_beltrami(const BeltramiGrid& mu, const SolverOptions& opts = {});

/// Support shrunk to radius r: mu(z / r) for |z| < r, zero elsewhere.
BeltramiGrid truncate_mu(const BeltramiGrid& mu, double r);

/// mu(z^p) (conj(z)/z)^{p-1}.
BeltramiGrid root_transform_mu(const BeltramiGrid& mu, int p);

/// int over the grid of values * zeta^d for d = 0..d_max, with exact integrals
/// of the monomials over each cell.
Eigen::VectorXcd cell_moments(const Eigen::MatrixXcd& values, Index d_max);

/// A[m][n] = sqrt(mn)/pi * int mu z^{m+n-2} dx dy, m, n = 1..N.
Eigen::MatrixXcd moment_matrix(const BeltramiGrid& mu, Index n);
/// Same on raw cell values (e.g. a normalized direction with sup norm 1).
Eigen::MatrixXcd moment_matrix(const Eigen::MatrixXcd& values, Index n);

}  // namespace qcw
