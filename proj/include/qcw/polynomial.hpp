#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include <Eigen/Core>

namespace qcw {

using cplx = std::complex<double>;
using Eigen::Index;

/// Dense polynomial with complex coefficients in ascending powers.
class Polynomial {
 public:
  Polynomial() : c_(Eigen::VectorXcd::Zero(1)) {}
  explicit Polynomial(Eigen::VectorXcd ascending);
  Polynomial(std::initializer_list<cplx> ascending);

  static Polynomial constant(cplx c);
  static Polynomial monomial(int power, cplx c = 1.0);
  /// prod (z - r_i)
  static Polynomial from_roots(const std::vector<cplx>& roots, cplx leading = 1.0);

  /// Degree after dropping exactly-zero leading coefficients; -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return degree() < 0; }
  const Eigen::VectorXcd& coeffs() const { return c_; }
  cplx coeff(int k) const { return k < c_.size() ? c_(k) : cplx(0.0); }
  cplx leading() const;

  cplx operator()(cplx z) const;
  Polynomial derivative() const;
  /// z^deg p(1/z) with deg the (trimmed) degree.
  Polynomial reversed() const;
  /// Drop leading coefficients with modulus <= tol * max|c|.
  Polynomial trimmed(double rel_tol) const;
  /// Quotient of synthetic division by (z - root); the remainder is dropped.
  Polynomial deflated(cplx root) const;
  /// p^{(k)}(z) / k! for k = 0..order.
  Eigen::VectorXcd taylor(cplx z, int order) const;
  /// sum |c_k| |z|^k, the natural scale for judging |p(z)| against zero.
  double magnitude(cplx z) const;

  /// All complex roots as companion-matrix eigenvalues (unpolished; see clustered_roots).
  std::vector<cplx> roots() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(cplx s, const Polynomial& a);

 private:
  Eigen::VectorXcd c_;
};

struct RootCluster {
  cplx z;
  int multiplicity = 1;
  double residual = 0;  // |p^{(m-1)}(z)| after refinement
};

/// Roots grouped by proximity and refined; multiplicity is the cluster size.
std::vector<RootCluster> clustered_roots(const Polynomial& p, double cluster_tol = 1e-4);

}  // namespace qcw
