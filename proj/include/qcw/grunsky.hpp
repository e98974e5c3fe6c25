#pragma once

// Grunsky coefficients of functions f(z) = z + b0 + b1/z + ... in class Sigma,
// the Grunsky norm, and the coefficient-level transforms that act on it.
//
// Convention: alpha_{mn} = -[u^m v^n] log((f(z) - f(zeta)) / (z - zeta)) with
// u = 1/z, v = 1/zeta, so that alpha_{mm}(z + t/z) = t^m / m and alpha_{m1} = b_m.

#include <algorithm>
#include <cmath>
#include <complex>
#include <iostream>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qcw/errors.hpp"
#include "qcw/series.hpp"

namespace qcw {

template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

/// Coefficients (b0, b1, ..., bM) of f(z) = z + b0 + b1 z^-1 + ... + bM z^-M.
template <typename Real>
struct CoeffSeries {
  ComplexVector<Real> b;

  CoeffSeries() : b(ComplexVector<Real>::Zero(1)) {}
  explicit CoeffSeries(ComplexVector<Real> coeffs) : b(std::move(coeffs)) {
    if (b.size() == 0) throw UsageError("CoeffSeries: at least b0 must be present");
  }

  /// f(z) = z with coefficients retained through index m.
  static CoeffSeries identity(Index m) { return CoeffSeries(ComplexVector<Real>::Zero(m + 1)); }

  Index max_index() const { return b.size() - 1; }
};

/// sqrt(mn) alpha_{mn}, m, n = 1..N, stored 0-based.
template <typename Real>
using GrunskyMatrix = ComplexMatrix<Real>;

template <typename Real>
struct NormEstimate {
  Real value = 0;
  std::vector<std::pair<Index, Real>> per_size;  // (N, sigma_max of leading N x N block)
  bool converged = false;
  Real tail_gap = 0;
};

template <typename Real>
GrunskyMatrix<Real> grunsky_matrix(const CoeffSeries<Real>& f, Index n) {
  if (n < 1) throw UsageError("grunsky_matrix: size must be >= 1");
  if (f.max_index() < 2 * n - 1)
    throw UsageError("grunsky_matrix: size " + std::to_string(n) + " needs b_1..b_" +
                     std::to_string(2 * n - 1) + ", only b_" + std::to_string(f.max_index()) +
                     " retained");
  const Index degree = 2 * n;
  // F(u, v) = 1 - uv * sum_k b_k * sum_{i+j=k-1} u^i v^j
  BivariateSeries<Real> F(degree);
  F.coeff(0, 0) = 1;
  for (Index k = 1; k + 1 <= degree; ++k) {
    const auto bk = f.b(k);
    for (Index i = 0; i <= k - 1; ++i) F.coeff(i + 1, k - i) -= bk;
  }
  const auto L = series_log(F);
  GrunskyMatrix<Real> G(n, n);
  for (Index m = 1; m <= n; ++m)
    for (Index q = 1; q <= n; ++q)
      G(m - 1, q - 1) = -std::sqrt(Real(m * q)) * L.coeff(m, q);
  // Exact symmetry: the recurrence is symmetric up to rounding order.
  GrunskyMatrix<Real> sym = (G + G.transpose()) / Real(2);
  return sym;
}

/// sup over unit x of |x^T A x| for complex symmetric A, i.e. the largest
/// singular value (Takagi). Asymmetric input is symmetrized with a warning.
template <typename Derived>
typename Derived::RealScalar quadratic_form_norm(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::RealScalar;
  using Matrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (a.rows() != a.cols()) throw UsageError("quadratic_form_norm: matrix must be square");
  if (a.size() == 0) return Real(0);
  Matrix m = a;
  const Real scale = std::max<Real>(Real(1), m.cwiseAbs().maxCoeff());
  const Real asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > Real(1e-10) * scale) {
    std::clog << "qcw: quadratic_form_norm: input asymmetric by " << asym
              << ", symmetrizing\n";
    m = ((m + m.transpose()) / Real(2)).eval();
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

template <typename Real>
NormEstimate<Real> grunsky_norm(const CoeffSeries<Real>& f, Index n_max) {
  const auto G = grunsky_matrix(f, n_max);
  NormEstimate<Real> est;
  for (Index n = 1; n <= n_max; ++n)
    est.per_size.emplace_back(n, quadratic_form_norm(G.topLeftCorner(n, n)));
  est.value = est.per_size.back().second;
  if (est.per_size.size() >= 2) {
    est.tail_gap = est.value - est.per_size[est.per_size.size() - 2].second;
    est.converged = std::abs(est.tail_gap) < Real(1e-8);
  }
  return est;
}

/// f_p(z) = f(z^p)^{1/p}. With x = z^-p, f(z^p) = z^p (1 + b0 x + b1 x^2 + ...),
/// so f_p = z * sum_j g_j x^j and the output coefficient of z^{-(jp-1)} is g_j.
/// The result is exact through index (M + 1) p - 1.
template <typename Real>
CoeffSeries<Real> root_transform(const CoeffSeries<Real>& f, int p) {
  if (p < 2) throw UsageError("root_transform: order p must be >= 2");
  const Index m = f.max_index();
  TruncSeries<Real> inner(m + 1);
  inner[0] = 1;
  for (Index k = 0; k <= m; ++k) inner[k + 1] = f.b(k);
  const auto g = series_pow(inner, Rational{1, p});
  ComplexVector<Real> out = ComplexVector<Real>::Zero((m + 1) * p);
  for (Index j = 1; j <= m + 1; ++j) out(j * p - 1) = g[j];
  return CoeffSeries<Real>(std::move(out));
}

/// f_t(z) = t f(z / t): b_k -> t^{k+1} b_k.
template <typename Real>
CoeffSeries<Real> homotopy(const CoeffSeries<Real>& f, std::complex<Real> t) {
  if (std::abs(t) > Real(1) + Real(1e-15)) throw DomainError("homotopy: |t| must be <= 1");
  CoeffSeries<Real> out = f;
  std::complex<Real> power = t;
  for (Index k = 0; k <= f.max_index(); ++k) {
    out.b(k) *= power;
    power *= t;
  }
  return out;
}

/// f_theta(z) = e^{-i theta} f(e^{i theta} z): b_k -> e^{-i(k+1) theta} b_k.
template <typename Real>
CoeffSeries<Real> rotate(const CoeffSeries<Real>& f, Real theta) {
  CoeffSeries<Real> out = f;
  for (Index k = 0; k <= f.max_index(); ++k)
    out.b(k) *= std::polar(Real(1), -Real(k + 1) * theta);
  return out;
}

/// f(z) = 1 / F(1/z) for F(z) = a0 + a1 z + ... + aK z^K with a0 = 0, a1 = 1.
/// Output retains b0..b_{K-2}.
template <typename Real>
CoeffSeries<Real> disk_inversion(const ComplexVector<Real>& a) {
  if (a.size() < 3) throw UsageError("disk_inversion: need coefficients through z^2 at least");
  if (std::abs(a(0)) > Real(1e-14)) throw NormalizationError("disk_inversion: F(0) must be 0");
  if (std::abs(a(1) - std::complex<Real>(1)) > Real(1e-12))
    throw NormalizationError("disk_inversion: F'(0) must be 1");
  const Index k = a.size() - 1;
  // F(1/z) = z^-1 (1 + a2 w + ... + aK w^{K-1}), w = 1/z
  TruncSeries<Real> q(k - 1);
  for (Index j = 0; j <= k - 1; ++j) q[j] = a(j + 1);
  const auto r = series_reciprocal(q);
  ComplexVector<Real> b(k - 1);
  for (Index j = 0; j <= k - 2; ++j) b(j) = r[j + 1];
  return CoeffSeries<Real>(std::move(b));
}

/// sup_{m,n} |G_mn| + sup_{|x|=1} |x^T G x|.
template <typename Real>
Real model_norm(const GrunskyMatrix<Real>& g) {
  if (g.size() == 0) return Real(0);
  return g.cwiseAbs().maxCoeff() + quadratic_form_norm(g);
}

using Coeffs = CoeffSeries<double>;

}  // namespace qcw
