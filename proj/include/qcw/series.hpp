#pragma once

// Truncated power series in one and two variables with complex coefficients.
// All operations are exact on the retained coefficients: an operation on
// inputs of order N yields coefficients 0..N equal to those of the infinite
// series operation.

#include <complex>
#include <cstdlib>
#include <initializer_list>
#include <string>

#include <Eigen/Core>

#include "qcw/errors.hpp"

namespace qcw {

using Eigen::Index;

/// Exponent q/p of a fractional power; den >= 1.
struct Rational {
  long num = 1;
  long den = 1;

  template <typename Real>
  Real value() const {
    return static_cast<Real>(num) / static_cast<Real>(den);
  }
};

template <typename Real>
class TruncSeries {
 public:
  using Complex = std::complex<Real>;
  using Coeffs = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  explicit TruncSeries(Index order) : c_(Coeffs::Zero(order + 1)) {
    if (order < 0) throw UsageError("TruncSeries: negative truncation order");
  }
  explicit TruncSeries(Coeffs c) : c_(std::move(c)) {
    if (c_.size() == 0) throw UsageError("TruncSeries: empty coefficient vector");
  }
  TruncSeries(std::initializer_list<Complex> c) : c_(static_cast<Index>(c.size())) {
    if (c.size() == 0) throw UsageError("TruncSeries: empty coefficient list");
    Index i = 0;
    for (const auto& v : c) c_(i++) = v;
  }

  Index order() const { return c_.size() - 1; }
  const Coeffs& coeffs() const { return c_; }
  Coeffs& coeffs() { return c_; }

  Complex operator[](Index i) const { return c_(i); }
  Complex& operator[](Index i) { return c_(i); }

  /// Copy keeping coefficients 0..n; n may not exceed the current order.
  TruncSeries truncated(Index n) const {
    if (n < 0 || n > order())
      throw UsageError("TruncSeries::truncated: cannot extend truncation order");
    return TruncSeries(Coeffs(c_.head(n + 1)));
  }

  static TruncSeries one(Index order) {
    TruncSeries s(order);
    s[0] = Complex(1);
    return s;
  }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    require_same_order(a, b, "operator+");
    return TruncSeries(Coeffs(a.c_ + b.c_));
  }
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    require_same_order(a, b, "operator-");
    return TruncSeries(Coeffs(a.c_ - b.c_));
  }
  friend TruncSeries operator*(Complex s, const TruncSeries& a) {
    return TruncSeries(Coeffs(s * a.c_));
  }

  static void require_same_order(const TruncSeries& a, const TruncSeries& b,
                                 const char* where) {
    if (a.order() != b.order())
      throw UsageError(std::string(where) + ": mismatched truncation orders " +
                       std::to_string(a.order()) + " and " + std::to_string(b.order()));
  }

 private:
  Coeffs c_;
};

namespace detail {

template <typename Real>
void require_unit_constant(const std::complex<Real>& c0, const char* where) {
  using std::abs;
  if (abs(c0 - std::complex<Real>(1)) > Real(1e-12))
    throw DomainError(std::string(where) + ": constant term must equal 1");
}

}  // namespace detail

/// Cauchy product truncated to the common order.
template <typename Real>
TruncSeries<Real> series_mul(const TruncSeries<Real>& a, const TruncSeries<Real>& b) {
  TruncSeries<Real>::require_same_order(a, b, "series_mul");
  const Index n = a.order();
  TruncSeries<Real> out(n);
  for (Index i = 0; i <= n; ++i) {
    if (a[i] == std::complex<Real>(0)) continue;
    for (Index j = 0; i + j <= n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// log a for a[0] == 1, from a * L' = a' (O(N^2)).
template <typename Real>
TruncSeries<Real> series_log(const TruncSeries<Real>& a) {
  detail::require_unit_constant(a[0], "series_log");
  const Index n = a.order();
  TruncSeries<Real> g(n);
  for (Index k = 1; k <= n; ++k) {
    std::complex<Real> acc = Real(k) * a[k];
    for (Index j = 1; j < k; ++j) acc -= Real(j) * g[j] * a[k - j];
    g[k] = acc / Real(k);
  }
  return g;
}

/// exp a for a[0] == 0, from E' = a' E.
template <typename Real>
TruncSeries<Real> series_exp(const TruncSeries<Real>& a) {
  using std::abs;
  if (abs(a[0]) > Real(1e-12)) throw DomainError("series_exp: constant term must vanish");
  const Index n = a.order();
  TruncSeries<Real> e(n);
  e[0] = 1;
  for (Index k = 1; k <= n; ++k) {
    std::complex<Real> acc(0);
    for (Index j = 1; j <= k; ++j) acc += Real(j) * a[j] * e[k - j];
    e[k] = acc / Real(k);
  }
  return e;
}

/// a^e for a[0] == 1 and real exponent e (binomial series, J.C.P. Miller recurrence).
template <typename Real>
TruncSeries<Real> series_pow(const TruncSeries<Real>& a, Real e) {
  detail::require_unit_constant(a[0], "series_pow");
  const Index n = a.order();
  TruncSeries<Real> g(n);
  g[0] = 1;
  for (Index k = 1; k <= n; ++k) {
    std::complex<Real> acc(0);
    for (Index j = 1; j <= k; ++j) acc += ((e + Real(1)) * Real(j) - Real(k)) * a[j] * g[k - j];
    g[k] = acc / Real(k);
  }
  return g;
}

template <typename Real>
TruncSeries<Real> series_pow(const TruncSeries<Real>& a, Rational e) {
  if (e.den < 1) throw UsageError("series_pow: exponent denominator must be >= 1");
  return series_pow(a, e.template value<Real>());
}

/// 1/a for a[0] != 0.
template <typename Real>
TruncSeries<Real> series_reciprocal(const TruncSeries<Real>& a) {
  if (a[0] == std::complex<Real>(0)) throw DomainError("series_reciprocal: zero constant term");
  const Index n = a.order();
  TruncSeries<Real> r(n);
  r[0] = Real(1) / a[0];
  for (Index k = 1; k <= n; ++k) {
    std::complex<Real> acc(0);
    for (Index j = 1; j <= k; ++j) acc += a[j] * r[k - j];
    r[k] = -acc * r[0];
  }
  return r;
}

/// Series in u, v truncated at total degree D; coefficient (i, j) multiplies u^i v^j.
template <typename Real>
class BivariateSeries {
 public:
  using Complex = std::complex<Real>;
  using Storage = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

  explicit BivariateSeries(Index total_degree)
      : c_(Storage::Zero(total_degree + 1, total_degree + 1)) {
    if (total_degree < 0) throw UsageError("BivariateSeries: negative truncation degree");
  }

  Index total_degree() const { return c_.rows() - 1; }

  Complex coeff(Index i, Index j) const {
    check(i, j);
    return c_(i, j);
  }
  Complex& coeff(Index i, Index j) {
    check(i, j);
    return c_(i, j);
  }

  bool is_symmetric(Real tol = Real(0)) const {
    using std::abs;
    const Index d = total_degree();
    for (Index i = 0; i <= d; ++i)
      for (Index j = 0; i + j <= d; ++j)
        if (abs(c_(i, j) - c_(j, i)) > tol) return false;
    return true;
  }

 private:
  void check(Index i, Index j) const {
    if (i < 0 || j < 0 || i + j > total_degree())
      throw UsageError("BivariateSeries: index pair beyond truncation degree");
  }

  Storage c_;
};

template <typename Real>
BivariateSeries<Real> series_mul(const BivariateSeries<Real>& a, const BivariateSeries<Real>& b) {
  if (a.total_degree() != b.total_degree())
    throw UsageError("series_mul: mismatched truncation degrees");
  const Index d = a.total_degree();
  BivariateSeries<Real> out(d);
  for (Index i1 = 0; i1 <= d; ++i1)
    for (Index j1 = 0; i1 + j1 <= d; ++j1) {
      const auto x = a.coeff(i1, j1);
      if (x == std::complex<Real>(0)) continue;
      for (Index i2 = 0; i1 + j1 + i2 <= d; ++i2)
        for (Index j2 = 0; i1 + j1 + i2 + j2 <= d; ++j2)
          out.coeff(i1 + i2, j1 + j2) += x * b.coeff(i2, j2);
    }
  return out;
}

/// log a for a(0,0) == 1. Grades by total degree and runs the univariate
/// recurrence with homogeneous components as coefficients.
template <typename Real>
BivariateSeries<Real> series_log(const BivariateSeries<Real>& a) {
  detail::require_unit_constant(a.coeff(0, 0), "series_log");
  const Index d = a.total_degree();
  BivariateSeries<Real> g(d);
  // Homogeneous component of degree k: entries (i, k - i).
  for (Index k = 1; k <= d; ++k) {
    for (Index i = 0; i <= k; ++i) g.coeff(i, k - i) = Real(k) * a.coeff(i, k - i);
    for (Index j = 1; j < k; ++j) {
      // subtract j * G_j * A_{k-j}
      for (Index i1 = 0; i1 <= j; ++i1) {
        const auto gj = g.coeff(i1, j - i1);
        if (gj == std::complex<Real>(0)) continue;
        for (Index i2 = 0; i2 <= k - j; ++i2)
          g.coeff(i1 + i2, k - i1 - i2) -= Real(j) * gj * a.coeff(i2, k - j - i2);
      }
    }
    for (Index i = 0; i <= k; ++i) g.coeff(i, k - i) /= Real(k);
  }
  return g;
}

using Series = TruncSeries<double>;
using Bivariate = BivariateSeries<double>;

}  // namespace qcw
