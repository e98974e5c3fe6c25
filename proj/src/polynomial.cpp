#include "qcw/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qcw/errors.hpp"

namespace qcw {

Polynomial::Polynomial(Eigen::VectorXcd ascending) : c_(std::move(ascending)) {
  if (c_.size() == 0) c_ = Eigen::VectorXcd::Zero(1);
}

Polynomial::Polynomial(std::initializer_list<cplx> ascending)
    : c_(static_cast<Eigen::Index>(std::max<std::size_t>(1, ascending.size()))) {
  c_.setZero();
  Eigen::Index i = 0;
  for (const auto& v : ascending) c_(i++) = v;
}

Polynomial Polynomial::constant(cplx c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(int power, cplx c) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(power + 1);
  v(power) = c;
  return Polynomial(v);
}

Polynomial Polynomial::from_roots(const std::vector<cplx>& roots, cplx leading) {
  Polynomial p = constant(leading);
  for (const auto& r : roots) p = p * Polynomial({-r, 1.0});
  return p;
}

int Polynomial::degree() const {
  for (Eigen::Index k = c_.size() - 1; k >= 0; --k)
    if (c_(k) != cplx(0.0)) return static_cast<int>(k);
  return -1;
}

cplx Polynomial::leading() const {
  const int d = degree();
  return d < 0 ? cplx(0.0) : c_(d);
}

cplx Polynomial::operator()(cplx z) const {
  cplx acc = 0;
  for (Eigen::Index k = c_.size() - 1; k >= 0; --k) acc = acc * z + c_(k);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial();
  Eigen::VectorXcd d(c_.size() - 1);
  for (Eigen::Index k = 1; k < c_.size(); ++k) d(k - 1) = static_cast<double>(k) * c_(k);
  return Polynomial(d);
}

Polynomial Polynomial::reversed() const {
  const int d = degree();
  if (d < 0) return Polynomial();
  Eigen::VectorXcd r(d + 1);
  for (int k = 0; k <= d; ++k) r(k) = c_(d - k);
  return Polynomial(r);
}

Polynomial Polynomial::trimmed(double rel_tol) const {
  const double scale = c_.cwiseAbs().maxCoeff();
  Eigen::Index last = c_.size() - 1;
  while (last > 0 && std::abs(c_(last)) <= rel_tol * scale) --last;
  return Polynomial(Eigen::VectorXcd(c_.head(last + 1)));
}

Polynomial Polynomial::deflated(cplx root) const {
  const int d = degree();
  if (d < 1) return Polynomial();
  Eigen::VectorXcd q(d);
  cplx carry = c_(d);
  for (int k = d - 1; k >= 0; --k) {
    q(k) = carry;
    carry = c_(k) + carry * root;
  }
  return Polynomial(q);
}

Eigen::VectorXcd Polynomial::taylor(cplx z, int order) const {
  // Repeated Horner: after pass k the constant slot holds p^{(k)}(z) / k!.
  Eigen::VectorXcd work = c_;
  const Eigen::Index n = work.size();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(order + 1);
  for (int k = 0; k <= order && k < n; ++k) {
    for (Eigen::Index j = n - 2; j >= k; --j) work(j) += z * work(j + 1);
    out(k) = work(k);
  }
  return out;
}

double Polynomial::magnitude(cplx z) const {
  const double a = std::abs(z);
  double acc = 0;
  for (Eigen::Index k = c_.size() - 1; k >= 0; --k) acc = acc * a + std::abs(c_(k));
  return acc;
}

namespace {

cplx newton_polish(const Polynomial& p, cplx z, int iters = 8) {
  const Polynomial dp = p.derivative();
  for (int i = 0; i < iters; ++i) {
    const cplx d = dp(z);
    if (d == cplx(0.0)) break;
    const cplx step = p(z) / d;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    z -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

}  // namespace

std::vector<cplx> Polynomial::roots() const {
  const int d = degree();
  if (d < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  const cplx lead = c_(d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -c_(i) / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
  if (es.info() != Eigen::Success) throw NumericError("Polynomial::roots: eigenvalue solver failed");
  std::vector<cplx> out(es.eigenvalues().data(), es.eigenvalues().data() + d);
  return out;
}

std::vector<RootCluster> clustered_roots(const Polynomial& p, double cluster_tol) {
  const auto raw = p.roots();
  std::vector<bool> used(raw.size(), false);
  std::vector<RootCluster> out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    // single linkage: a multiplicity-m root splits into a ring of radius ~ eps^(1/m)
    std::vector<std::size_t> members{i};
    for (std::size_t k = 0; k < members.size(); ++k) {
      const cplx anchor = raw[members[k]];
      const double tol = cluster_tol * std::max(1.0, std::abs(anchor));
      for (std::size_t j = 0; j < raw.size(); ++j)
        if (!used[j] && std::abs(raw[j] - anchor) < tol) {
          used[j] = true;
          members.push_back(j);
        }
    }
    cplx sum = 0.0;
    for (auto j : members) sum += raw[j];
    const int count = static_cast<int>(members.size());
    // A root of multiplicity m is a simple root of p^{(m-1)}.
    Polynomial q = p;
    for (int k = 1; k < count; ++k) q = q.derivative();
    const cplx z = newton_polish(q, sum / static_cast<double>(count));
    out.push_back({z, count, std::abs(q(z))});
  }
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  const auto n = std::max(a.c_.size(), b.c_.size());
  Eigen::VectorXcd r = Eigen::VectorXcd::Zero(n);
  r.head(a.c_.size()) += a.c_;
  r.head(b.c_.size()) += b.c_;
  return Polynomial(r);
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + cplx(-1.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  const int da = std::max(a.degree(), 0), db = std::max(b.degree(), 0);
  Eigen::VectorXcd r = Eigen::VectorXcd::Zero(da + db + 1);
  for (int i = 0; i <= da; ++i)
    for (int j = 0; j <= db; ++j) r(i + j) += a.coeff(i) * b.coeff(j);
  return Polynomial(r);
}

Polynomial operator*(cplx s, const Polynomial& a) { return Polynomial(Eigen::VectorXcd(s * a.c_)); }

}  // namespace qcw
