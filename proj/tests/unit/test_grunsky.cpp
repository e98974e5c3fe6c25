#include <doctest.h>

#include <random>

#include "qcw/grunsky.hpp"

using namespace qcw;
using cplx = std::complex<double>;

namespace {

Coeffs from(std::initializer_list<cplx> b, Index max_index) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(max_index + 1);
  Index k = 0;
  for (const auto& x : b) v(k++) = x;
  return Coeffs(v);
}

}  // namespace

TEST_CASE("grunsky_matrix examples") {
  CHECK(grunsky_matrix(Coeffs::identity(9), 5).cwiseAbs().maxCoeff() == 0.0);
  const auto g = grunsky_matrix(from({0.0, 0.5}, 15), 8);
  for (Index m = 0; m < 8; ++m)
    for (Index n = 0; n < 8; ++n) {
      const cplx expect = m == n ? std::pow(0.5, static_cast<double>(m + 1)) : 0.0;
      CHECK(std::abs(g(m, n) - expect) < 1e-15);
    }
  CHECK(std::abs(g(1, 1) - 0.25) < 1e-15);
  const double t = 0.3;
  const auto d = grunsky_matrix(from({2 * t, t * t}, 15), 8);
  for (Index m = 0; m < 8; ++m) CHECK(std::abs(d(m, m) - std::pow(t, 2.0 * (m + 1))) < 1e-15);
  CHECK_THROWS_AS(grunsky_matrix(from({0.0, 0.5}, 4), 3), UsageError);
}

TEST_CASE("quadratic_form_norm") {
  CHECK(quadratic_form_norm(Eigen::MatrixXcd::Zero(3, 3)) == 0.0);
  Eigen::MatrixXcd a(2, 2);
  a << 0.0, cplx(0.3, 0.4), cplx(0.3, 0.4), 0.0;
  CHECK(std::abs(quadratic_form_norm(a) - 0.5) < 1e-15);
  CHECK_THROWS_AS(quadratic_form_norm(Eigen::MatrixXcd::Zero(2, 3)), UsageError);

  // sampling oracle: random unit vectors plus coordinate refinement
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd s(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) s(i, j) = s(j, i) = cplx(g(rng), g(rng));
  auto form = [&s](const Eigen::VectorXcd& x) { return std::abs((x.transpose() * s * x)(0, 0)) / x.squaredNorm(); };
  double best = 0;
  Eigen::VectorXcd arg(3);
  for (int trial = 0; trial < 1000000; ++trial) {
    Eigen::VectorXcd x(3);
    for (int i = 0; i < 3; ++i) x(i) = cplx(g(rng), g(rng));
    const double v = form(x);
    if (v > best) {
      best = v;
      arg = x;
    }
  }
  for (double step = 0.1; step > 1e-9; step *= 0.5)
    for (int pass = 0; pass < 20; ++pass)
      for (int i = 0; i < 3; ++i)
        for (cplx d : {cplx(step, 0), cplx(-step, 0), cplx(0, step), cplx(0, -step)}) {
          Eigen::VectorXcd y = arg;
          y(i) += d * arg.norm();
          if (form(y) > best) {
            best = form(y);
            arg = y;
          }
        }
  CHECK(std::abs(quadratic_form_norm(s) - best) < 1e-6);
}

TEST_CASE("asymmetric input is symmetrized") {
  Eigen::MatrixXcd a(2, 2);
  a << 1.0, 0.2, 0.0, 1.0;
  Eigen::MatrixXcd sym(2, 2);
  sym << 1.0, 0.1, 0.1, 1.0;
  CHECK(std::abs(quadratic_form_norm(a) - quadratic_form_norm(sym)) < 1e-15);
}

TEST_CASE("grunsky_norm examples") {
  const auto est = grunsky_norm(from({0.0, 0.5}, 31), 16);
  CHECK(std::abs(est.value - 0.5) < 1e-15);
  CHECK(std::abs(est.per_size.front().second - 0.5) < 1e-15);
  CHECK(est.converged);
  const auto odd = grunsky_norm(root_transform(from({0.0, 0.5}, 15), 3), 24);
  CHECK(odd.value >= 0.5 - 1e-9);
  CHECK(odd.value < 1.0);
  for (std::size_t i = 1; i < odd.per_size.size(); ++i)
    CHECK(odd.per_size[i].second >= odd.per_size[i - 1].second - 1e-14);
}

TEST_CASE("root_transform") {
  const auto id = root_transform(Coeffs::identity(5), 3);
  CHECK(id.b.cwiseAbs().maxCoeff() == 0.0);
  const auto r = root_transform(from({0.0, 0.4}, 3), 2);
  CHECK(std::abs(r.b(3) - 0.2) < 1e-15);
  CHECK(std::abs(r.b(7) + 0.02) < 1e-15);
  CHECK(std::abs(r.b(1)) == 0.0);
  CHECK_THROWS_AS(root_transform(Coeffs::identity(3), 1), UsageError);

  // kappa_p >= kappa; sum k|b_k| <= 1 keeps z + b1/z + b2/z^2 univalent
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    cplx b1(u(rng), u(rng)), b2(u(rng), u(rng));
    const double s = 0.95 / (std::abs(b1) + 2 * std::abs(b2));
    const Coeffs f = from({0.0, s * b1, s * b2}, 63);
    const double k = grunsky_norm(f, 12).value;
    for (int p : {2, 3}) CHECK(grunsky_norm(root_transform(f, p), 12 * p).value >= k - 1e-9);
  }
}

TEST_CASE("homotopy") {
  const Coeffs f = from({0.1, 0.4, 0.2}, 7);
  CHECK((homotopy(f, cplx(1.0)).b - f.b).cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(homotopy(from({0.0, 0.8}, 3), cplx(0.5)).b(1) - 0.2) < 1e-16);
  CHECK_THROWS_AS(homotopy(f, cplx(1.1)), DomainError);
  double prev = 0;
  const Coeffs g = from({0.0, 0.3, cplx(0.1, 0.2), 0.05}, 23);
  for (int i = 1; i <= 10; ++i) {
    const double v = grunsky_norm(homotopy(g, cplx(0.1 * i)), 12).value;
    CHECK(v >= prev - 1e-14);
    prev = v;
  }
}

TEST_CASE("disk_inversion") {
  Eigen::VectorXcd id = Eigen::VectorXcd::Zero(8);
  id(1) = 1.0;
  CHECK(disk_inversion(id).b.cwiseAbs().maxCoeff() == 0.0);
  const double t = 0.35;
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(12);
  for (Index k = 1; k < 12; ++k) a(k) = static_cast<double>(k) * std::pow(-t, static_cast<double>(k - 1));
  const auto f = disk_inversion(a);
  CHECK(std::abs(f.b(0) - 2 * t) < 1e-14);
  CHECK(std::abs(f.b(1) - t * t) < 1e-14);
  CHECK(f.b.tail(f.b.size() - 2).cwiseAbs().maxCoeff() < 1e-14);

  Eigen::VectorXcd koebe = Eigen::VectorXcd::Zero(42);
  for (Index k = 1; k < 42; ++k) koebe(k) = static_cast<double>(k);
  const auto kf = disk_inversion(koebe);
  CHECK(std::abs(kf.b(0) + 2.0) < 1e-12);
  CHECK(std::abs(kf.b(1) - 1.0) < 1e-12);
  CHECK(std::abs(grunsky_norm(kf, 20).value - 1.0) < 1e-12);

  Eigen::VectorXcd bad = a;
  bad(1) = 2.0;
  CHECK_THROWS_AS(disk_inversion(bad), NormalizationError);
}

TEST_CASE("model_norm and rotation") {
  CHECK(model_norm(GrunskyMatrix<double>(Eigen::MatrixXcd::Zero(0, 0))) == 0.0);
  const Coeffs f = from({0.0, 0.5}, 15);
  CHECK(std::abs(model_norm(grunsky_matrix(f, 8)) - 1.0) < 1e-15);
  const Coeffs g = from({0.1, cplx(0.2, 0.1), 0.15, cplx(0.0, 0.05)}, 15);
  const double theta = 0.83;
  const auto a = grunsky_matrix(g, 8), b = grunsky_matrix(rotate(g, theta), 8);
  for (Index m = 1; m <= 8; ++m)
    for (Index n = 1; n <= 8; ++n)
      CHECK(std::abs(b(m - 1, n - 1) - std::polar(1.0, -static_cast<double>(m + n) * theta) * a(m - 1, n - 1)) <
            1e-14);
  CHECK(std::abs(model_norm(a) - model_norm(b)) < 1e-14);
}

TEST_CASE("row identity and b0 invariance") {
  const Coeffs g = from({0.7, cplx(0.2, 0.1), 0.15, cplx(0.0, 0.05), 0.01}, 15);
  const auto a = grunsky_matrix(g, 8);
  for (Index m = 1; m <= 8; ++m) CHECK(std::abs(a(m - 1, 0) - std::sqrt(double(m)) * g.b(m)) < 1e-15);
  Coeffs shifted = g;
  shifted.b(0) = -3.0;
  CHECK((grunsky_matrix(shifted, 8) - a).cwiseAbs().maxCoeff() == 0.0);
}
