#include "qcw/beltrami.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "qcw/errors.hpp"

namespace qcw {

namespace {

constexpr int kSubsamples = 16;
constexpr double kPi = std::numbers::pi;

double cell_x(Index col, double h) { return -1.0 + (static_cast<double>(col) + 0.5) * h; }
double cell_y(Index row, double h) { return -1.0 + (static_cast<double>(row) + 0.5) * h; }

// Distance from the origin to the nearest and farthest points of a cell.
std::pair<double, double> cell_radii(double cx, double cy, double h) {
  const double half = 0.5 * h;
  const double nx = std::max(0.0, std::abs(cx) - half);
  const double ny = std::max(0.0, std::abs(cy) - half);
  const double fx = std::abs(cx) + half;
  const double fy = std::abs(cy) + half;
  return {std::hypot(nx, ny), std::hypot(fx, fy)};
}

double cell_coverage(double cx, double cy, double h, double radius) {
  const auto [near, far] = cell_radii(cx, cy, h);
  if (far <= radius) return 1.0;
  if (near >= radius) return 0.0;
  int inside = 0;
  for (int a = 0; a < kSubsamples; ++a)
    for (int b = 0; b < kSubsamples; ++b) {
      const double x = cx + ((b + 0.5) / kSubsamples - 0.5) * h;
      const double y = cy + ((a + 0.5) / kSubsamples - 0.5) * h;
      if (x * x + y * y < radius * radius) ++inside;
    }
  return static_cast<double>(inside) / (kSubsamples * kSubsamples);
}

// Row/column 2D FFT helpers on a column-major matrix.
void fft_columns(Eigen::FFT<double>& fft, Eigen::MatrixXcd& a, Index ncols, bool inverse) {
  Eigen::VectorXcd in(a.rows()), out(a.rows());
  for (Index c = 0; c < ncols; ++c) {
    in = a.col(c);
    if (inverse)
      fft.inv(out, in);
    else
      fft.fwd(out, in);
    a.col(c) = out;
  }
}

void fft_rows(Eigen::FFT<double>& fft, Eigen::MatrixXcd& a, Index nrows, bool inverse) {
  Eigen::VectorXcd in(a.cols()), out(a.cols());
  for (Index r = 0; r < nrows; ++r) {
    in = a.row(r).transpose();
    if (inverse)
      fft.inv(out, in);
    else
      fft.fwd(out, in);
    a.row(r) = out.transpose();
  }
}

}  // namespace

Eigen::MatrixXd disk_coverage(Index m, double radius) {
  const double h = 2.0 / static_cast<double>(m);
  Eigen::MatrixXd cov(m, m);
  for (Index r = 0; r < m; ++r)
    for (Index c = 0; c < m; ++c) cov(r, c) = cell_coverage(cell_x(c, h), cell_y(r, h), h, radius);
  return cov;
}

// ---------------------------------------------------------------------------
// BeltramiGrid

BeltramiGrid::BeltramiGrid(Eigen::MatrixXcd samples) : samples_(std::move(samples)) {
  if (samples_.rows() != samples_.cols() || samples_.rows() < 2)
    throw UsageError("BeltramiGrid: samples must form a square grid of size >= 2");
  const Index m = size();
  const double h = cell_size();
  for (Index r = 0; r < m; ++r)
    for (Index c = 0; c < m; ++c) {
      const auto v = samples_(r, c);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw DomainError("BeltramiGrid: non-finite sample");
      if (v != cplx(0.0) && cell_radii(cell_x(c, h), cell_y(r, h), h).first >= 1.0)
        throw DomainError("BeltramiGrid: nonzero sample outside the closed unit disk");
    }
  k_sup_ = samples_.cwiseAbs().maxCoeff();
  if (!(k_sup_ < 1.0))
    throw DomainError("BeltramiGrid: sup |mu| = " + std::to_string(k_sup_) + " is not < 1");
}

BeltramiGrid BeltramiGrid::zero(Index m) { return BeltramiGrid(Eigen::MatrixXcd::Zero(m, m)); }

cplx BeltramiGrid::center(Index row, Index col) const {
  const double h = cell_size();
  return {cell_x(col, h), cell_y(row, h)};
}

cplx BeltramiGrid::value_at(cplx z) const {
  if (std::norm(z) >= 1.0) return 0.0;
  const Index m = size();
  const double h = cell_size();
  const double fc = (z.real() + 1.0) / h - 0.5;
  const double fr = (z.imag() + 1.0) / h - 0.5;
  const auto c0 = static_cast<Index>(std::floor(fc));
  const auto r0 = static_cast<Index>(std::floor(fr));
  const double tc = fc - static_cast<double>(c0), tr = fr - static_cast<double>(r0);
  cplx acc = 0.0;
  double wsum = 0.0;
  for (int dr = 0; dr <= 1; ++dr)
    for (int dc = 0; dc <= 1; ++dc) {
      const Index r = r0 + dr, c = c0 + dc;
      if (r < 0 || c < 0 || r >= m || c >= m) continue;
      const double w = (dr ? tr : 1.0 - tr) * (dc ? tc : 1.0 - tc);
      if (w <= 0.0) continue;
      const double cov = cell_coverage(cell_x(c, h), cell_y(r, h), h, 1.0);
      if (cov <= 0.0) continue;
      acc += w * samples_(r, c) / cov;
      wsum += w;
    }
  return wsum > 0.0 ? acc / wsum : cplx(0.0);
}

BeltramiGrid sample_coefficient(const CoefficientField& mu, Index m, double support_radius) {
  if (m < 2) throw UsageError("sample_coefficient: grid size must be >= 2");
  if (!(support_radius > 0.0 && support_radius <= 1.0))
    throw UsageError("sample_coefficient: support radius must lie in (0, 1]");
  const double h = 2.0 / static_cast<double>(m);
  const double r2 = support_radius * support_radius;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(m, m);
  for (Index r = 0; r < m; ++r)
    for (Index c = 0; c < m; ++c) {
      const double cx = cell_x(c, h), cy = cell_y(r, h);
      const auto [near, far] = cell_radii(cx, cy, h);
      if (near >= support_radius) continue;
      if (far <= support_radius) {
        s(r, c) = mu({cx, cy});
        continue;
      }
      cplx acc = 0.0;
      for (int a = 0; a < kSubsamples; ++a)
        for (int b = 0; b < kSubsamples; ++b) {
          const double x = cx + ((b + 0.5) / kSubsamples - 0.5) * h;
          const double y = cy + ((a + 0.5) / kSubsamples - 0.5) * h;
          if (x * x + y * y < r2) acc += mu({x, y});
        }
      s(r, c) = acc / static_cast<double>(kSubsamples * kSubsamples);
    }
  return BeltramiGrid(std::move(s));
}

// ---------------------------------------------------------------------------
// Quadratic differentials and Teichmueller coefficients

QuadDifferential::QuadDifferential(Polynomial numerator)
    : QuadDifferential(std::move(numerator), Polynomial::constant(1.0)) {}

QuadDifferential::QuadDifferential(Polynomial numerator, Polynomial denominator)
    : kind_(denominator.degree() > 0 ? Kind::rational : Kind::polynomial),
      num_(std::move(numerator)),
      den_(std::move(denominator)) {
  if (num_.is_zero()) throw DomainError("QuadDifferential: psi is identically zero");
  if (den_.is_zero()) throw UsageError("QuadDifferential: zero denominator");
  if (den_.degree() > 0)
    for (const auto& pole : den_.roots())
      if (std::abs(pole) < 1.0)
        throw UsageError("QuadDifferential: pole inside the unit disk, psi is not holomorphic there");
  if (num_.degree() > 0)
    for (const auto& cl : clustered_roots(num_))
      if (std::abs(cl.z) < 1.0) zeros_.push_back({cl.z, cl.multiplicity});
}

bool QuadDifferential::in_a1_squared() const {
  return std::all_of(zeros_.begin(), zeros_.end(),
                     [](const Zero& z) { return z.multiplicity % 2 == 0; });
}

BeltramiGrid make_teichmueller_mu(const QuadDifferential& psi, double k, Index m) {
  if (!(k >= 0.0 && k < 1.0)) throw DomainError("make_teichmueller_mu: k must lie in [0, 1)");
  auto field = [&psi, k](cplx z) -> cplx {
    const cplx v = psi(z);
    const double a = std::abs(v);
    return a == 0.0 ? cplx(0.0) : k * std::conj(v) / a;
  };
  BeltramiGrid grid = sample_coefficient(field, m);
  Eigen::MatrixXcd s = grid.samples();
  const double h = grid.cell_size();
  for (const auto& zero : psi.zeros()) {
    // every cell whose closed square contains the zero
    const double fc = (zero.root.real() + 1.0) / h, fr = (zero.root.imag() + 1.0) / h;
    const Index c_lo = static_cast<Index>(std::ceil(fc - 1.0 - 1e-12));
    const Index c_hi = static_cast<Index>(std::floor(fc + 1e-12));
    const Index r_lo = static_cast<Index>(std::ceil(fr - 1.0 - 1e-12));
    const Index r_hi = static_cast<Index>(std::floor(fr + 1e-12));
    for (Index r = std::max<Index>(r_lo, 0); r <= std::min<Index>(r_hi, m - 1); ++r)
      for (Index c = std::max<Index>(c_lo, 0); c <= std::min<Index>(c_hi, m - 1); ++c) s(r, c) = 0.0;
  }
  return BeltramiGrid(std::move(s));
}

// ---------------------------------------------------------------------------
// Beurling transform

struct BeurlingOperator::Impl {
  Index m = 0;
  Eigen::MatrixXcd kernel_hat;
  mutable Eigen::FFT<double> fft;
  mutable Eigen::MatrixXcd work;
};

cplx BeurlingOperator::cell_kernel(cplx c, double h) {
  if (c == cplx(0.0)) return 0.0;
  const double a = 0.5 * h;
  const cplx A = c + cplx(-a, -a), B = c + cplx(a, -a), C = c + cplx(a, a), D = c + cplx(-a, a);
  // closed-contour integral of conj(dw) / w around the square, counterclockwise
  const cplx loop = std::log(B / A) - std::log(C / B) + std::log(D / C) - std::log(A / D);
  return cplx(0.0, 1.0) / (2.0 * kPi) * loop;
}

BeurlingOperator::BeurlingOperator(Index m) : impl_(std::make_unique<Impl>()) {
  if (m < 2) throw UsageError("BeurlingOperator: grid size must be >= 2");
  impl_->m = m;
  const Index n = 2 * m;
  const double h = 2.0 / static_cast<double>(m);
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(n, n);
  for (Index dr = -(m - 1); dr <= m - 1; ++dr)
    for (Index dc = -(m - 1); dc <= m - 1; ++dc)
      k((dr + n) % n, (dc + n) % n) =
          cell_kernel(cplx(static_cast<double>(dc) * h, static_cast<double>(dr) * h), h);
  fft_columns(impl_->fft, k, n, false);
  fft_rows(impl_->fft, k, n, false);
  impl_->kernel_hat = std::move(k);
  impl_->work.resize(n, n);
}

BeurlingOperator::~BeurlingOperator() = default;
BeurlingOperator::BeurlingOperator(BeurlingOperator&&) noexcept = default;
BeurlingOperator& BeurlingOperator::operator=(BeurlingOperator&&) noexcept = default;

Index BeurlingOperator::size() const { return impl_->m; }

Eigen::MatrixXcd BeurlingOperator::apply(const Eigen::MatrixXcd& rho) const {
  const Index m = impl_->m, n = 2 * m;
  if (rho.rows() != m || rho.cols() != m) throw UsageError("BeurlingOperator::apply: grid size mismatch");
  auto& w = impl_->work;
  w.setZero();
  w.topLeftCorner(m, m) = rho;
  // Only the first m rows and columns are nonzero before the transform.
  fft_rows(impl_->fft, w, m, false);
  fft_columns(impl_->fft, w, n, false);
  w.array() *= impl_->kernel_hat.array();
  fft_columns(impl_->fft, w, n, true);
  fft_rows(impl_->fft, w, m, true);
  return w.topLeftCorner(m, m);
}

Eigen::MatrixXcd beurling_transform(const Eigen::MatrixXcd& rho) {
  thread_local std::map<Index, BeurlingOperator> cache;
  auto it = cache.find(rho.rows());
  if (it == cache.end()) it = cache.emplace(rho.rows(), BeurlingOperator(rho.rows())).first;
  return it->second.apply(rho);
}

// ---------------------------------------------------------------------------
// Moments and the solver

Eigen::VectorXcd cell_moments(const Eigen::MatrixXcd& values, Index d_max) {
  const Index m = values.rows();
  if (values.cols() != m) throw UsageError("cell_moments: grid must be square");
  const double h = 2.0 / static_cast<double>(m);
  // Integral over a cell of zeta^d is F(UR) - F(UL) - F(LR) + F(LL) with
  // F = zeta^{d+2} / (i (d+1)(d+2)); accumulate the signed corner weights once.
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(m + 1, m + 1);
  for (Index r = 0; r < m; ++r)
    for (Index c = 0; c < m; ++c) {
      const cplx v = values(r, c);
      if (v == cplx(0.0)) continue;
      w(r + 1, c + 1) += v;
      w(r + 1, c) -= v;
      w(r, c + 1) -= v;
      w(r, c) += v;
    }
  Eigen::ArrayXcd weights(( m + 1) * (m + 1)), z(( m + 1) * (m + 1));
  Index k = 0;
  for (Index c = 0; c <= m; ++c)
    for (Index r = 0; r <= m; ++r, ++k) {
      weights(k) = w(r, c);
      z(k) = cplx(-1.0 + static_cast<double>(c) * h, -1.0 + static_cast<double>(r) * h);
    }
  Eigen::ArrayXcd power = z * z;
  Eigen::VectorXcd out(d_max + 1);
  for (Index d = 0; d <= d_max; ++d) {
    const double denom = static_cast<double>((d + 1) * (d + 2));
    out(d) = (weights * power).sum() / (cplx(0.0, 1.0) * denom);
    power *= z;
  }
  return out;
}

BeltramiSolution solve_beltrami(const BeltramiGrid& mu, const SolverOptions& opts) {
  if (!(opts.tol > 0.0)) throw UsageError("solve_beltrami: tolerance must be positive");
  if (opts.n_coeffs < 1) throw UsageError("solve_beltrami: n_coeffs must be >= 1");
  const Index m = mu.size();
  const double k = mu.k_sup();
  BeltramiSolution sol;
  sol.rho = Eigen::MatrixXcd::Zero(m, m);
  if (k == 0.0) {
    sol.f = Coeffs::identity(opts.n_coeffs);
    return sol;
  }
  int max_iter = opts.max_iter;
  if (max_iter <= 0)
    max_iter = static_cast<int>(std::ceil(std::log(opts.tol) / std::log(k))) + 20;

  const Eigen::MatrixXcd& s = mu.samples();
  Eigen::MatrixXcd rho = s;
  double residual = 0.0;
  bool converged = false;
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::MatrixXcd next = s + s.cwiseProduct(beurling_transform(rho));
    residual = (next - rho).cwiseAbs().maxCoeff();
    rho = std::move(next);
    sol.iterations = it;
    sol.residual_history.push_back(residual);
    if (residual < opts.tol) {
      converged = true;
      break;
    }
  }
  sol.residual = residual;
  if (!converged)
    throw IterationLimitError("solve_beltrami: no convergence within " + std::to_string(max_iter) +
                                  " iterations (residual " + std::to_string(residual) + ")",
                              sol.iterations, residual);

  const Eigen::VectorXcd mom = cell_moments(rho, opts.n_coeffs - 1);
  Eigen::VectorXcd b(opts.n_coeffs + 1);
  const double h = mu.cell_size();
  cplx b0 = 0.0;
  for (Index r = 0; r < m; ++r)
    for (Index c = 0; c < m; ++c)
      if (rho(r, c) != cplx(0.0)) b0 += rho(r, c) / mu.center(r, c);
  b(0) = b0 * h * h / kPi;
  for (Index kk = 1; kk <= opts.n_coeffs; ++kk) b(kk) = mom(kk - 1) / kPi;
  sol.rho = std::move(rho);
  sol.f = Coeffs(std::move(b));
  return sol;
}

BeltramiGrid truncate_mu(const BeltramiGrid& mu, double r) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("truncate_mu: radius must lie in (0, 1)");
  return sample_coefficient([&mu, r](cplx z) { return mu.value_at(z / r); }, mu.size(), r);
}

BeltramiGrid root_transform_mu(const BeltramiGrid& mu, int p) {
  if (p < 2) throw UsageError("root_transform_mu: order p must be >= 2");
  auto field = [&mu, p](cplx z) -> cplx {
    const double a = std::abs(z);
    if (a == 0.0) return 0.0;
    const cplx phase = std::conj(z) / z;
    return mu.value_at(std::pow(z, p)) * std::pow(phase, p - 1);
  };
  return sample_coefficient(field, mu.size());
}

Eigen::MatrixXcd moment_matrix(const BeltramiGrid& mu, Index n) {
  return moment_matrix(mu.samples(), n);
}

Eigen::MatrixXcd moment_matrix(const Eigen::MatrixXcd& values, Index n) {
  if (n < 1) throw UsageError("moment_matrix: size must be >= 1");
  const Eigen::VectorXcd mom = cell_moments(values, 2 * n - 2);
  Eigen::MatrixXcd a(n, n);
  for (Index i = 1; i <= n; ++i)
    for (Index j = 1; j <= n; ++j)
      a(i - 1, j - 1) = std::sqrt(static_cast<double>(i * j)) / kPi * mom(i + j - 2);
  return a;
}

}  // namespace qcw
