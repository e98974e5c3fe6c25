#include "qcw/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>

#include "qcw/domains.hpp"
#include "qcw/errors.hpp"
#include "qcw/extremal.hpp"
#include "qcw/grunsky.hpp"
#include "qcw/schwarzian.hpp"

namespace qcw {

namespace {

constexpr double kPi = std::numbers::pi;

using Checks = std::vector<PropertyCheck>;

cplx gaussian_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  return {re, n(rng)};
}

Coeffs random_coeffs(std::mt19937_64& rng, Index max_index) {
  Eigen::VectorXcd b(max_index + 1);
  for (Index k = 0; k <= max_index; ++k) b(k) = 0.3 * std::pow(0.8, static_cast<double>(k)) * gaussian_complex(rng);
  return Coeffs(std::move(b));
}

Coeffs diagonal_family(double t, Index n) {
  Coeffs f = Coeffs::identity(2 * n);
  f.b(1) = t;
  return f;
}

// Power series of z / (1 + t z^p)^{2/p} through z^{order}, ascending from z^0.
Eigen::VectorXcd power_family_disk(double t, int p, Index order) {
  TruncSeries<double> base(order);
  base[0] = 1.0;
  if (p <= order) base[p] = t;
  const auto g = series_pow(base, Rational{-2, p});
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(order + 1);
  for (Index k = 1; k <= order; ++k) a(k) = g[k - 1];
  return a;
}

BeltramiGrid constant_mu(cplx t, Index m) {
  return sample_coefficient([t](cplx) { return t; }, m);
}

BeltramiGrid teich(const Polynomial& psi, double k, Index m) {
  return make_teichmueller_mu(QuadDifferential(psi), k, m);
}

double solver_kappa(const BeltramiGrid& mu, Index n) {
  SolverOptions opts;
  opts.n_coeffs = 2 * n;
  return grunsky_norm(solve_beltrami(mu, opts).f, n).value;
}

// ---------------------------------------------------------------------------

Checks grunsky_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Checks out;
  constexpr Index n = 12;
  double sym = 0, row = 0, shift = 0, rot = 0, mono = 0;
  for (int trial = 0; trial < 8; ++trial) {
    const Coeffs f = random_coeffs(rng, 2 * n);
    const auto g = grunsky_matrix(f, n);
    sym = std::max(sym, (g - g.transpose()).cwiseAbs().maxCoeff());
    for (Index m = 1; m <= n; ++m)
      row = std::max(row, std::abs(g(m - 1, 0) / std::sqrt(static_cast<double>(m)) - f.b(m)));
    Coeffs shifted = f;
    shifted.b(0) += gaussian_complex(rng);
    shift = std::max(shift, (grunsky_matrix(shifted, n) - g).cwiseAbs().maxCoeff());
    const auto est = grunsky_norm(f, n);
    rot = std::max(rot, std::abs(grunsky_norm(rotate(f, 0.7 + trial), n).value - est.value));
    for (std::size_t i = 1; i < est.per_size.size(); ++i)
      mono = std::max(mono, est.per_size[i - 1].second - est.per_size[i].second);
  }
  out.push_back({"symmetry max|G - G^T|", sym, 1e-14});
  out.push_back({"row identity max|alpha_m1 - b_m|", row, 1e-12});
  out.push_back({"b0 invariance max|G(f + c) - G(f)|", shift, 1e-12});
  out.push_back({"rotation invariance of the norm", rot, 1e-12});
  out.push_back({"per-size monotonicity (max decrease)", mono, 1e-13});

  double diag = 0;
  for (int i = 1; i <= 9; ++i) {
    const double t = 0.1 * i;
    diag = std::max(diag, std::abs(grunsky_norm(diagonal_family(t, 24), 24).value - t));
  }
  out.push_back({"diagonal family |kappa(z + t/z) - t|", diag, 1e-12});

  constexpr Index nd = 24;
  const double even = grunsky_norm(disk_inversion(power_family_disk(0.5, 2, 2 * nd + 1)), nd).value;
  const double odd = grunsky_norm(disk_inversion(power_family_disk(0.5, 3, 2 * nd + 1)), nd).value;
  out.push_back({"even root transform |kappa - 0.5|", std::abs(even - 0.5), 1e-10});
  out.push_back({"odd root transform kappa - (0.5 - 1e-3)", odd - 0.499, 0.0});

  const Coeffs h = random_coeffs(rng, 2 * n);
  double hom = 0;
  double prev = 0;
  for (int i = 1; i <= 10; ++i) {
    const double v = grunsky_norm(homotopy(h, cplx(0.1 * i)), n).value;
    hom = std::max(hom, prev - v);
    prev = v;
  }
  out.push_back({"homotopy norm nondecreasing in |t| (max decrease)", hom, 1e-13});
  return out;
}

Checks beltrami_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Checks out;
  constexpr Index m = 256;
  SolverOptions opts;
  opts.n_coeffs = 16;

  const auto c = solve_beltrami(constant_mu(0.4, m), opts);
  double tail = 0;
  for (Index k = 2; k <= 16; ++k) tail += std::abs(c.f.b(k));
  out.push_back({"constant mu = 0.4: |b1 - 0.4|", std::abs(c.f.b(1) - 0.4), 2e-3});
  out.push_back({"constant mu = 0.4: sum_{k=2..16} |b_k|", tail, 5.0 / m});

  // w = z |z|^2 inside, z outside: mu = z / (2 conj z), every b_k = 0.
  const auto rs = solve_beltrami(
      sample_coefficient([](cplx z) { return std::abs(z) == 0.0 ? cplx(0.0) : 0.5 * z / std::conj(z); }, m),
      opts);
  out.push_back({"radial stretch max_k |b_k|", rs.f.b.tail(16).cwiseAbs().maxCoeff(), 5e-3});

  // Pi d(phi)/d(conj z) = d(phi)/dz for a smooth bump phi.
  {
    const double h = 2.0 / m;
    Eigen::MatrixXcd dbar(m, m), dz(m, m);
    for (Index r = 0; r < m; ++r)
      for (Index cc = 0; cc < m; ++cc) {
        const cplx z(-1.0 + (cc + 0.5) * h, -1.0 + (r + 0.5) * h);
        const double s = 1.0 - std::norm(z / 0.8);
        if (s <= 0.0) {
          dbar(r, cc) = dz(r, cc) = 0.0;
          continue;
        }
        // phi = s^4 (1 + z): d/dconj z and d/dz in closed form
        const double ds = 4.0 * s * s * s;
        dbar(r, cc) = ds * (-z / 0.64) * (1.0 + z);
        dz(r, cc) = ds * (-std::conj(z) / 0.64) * (1.0 + z) + s * s * s * s;
      }
    const Eigen::MatrixXcd pi = beurling_transform(dbar);
    out.push_back({"Beurling oracle max|Pi(phi_zbar) - phi_z| / max|phi_z|",
                   (pi - dz).cwiseAbs().maxCoeff() / dz.cwiseAbs().maxCoeff(), 1e-2});
    out.push_back({"Beurling L2 isometry defect", std::abs(pi.norm() / dbar.norm() - 1.0), 1e-3});
  }

  double kuehnau = 0, univalence = 0, contraction = 0;
  for (int trial = 0; trial < 4; ++trial) {
    const auto mu = random_smooth_mu(rng, 0.5, m);
    const auto sol = solve_beltrami(mu, opts);
    const double kappa = grunsky_norm(sol.f, 8).value;
    kuehnau = std::max(kuehnau, kappa - 0.5);
    univalence = std::max(univalence, kappa);
    const auto& hist = sol.residual_history;
    for (std::size_t i = 2; i < hist.size(); ++i)
      if (hist[i - 1] > 1e-8) contraction = std::max(contraction, hist[i] / hist[i - 1]);
  }
  out.push_back({"Kuehnau kappa - |mu|_inf (random mu, k = 0.5)", kuehnau, 5e-3});
  out.push_back({"univalence kappa (random mu)", univalence, 1.0 + 1e-6});
  out.push_back({"Neumann residual ratio (k = 0.5)", contraction, 0.5 * 1.1});

  // First-order variation: G(f^{t mu}) = t A(mu) + O(t^2).
  {
    const auto mu = random_smooth_mu(rng, 0.5, m);
    const Eigen::MatrixXcd a = moment_matrix(mu, 6);
    std::vector<double> cs;
    for (double t : {0.01, 0.02, 0.04}) {
      const BeltramiGrid tmu(Eigen::MatrixXcd(t * mu.samples()));
      SolverOptions o;
      o.n_coeffs = 12;
      const auto g = grunsky_matrix(solve_beltrami(tmu, o).f, 6);
      cs.push_back((g - t * a).cwiseAbs().maxCoeff() / (t * t));
    }
    out.push_back({"first-order variation |C(0.01)/C(0.02) - 1|", std::abs(cs[0] / cs[1] - 1.0), 0.1});
    out.push_back({"first-order variation |C(0.02)/C(0.04) - 1|", std::abs(cs[1] / cs[2] - 1.0), 0.2});
  }
  return out;
}

Checks extremal_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Checks out;
  constexpr Index m = 256;
  const auto chi = constant_mu(0.5, m);
  out.push_back({"alpha(chi_D) = 1", std::abs(alpha_functional(chi, 8) - 1.0), 2e-3});
  const auto odd = teich(Polynomial({0.0, 1.0}), 0.5, m);
  out.push_back({"alpha(conj z / |z|) = 2 sqrt 2 / 3",
                 std::abs(alpha_functional(odd, 8) - 2.0 * std::sqrt(2.0) / 3.0), 2e-3});
  out.push_back({"alpha(conj z^2 / |z|^2) = 1",
                 std::abs(alpha_functional(teich(Polynomial({0.0, 0.0, 1.0}), 0.5, m), 8) - 1.0), 2e-3});
  out.push_back({"1/rho_L for chi_D, t = 0.4", std::abs(inverse_fredholm_eigenvalue(chi, 0.4, 8) - 0.4), 2e-3});

  out.push_back({"reflection_q(1/3) = 0.6", std::abs(quasiinvariants(1.0 / 3.0).reflection_q - 0.6), 1e-15});
  double ahlfors = -1, recip = 0, dilatation = 0;
  for (int i = 1; i <= 9; ++i) {
    const auto q = quasiinvariants(0.1 * i);
    ahlfors = std::max(ahlfors, 1.0 / q.fredholm_rho - q.reflection_q);
    recip = std::max(recip, std::abs(q.fredholm_rho * q.kappa_hat - 1.0));
    const double lhs = (1 + q.reflection_q) / (1 - q.reflection_q);
    const double rhs = std::pow((1 + q.kappa_hat) / (1 - q.kappa_hat), 2);
    dilatation = std::max(dilatation, std::abs(lhs / rhs - 1.0));
  }
  out.push_back({"Ahlfors inequality 1/rho - q", ahlfors, 0.0});
  out.push_back({"reciprocity |rho kappa_hat - 1|", recip, 1e-15});
  out.push_back({"dilatation identity relative error", dilatation, 1e-13});

  const auto mu = teich(Polynomial({0.0, 1.0}), 0.3, m);
  const double kappa = solver_kappa(mu, 16);
  const auto o1 = outer_limit_norm(mu, 1, {0.9, 1.0}, 16);
  const auto o2 = outer_limit_norm(mu, 2, {0.9, 1.0}, 16);
  const auto o2r = outer_limit_norm(mu, 2, {0.9}, 16);
  out.push_back({"sandwich kappa - kappa_hat", kappa - o2.value, 5e-3});
  out.push_back({"sandwich kappa_hat - |mu|_inf", o2.value - mu.k_sup(), 5e-3});
  out.push_back({"outer limit monotone in P (decrease)", o1.value - o2.value, 0.0});
  out.push_back({"outer limit monotone in max r (decrease)", o2r.value - o2.value, 0.0});

  // A random representative is not extremal, so only the upper half applies.
  double upper = -1.0;
  for (int trial = 0; trial < 3; ++trial) {
    const auto r = random_smooth_mu(rng, 0.4, m);
    upper = std::max(upper, outer_limit_norm(r, 2, {0.9, 1.0}, 12).value - r.k_sup());
  }
  out.push_back({"kappa_hat - |mu|_inf on random mu", upper, 5e-3});
  return out;
}

Checks schwarzian_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> deg(2, 6);
  Checks out;
  double residue = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const int d = deg(rng);
    Eigen::VectorXcd c(d + 1);
    for (int k = 0; k <= d; ++k) c(k) = gaussian_complex(rng);
    for (const auto& t : critical_partial_fractions(Polynomial(c)))
      residue = std::max(residue, std::abs(t.c_residue - t.c_closed));
  }
  out.push_back({"residue consistency |c_residue - (-m(m+2)/2)|", residue, 1e-8});

  double mob = 0;
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXcd c(4);
    for (int k = 0; k < 4; ++k) c(k) = gaussian_complex(rng);
    const RationalMap g(Polynomial(c), Polynomial({2.0, gaussian_complex(rng)}));
    // M(w) = (a w + b) / (c w + d) applied to g = P / Q
    const cplx a = gaussian_complex(rng), b = gaussian_complex(rng), cc = gaussian_complex(rng),
               dd = gaussian_complex(rng);
    const RationalMap mg(a * g.numerator() + b * g.denominator(), cc * g.numerator() + dd * g.denominator());
    mob = std::max(mob, rational_form_distance(schwarzian(g), schwarzian(mg)));
  }
  out.push_back({"Moebius invariance (rational-form distance)", mob, 1e-10});
  const auto moebius = schwarzian(RationalMap(Polynomial({1.0, 2.0}), Polynomial({3.0, -1.0})));
  out.push_back({"Moebius kernel: S vanishes", moebius.vanishes() ? 0.0 : 1.0, 0.0});

  const auto s = schwarzian(RationalMap(Polynomial({0.1, 0.0, 1.0}), Polynomial({0.0, 1.0})));
  out.push_back({"||S_{z + 0.1/z}||_B (exterior) <= 6 * 0.1", b_norm(s, Side::exterior), 0.6 + 1e-12});
  out.push_back({"boundary profile at r = 1.001", boundary_profile(s, 1.001), 1e-4});
  const auto aw = ahlfors_weill_mu(s, 256);
  const Index mid = 128;
  out.push_back({"mu_AW near 0 equals 3t = 0.3", std::abs(aw.samples()(mid, mid) - 0.3), 1e-3});
  double ring = 0;
  for (Index r = 0; r < aw.size(); ++r)
    for (Index c = 0; c < aw.size(); ++c)
      if (std::abs(aw.center(r, c)) > 0.98) ring = std::max(ring, std::abs(aw.samples()(r, c)));
  out.push_back({"mu_AW max on the ring |z| > 0.98", ring, 0.3 * 4e-3});

  // ||S_{f^mu}||_B <= 6 |mu|_inf for a solver-produced map.
  {
    const auto mu = teich(Polynomial({0.0, 0.0, 1.0}), 0.3, 256);
    SolverOptions o;
    o.n_coeffs = 24;
    const auto f = solve_beltrami(mu, o).f;
    const Index k = f.max_index();
    // z + b0 + sum b_j z^-j = (z^{k+1} + b0 z^k + ... + b_k) / z^k
    Eigen::VectorXcd num = Eigen::VectorXcd::Zero(k + 2);
    num(k + 1) = 1.0;
    for (Index j = 0; j <= k; ++j) num(k - j) = f.b(j);
    const auto sf = schwarzian(RationalMap(Polynomial(num), Polynomial::monomial(static_cast<int>(k))));
    out.push_back({"||S_{f^mu}||_B - 6 |mu|_inf (psi = z^2, k = 0.3)",
                   b_norm(sf, Side::exterior, {100, 128}) - 6.0 * mu.k_sup(), 2e-2});
  }
  return out;
}

Checks domains_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Checks out;
  out.push_back({"ellipse a = 5/4, b = 3/4, n <= 8: Gram deviation",
                 ellipse_basis(1.25, 0.75, 8).gram_deviation, 1e-6});
  out.push_back({"lemniscate n <= 6: Gram deviation", lemniscate_basis(6).gram_deviation, 1e-6});
  out.push_back({"starlike h = z, n <= 8: Gram deviation",
                 starlike_basis(Polynomial({0.0, 1.0}), 8).gram_deviation, 1e-10});
  out.push_back({"starlike h = z + z^2/5, n <= 5: Gram deviation",
                 starlike_basis(Polynomial({0.0, 1.0, 0.2}), 5).gram_deviation, 1e-6});

  const auto e = ellipse_basis(1.25, 0.75, 8);
  double prev = projection_residual(e, [](cplx z) { return std::exp(z); }, 0);
  double incr = 0;
  for (int n = 1; n <= 8; ++n) {
    const double r = projection_residual(e, [](cplx z) { return std::exp(z); }, n);
    incr = std::max(incr, r - prev);
    prev = r;
  }
  out.push_back({"projection residual of e^z nonincreasing (max increase)", incr, 1e-12});
  out.push_back({"projection residual of z at n = 1", projection_residual(e, [](cplx z) { return z; }, 1), 1e-10});

  std::uniform_real_distribution<double> u(0.05, 0.95);
  double mono = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> angles(3);
    for (auto& a : angles) a = u(rng);
    const double ai = u(rng);
    const double base = polygon_bound(angles, ai).value;
    auto bumped = angles;
    bumped[trial % 3] = std::min(0.99, bumped[trial % 3] + 0.03);
    mono = std::max({mono, polygon_bound(bumped, ai).value - base,
                     polygon_bound(angles, std::min(1.0, ai + 0.03)).value - base});
  }
  out.push_back({"polygon bound nonincreasing in angles (max increase)", mono, 0.0});
  out.push_back({"polygon bound alpha_j = 1/2, |alpha_inf| = 0.9",
                 std::abs(polygon_bound({0.5, 0.5, 0.5}, 0.9).value - 0.5), 1e-15});
  out.push_back({"smooth convex case alpha_0 = -0.4", std::abs(polygon_bound({}, -0.4).value - 0.6), 1e-15});
  return out;
}

Checks chain_suite(std::uint64_t) {
  Checks out;
  constexpr Index m = 512, n = 16;
  const std::vector<std::pair<std::string, Polynomial>> psis{
      {"1", Polynomial({1.0})}, {"z", Polynomial({0.0, 1.0})}, {"z^2", Polynomial({0.0, 0.0, 1.0})}};
  for (const auto& [name, psi] : psis) {
    const auto dir = teich(psi, 0.5, m);
    const double alpha = std::min(alpha_functional(dir, n), 1.0);
    for (double t : {0.1, 0.2, 0.3}) {
      const double kappa = solver_kappa(teich(psi, t, m), n);
      std::ostringstream label;
      label << "psi = " << name << ", t = " << t << ": |kappa - curve(alpha, t)|";
      out.push_back({label.str(), std::abs(kappa - grunsky_curve(alpha, t)), 5e-3});
    }
  }
  return out;
}

}  // namespace

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.pass(); });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"grunsky", "beltrami", "extremal", "schwarzian", "domains", "chain"};
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  static const std::map<std::string, std::function<Checks(std::uint64_t)>> suites{
      {"grunsky", grunsky_suite},       {"beltrami", beltrami_suite}, {"extremal", extremal_suite},
      {"schwarzian", schwarzian_suite}, {"domains", domains_suite},   {"chain", chain_suite}};
  const auto it = suites.find(name);
  if (it == suites.end()) throw UsageError("unknown suite '" + name + "'");
  return {name, seed, it->second(seed)};
}

std::string format_suite(const SuiteResult& r) {
  std::ostringstream os;
  os << "suite " << r.suite << " (seed " << r.seed << ")\n";
  std::size_t width = 8;
  for (const auto& c : r.checks) width = std::max(width, c.name.size());
  os << std::left << std::setw(static_cast<int>(width)) << "property" << "  status  "
     << std::setw(24) << "measured" << std::setw(24) << "bound" << "slack\n";
  os << std::setprecision(17);
  for (const auto& c : r.checks) {
    os << std::left << std::setw(static_cast<int>(width)) << c.name << "  " << (c.pass() ? "ok    " : "FAIL  ")
       << "  " << std::setw(24) << c.measured << std::setw(24) << c.bound << c.slack() << "\n";
  }
  os << (r.passed() ? "all properties hold\n" : "property violations present\n");
  return os.str();
}

BeltramiGrid random_smooth_mu(std::mt19937_64& rng, double k, Index m) {
  if (!(k > 0.0 && k < 1.0)) throw DomainError("random_smooth_mu: k must lie in (0, 1)");
  std::vector<std::pair<std::pair<int, int>, cplx>> terms;
  double bound = 0.0;
  for (int j = 0; j <= 3; ++j)
    for (int l = 0; j + l <= 3; ++l) {
      const cplx a = gaussian_complex(rng);
      terms.push_back({{j, l}, a});
      bound += std::abs(a);
    }
  const double scale = 0.99 / bound;
  const BeltramiGrid raw = sample_coefficient(
      [&terms, scale](cplx z) {
        cplx acc = 0.0;
        for (const auto& [jl, a] : terms) acc += a * std::pow(z, jl.first) * std::pow(std::conj(z), jl.second);
        return scale * acc;
      },
      m);
  return BeltramiGrid(Eigen::MatrixXcd(raw.samples() * (k / raw.k_sup())));
}

}  // namespace qcw
