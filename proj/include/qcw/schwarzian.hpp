#pragma once

// Schwarzian derivatives of rational maps, their pole data, hyperbolic
// B-norms, and the harmonic Beltrami coefficients built from them.

#include <optional>
#include <string>
#include <vector>

#include "qcw/beltrami.hpp"
#include "qcw/polynomial.hpp"

namespace qcw {

/// f = P / Q with common roots removed at construction.
class RationalMap {
 public:
  explicit RationalMap(Polynomial numerator, Polynomial denominator = Polynomial::constant(1.0),
                       double reduce_tol = 1e-10);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  /// f(z) = z + O(1) at infinity (leading coefficients of P and Q agree,
  /// deg P = deg Q + 1).
  bool normalized() const;
  bool is_polynomial() const { return den_.degree() == 0; }

  cplx operator()(cplx z) const { return num_(z) / den_(z); }
  /// u -> f(1/u), the same map seen from infinity.
  RationalMap reflected() const;

 private:
  Polynomial num_;
  Polynomial den_;
};

/// S_f(z) from the local Taylor data of f (or of 1/f near poles of f).
cplx schwarzian_at(const RationalMap& f, cplx z);

struct SchwarzianPole {
  cplx z;
  int multiplicity = 1;  // order of the critical point
  cplx c;                // coefficient of (z - z_j)^-2
  cplx c1;               // coefficient of (z - z_j)^-1
};

struct SchwarzianData {
  RationalMap map;
  Polynomial num;  // S_f = num / den
  Polynomial den;
  std::vector<SchwarzianPole> poles;

  cplx operator()(cplx z) const { return schwarzian_at(map, z); }
  bool vanishes(double rel_tol = 1e-12) const;
};

SchwarzianData schwarzian(const RationalMap& f);

/// num1 den2 - num2 den1 relative to the size of the products.
double rational_form_distance(const SchwarzianData& a, const SchwarzianData& b);

struct CriticalTerm {
  cplx z;
  int multiplicity = 1;
  double c_closed = 0;  // -m(m+2)/2
  cplx c_residue;       // contour integral of (z - z_j) S_p
  cplx c1;              // contour integral of S_p
};

std::vector<CriticalTerm> critical_partial_fractions(const Polynomial& p);

enum class Side { interior, exterior };

struct BNormOptions {
  int radial = 200;
  int angular = 256;
};

/// Grid estimate (a lower bound) of sup (1-|z|^2)^2 |S| over the disk or of
/// sup (|z|^2-1)^2 |S| over its exterior, refined once around the argmax.
double b_norm(const SchwarzianData& s, Side side, const BNormOptions& opts = {});
/// The same estimate for a function given pointwise on the disk.
double weighted_disk_sup(const CoefficientField& phi, const BNormOptions& opts = {});

/// max over |z| = r of the B-norm weight times |S| (r < 1 interior, r > 1 exterior).
double boundary_profile(const SchwarzianData& s, double r, int angular = 512);

/// mu_AW(z) = -1/2 (1-|z|^2)^2 S_f(1/conj z) / conj(z)^4 on an M x M grid.
BeltramiGrid ahlfors_weill_mu(const SchwarzianData& s, Index m);

struct HarmonicCoefficient {
  BeltramiGrid mu;
  double ring_max = 0;    // max |mu| on cells within 1.5 h of the unit circle
  double global_max = 0;
  cplx argmax;
  double r_b_norm = 0;    // interior B-norm estimate of r
};

/// -(t/2)(1-|z|^2)^2 r(conj z) for r with all poles on the unit circle.
HarmonicCoefficient harmonic_mu_from_rational(const RationalMap& r, cplx t, Index m);

struct CriticalComparison {
  std::vector<CriticalTerm> terms;
  double max_abs_c = 0;
  double kappa = 0;         // Grunsky norm of 1/p(1/z)
  bool kappa_converged = false;
  double b_norm = 0;        // interior B-norm estimate of S_p
  std::vector<std::string> notes;
};

/// Critical-point data of p against its Grunsky norm and B-norm. Never asserts
/// a relation between them; hypothesis violations go to notes.
CriticalComparison compare_critical_data(const Polynomial& p, Index n = 24);

}  // namespace qcw
