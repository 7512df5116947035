#pragma once

#include <functional>
#include <vector>

#include "cornercut/errors.hpp"

namespace cornercut {

using BivariateFn = std::function<double(double, double)>;

/// Axis-aligned rectangle [a,b] x [c,d] with positive side lengths.
struct Rect {
  double a = 0.0, b = 1.0;  // s-range
  double c = 0.0, d = 1.0;  // t-range

  Rect() = default;
  Rect(double a_, double b_, double c_, double d_);

  double width() const noexcept { return b - a; }
  double height() const noexcept { return d - c; }
  bool contains(double s, double t, double slack = 0.0) const noexcept;
};

/// Value at x of the linear interpolant through (a, fa), (b, fb),
/// evaluated in barycentric form. x outside [a,b] extrapolates; the optional
/// flag reports when that happened.
double linear_interp(double a, double b, double fa, double fb, double x,
                     bool* extrapolated = nullptr);

/// Second-order divided difference [a,b,x]f from the three values.
/// Nodes must be pairwise distinct. Equals the leading coefficient for
/// quadratics (1 for f = x^2) and vanishes on linear functions.
double divided_diff2(double a, double b, double x, double fa, double fb, double fx);

/// Mixed second divided difference of a bivariate function from its values
/// at the four points (sigma_i, tau_j):
///   (F11 + F22 - F21 - F12) / ((sigma1 - sigma2) * (tau1 - tau2))
/// with Fij = F(sigma_i, tau_j). Discrete analogue of d2F/ds dt.
double msdd(double sigma1, double sigma2, double tau1, double tau2, double f11,
            double f22, double f21, double f12);

/// Convenience overload evaluating F at the four nodes.
double msdd(const BivariateFn& f, double sigma1, double sigma2, double tau1,
            double tau2);

/// Corner values of a patch on [0,h1] x [0,h2]; first index follows s,
/// second follows t (p01 sits at (0, h2)).
struct PatchCorners {
  double p00 = 0.0, p01 = 0.0, p10 = 0.0, p11 = 0.0;
};

/// Tensor-linear interpolant of four corner values on [0,h1] x [0,h2].
struct BilinearPatch {
  PatchCorners corners;
  double h1 = 1.0, h2 = 1.0;

  BilinearPatch(PatchCorners c, double h1_, double h2_);

  /// Domain-checked evaluation; reproduces the corners exactly.
  double operator()(double s, double t) const;
};

double bilinear_blend(const PatchCorners& c, double h1, double h2, double s, double t);

enum class Representation { analytic, piecewise_linear, surface_trace };

/// A continuous univariate function on a closed interval. The admitted
/// representations (analytic closure, piecewise-linear table, trace of a
/// continuous surface) are all evaluable everywhere on the domain.
class UFunction {
 public:
  UFunction() = default;
  UFunction(std::function<double(double)> fn, double lo, double hi,
            Representation repr = Representation::analytic);

  /// Evaluate at x in [lo, hi]; a hair of roundoff slack beyond the ends is
  /// clamped, everything else is rejected.
  double operator()(double x) const;

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  Representation representation() const noexcept { return repr_; }
  bool valid() const noexcept { return static_cast<bool>(fn_); }

 private:
  std::function<double(double)> fn_;
  double lo_ = 0.0, hi_ = 0.0;
  Representation repr_ = Representation::analytic;
};

/// Piecewise-linear function through (knots[i], values[i]); exact at knots.
UFunction piecewise_linear_ufunction(std::vector<double> knots,
                                     std::vector<double> values);

/// Coons patch on [0,h1] x [0,h2] blending two s-boundaries (phi0 at t=0,
/// phi1 at t=h2) and two t-boundaries (psi0 at s=0, psi1 at s=h1).
/// Construction checks corner compatibility phi_i(j*h1) == psi_j(i*h2);
/// a negative tolerance selects 1e-9 times the corner magnitude.
class CoonsPatch {
 public:
  CoonsPatch(UFunction phi0, UFunction phi1, UFunction psi0, UFunction psi1,
             double h1, double h2, double compat_tol = -1.0);

  double h1() const noexcept { return h1_; }
  double h2() const noexcept { return h2_; }
  const PatchCorners& corners() const noexcept { return corners_; }
  const UFunction& phi0() const noexcept { return phi0_; }
  const UFunction& phi1() const noexcept { return phi1_; }
  const UFunction& psi0() const noexcept { return psi0_; }
  const UFunction& psi1() const noexcept { return psi1_; }

  /// Boolean-sum evaluation; matches all four boundary functions exactly.
  double operator()(double s, double t) const;

 private:
  UFunction phi0_, phi1_, psi0_, psi1_;
  double h1_ = 1.0, h2_ = 1.0;
  PatchCorners corners_;
};

double coons_eval(const CoonsPatch& patch, double s, double t);

/// Patch interpolating the restriction of F to the boundary of R,
/// in local coordinates (s-a, t-c).
CoonsPatch boundary_trace_patch(const BivariateFn& f, const Rect& r);

/// Pointwise interpolation error F - (Coons patch of F's boundary traces),
/// evaluated through the four-MSDD error formula. On the boundary the
/// vanishing prefactor makes the value 0 without touching the divided
/// differences (removable singularity).
double coons_error_exact(const BivariateFn& f, const Rect& r, double s, double t);

/// Uniform bound L * (b-a) * (d-c) / 4 on the Coons interpolation error of a
/// function whose mixed second divided differences are bounded by L on R.
double coons_error_bound(double msdd_bound, const Rect& r);

/// Uniform bound (b-a) * L / 2 on the linear interpolation error of an
/// L-Lipschitz function on [a,b].
double linear_interp_error_bound(double lipschitz, double a, double b);

}  // namespace cornercut
