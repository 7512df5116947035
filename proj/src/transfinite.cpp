#include "cornercut/transfinite.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>

namespace cornercut {

Rect::Rect(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
  if (!(a < b) || !(c < d)) {
    throw Error("rectangle needs a < b and c < d");
  }
}

bool Rect::contains(double s, double t, double slack) const noexcept {
  return s >= a - slack && s <= b + slack && t >= c - slack && t <= d + slack;
}

double linear_interp(double a, double b, double fa, double fb, double x,
                     bool* extrapolated) {
  if (!(a < b)) {
    throw Error("linear_interp needs a < b");
  }
  if (extrapolated) *extrapolated = (x < a || x > b);
  if (x == a) return fa;
  if (x == b) return fb;
  return ((x - a) * fb + (b - x) * fa) / (b - a);
}

double divided_diff2(double a, double b, double x, double fa, double fb, double fx) {
  if (a == b || a == x || b == x) {
    throw Error("divided_diff2 needs pairwise distinct nodes");
  }
  return ((fb - fx) / (b - x) - (fx - fa) / (x - a)) / (b - a);
}

double msdd(double sigma1, double sigma2, double tau1, double tau2, double f11,
            double f22, double f21, double f12) {
  if (sigma1 == sigma2) throw Error("msdd needs distinct sigma nodes");
  if (tau1 == tau2) throw Error("msdd needs distinct tau nodes");
  return (f11 + f22 - f21 - f12) / ((sigma1 - sigma2) * (tau1 - tau2));
}

double msdd(const BivariateFn& f, double sigma1, double sigma2, double tau1,
            double tau2) {
  return msdd(sigma1, sigma2, tau1, tau2, f(sigma1, tau1), f(sigma2, tau2),
              f(sigma2, tau1), f(sigma1, tau2));
}

BilinearPatch::BilinearPatch(PatchCorners c, double h1_, double h2_)
    : corners(c), h1(h1_), h2(h2_) {
  if (!(h1 > 0.0) || !(h2 > 0.0)) {
    throw Error("bilinear patch needs positive side lengths");
  }
}

double bilinear_blend(const PatchCorners& c, double h1, double h2, double s, double t) {
  const double ws = s / h1;
  const double wt = t / h2;
  return (1.0 - ws) * ((1.0 - wt) * c.p00 + wt * c.p01) +
         ws * ((1.0 - wt) * c.p10 + wt * c.p11);
}

double BilinearPatch::operator()(double s, double t) const {
  if (s < 0.0 || s > h1 || t < 0.0 || t > h2) {
    throw OutOfDomainError("bilinear patch evaluated outside [0,h1] x [0,h2]");
  }
  return bilinear_blend(corners, h1, h2, s, t);
}

UFunction::UFunction(std::function<double(double)> fn, double lo, double hi,
                     Representation repr)
    : fn_(std::move(fn)), lo_(lo), hi_(hi), repr_(repr) {
  if (!fn_) throw Error("UFunction needs a callable");
  if (!(lo_ < hi_)) throw Error("UFunction needs a nonempty domain");
}

double UFunction::operator()(double x) const {
  // Local patch coordinates arrive with roundoff; tolerate a sliver past the
  // ends and clamp it back onto the domain.
  const double slack = 1e-9 * (hi_ - lo_);
  if (x < lo_ - slack || x > hi_ + slack) {
    throw OutOfDomainError("u-function evaluated at " + std::to_string(x) +
                           " outside [" + std::to_string(lo_) + ", " +
                           std::to_string(hi_) + "]");
  }
  return fn_(std::clamp(x, lo_, hi_));
}

UFunction piecewise_linear_ufunction(std::vector<double> knots,
                                     std::vector<double> values) {
  if (knots.size() != values.size()) {
    throw LengthMismatchError("piecewise-linear table: knot/value count mismatch");
  }
  if (knots.size() < 2) {
    throw Error("piecewise-linear table needs at least two knots");
  }
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (!(knots[i] < knots[i + 1])) {
      throw Error("piecewise-linear knots must be strictly increasing");
    }
  }
  const double lo = knots.front();
  const double hi = knots.back();
  auto table = std::make_shared<std::pair<std::vector<double>, std::vector<double>>>(
      std::move(knots), std::move(values));
  auto eval = [table](double x) {
    const auto& u = table->first;
    const auto& v = table->second;
    auto it = std::upper_bound(u.begin(), u.end(), x);
    std::size_t i = (it == u.begin()) ? 0 : static_cast<std::size_t>(it - u.begin()) - 1;
    i = std::min(i, u.size() - 2);
    if (x == u[i]) return v[i];
    if (x == u[i + 1]) return v[i + 1];
    return linear_interp(u[i], u[i + 1], v[i], v[i + 1], x);
  };
  return UFunction(std::move(eval), lo, hi, Representation::piecewise_linear);
}

CoonsPatch::CoonsPatch(UFunction phi0, UFunction phi1, UFunction psi0, UFunction psi1,
                       double h1, double h2, double compat_tol)
    : phi0_(std::move(phi0)),
      phi1_(std::move(phi1)),
      psi0_(std::move(psi0)),
      psi1_(std::move(psi1)),
      h1_(h1),
      h2_(h2) {
  if (!(h1_ > 0.0) || !(h2_ > 0.0)) {
    throw Error("Coons patch needs positive side lengths");
  }
  corners_.p00 = phi0_(0.0);
  corners_.p10 = phi0_(h1_);
  corners_.p01 = phi1_(0.0);
  corners_.p11 = phi1_(h1_);
  const double from_psi[4] = {psi0_(0.0), psi1_(0.0), psi0_(h2_), psi1_(h2_)};
  const double from_phi[4] = {corners_.p00, corners_.p10, corners_.p01, corners_.p11};
  double scale = 1.0;
  for (double v : from_phi) scale = std::max(scale, std::abs(v));
  const double tol = compat_tol >= 0.0 ? compat_tol : 1e-9 * scale;
  static const char* names[4] = {"(0,0)", "(h1,0)", "(0,h2)", "(h1,h2)"};
  for (int k = 0; k < 4; ++k) {
    if (std::abs(from_phi[k] - from_psi[k]) > tol) {
      throw CompatibilityError("Coons patch corner " + std::string(names[k]) +
                               " mismatch: phi gives " + std::to_string(from_phi[k]) +
                               ", psi gives " + std::to_string(from_psi[k]));
    }
  }
}

double CoonsPatch::operator()(double s, double t) const {
  const double slack1 = 1e-9 * h1_;
  const double slack2 = 1e-9 * h2_;
  if (s < -slack1 || s > h1_ + slack1 || t < -slack2 || t > h2_ + slack2) {
    throw OutOfDomainError("Coons patch evaluated outside [0,h1] x [0,h2]");
  }
  s = std::clamp(s, 0.0, h1_);
  t = std::clamp(t, 0.0, h2_);
  const double ws = s / h1_;
  const double wt = t / h2_;
  return (1.0 - ws) * psi0_(t) + ws * psi1_(t) + (1.0 - wt) * phi0_(s) +
         wt * phi1_(s) - bilinear_blend(corners_, h1_, h2_, s, t);
}

double coons_eval(const CoonsPatch& patch, double s, double t) { return patch(s, t); }

CoonsPatch boundary_trace_patch(const BivariateFn& f, const Rect& r) {
  const double h1 = r.width();
  const double h2 = r.height();
  const double a = r.a, b = r.b, c = r.c, d = r.d;
  auto phi0 = UFunction([f, a, c](double s) { return f(a + s, c); }, 0.0, h1);
  auto phi1 = UFunction([f, a, d](double s) { return f(a + s, d); }, 0.0, h1);
  auto psi0 = UFunction([f, a, c](double t) { return f(a, c + t); }, 0.0, h2);
  auto psi1 = UFunction([f, b, c](double t) { return f(b, c + t); }, 0.0, h2);
  return CoonsPatch(std::move(phi0), std::move(phi1), std::move(psi0), std::move(psi1),
                    h1, h2);
}

double coons_error_exact(const BivariateFn& f, const Rect& r, double s, double t) {
  if (!r.contains(s, t)) {
    throw OutOfDomainError("coons_error_exact evaluated outside the rectangle");
  }
  const double a = r.a, b = r.b, c = r.c, d = r.d;
  if (s == a || s == b || t == c || t == d) return 0.0;
  const double prefactor = (s - a) * (s - b) * (t - c) * (t - d) / ((b - a) * (d - c));
  const double sum = msdd(f, b, s, d, t) - msdd(f, s, a, d, t) + msdd(f, s, a, t, c) -
                     msdd(f, b, s, t, c);
  return prefactor * sum;
}

double coons_error_bound(double msdd_bound, const Rect& r) {
  if (msdd_bound < 0.0) throw Error("MSDD bound must be nonnegative");
  return msdd_bound * r.width() * r.height() / 4.0;
}

double linear_interp_error_bound(double lipschitz, double a, double b) {
  if (!(a < b)) throw Error("interval needs a < b");
  if (lipschitz < 0.0) throw Error("Lipschitz constant must be nonnegative");
  return (b - a) * lipschitz / 2.0;
}

}  // namespace cornercut
