#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "cornercut/nets.hpp"
#include "cornercut/points.hpp"
#include "cornercut/transfinite.hpp"
#include "cornercut/weights.hpp"

namespace testsupport {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Random admissible weight pair with slack at least 0.02 in every quantity.
inline cornercut::WeightPair random_weight_pair(Rng& rng, std::size_t max_period = 4) {
  const auto period = static_cast<std::size_t>(
      uniform_int(rng, 1, static_cast<int>(max_period)));
  std::vector<double> alpha(period), beta(period);
  for (std::size_t i = 0; i < period; ++i) {
    alpha[i] = uniform(rng, 0.02, 0.46);
    beta[i] = uniform(rng, alpha[i] + 0.02, 0.97);
  }
  return cornercut::WeightPair(std::move(alpha), std::move(beta));
}

/// Rejection-sample a pair whose contraction factor is below `mu_bound`.
inline cornercut::WeightPair random_certified_pair(Rng& rng, double mu_bound,
                                                   std::size_t max_period = 2) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    cornercut::WeightPair pair = random_weight_pair(rng, max_period);
    if (cornercut::contraction_factor(pair) < mu_bound) return pair;
  }
  return cornercut::WeightPair({0.25}, {0.75});
}

/// Bivariate polynomial of total degree <= 4.
struct Poly4 {
  std::array<std::array<double, 5>, 5> c{};

  double operator()(double s, double t) const {
    double value = 0.0;
    double sp = 1.0;
    for (int i = 0; i <= 4; ++i) {
      double tp = 1.0;
      for (int j = 0; i + j <= 4; ++j) {
        value += c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * sp * tp;
        tp *= t;
      }
      sp *= s;
    }
    return value;
  }
};

inline Poly4 random_poly4(Rng& rng) {
  Poly4 p;
  for (int i = 0; i <= 4; ++i) {
    for (int j = 0; i + j <= 4; ++j) {
      p.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          uniform(rng, -2.0, 2.0);
    }
  }
  return p;
}

/// Exact max of |c0 + c1 x + c2 x^2| over [lo, hi]: endpoints plus the
/// interior vertex.
inline double quad_abs_max(double c0, double c1, double c2, double lo, double hi) {
  double best = std::max(std::abs(c0 + c1 * lo + c2 * lo * lo),
                         std::abs(c0 + c1 * hi + c2 * hi * hi));
  if (c2 != 0.0) {
    const double x = -c1 / (2.0 * c2);
    if (x > lo && x < hi) best = std::max(best, std::abs(c0 + c1 * x + c2 * x * x));
  }
  return best;
}

/// Tensor product p(s) * q(t) of two cubics; its mixed derivative factors as
/// p'(s) * q'(t), so the exact MSDD bound on a rectangle is the product of
/// the two one-dimensional derivative maxima.
struct TensorCubic {
  std::array<double, 4> p{}, q{};

  double eval_p(double s) const { return p[0] + s * (p[1] + s * (p[2] + s * p[3])); }
  double eval_q(double t) const { return q[0] + t * (q[1] + t * (q[2] + t * q[3])); }
  double operator()(double s, double t) const { return eval_p(s) * eval_q(t); }

  double msdd_bound(const cornercut::Rect& r) const {
    const double dp = quad_abs_max(p[1], 2.0 * p[2], 3.0 * p[3], r.a, r.b);
    const double dq = quad_abs_max(q[1], 2.0 * q[2], 3.0 * q[3], r.c, r.d);
    return dp * dq;
  }
};

inline TensorCubic random_tensor_cubic(Rng& rng) {
  TensorCubic f;
  for (int i = 0; i < 4; ++i) {
    f.p[static_cast<std::size_t>(i)] = uniform(rng, -1.5, 1.5);
    f.q[static_cast<std::size_t>(i)] = uniform(rng, -1.5, 1.5);
  }
  return f;
}

/// Independent piecewise Coons evaluator built from the three blending terms
/// (interpolation along s, along t, and the bilinear correction); this is
/// the only place the three-term form is implemented.
inline double boolean_sum_eval(const cornercut::NetOfFunctions& net, double s, double t) {
  const auto& sk = net.grid().s();
  const auto& tk = net.grid().t();
  auto cell = [](const std::vector<double>& knots, double x) {
    std::size_t i = 0;
    while (i + 2 < knots.size() && x >= knots[i + 1]) ++i;
    return i;
  };
  const std::size_t i = cell(sk, s);
  const std::size_t j = cell(tk, t);
  const double ws = (s - sk[i]) / (sk[i + 1] - sk[i]);
  const double wt = (t - tk[j]) / (tk[j + 1] - tk[j]);

  const double interp_s = (1.0 - ws) * net.psi(i)(t) + ws * net.psi(i + 1)(t);
  const double interp_t = (1.0 - wt) * net.phi(j)(s) + wt * net.phi(j + 1)(s);
  const double bilinear =
      (1.0 - ws) * ((1.0 - wt) * net.phi(j)(sk[i]) + wt * net.phi(j + 1)(sk[i])) +
      ws * ((1.0 - wt) * net.phi(j)(sk[i + 1]) + wt * net.phi(j + 1)(sk[i + 1]));
  return interp_s + interp_t - bilinear;
}

/// Random strictly increasing knots in [lo, hi] with `count` entries.
inline std::vector<double> random_knots(Rng& rng, double lo, double hi, int count) {
  std::vector<double> knots(static_cast<std::size_t>(count));
  for (auto& k : knots) k = uniform(rng, lo, hi);
  std::sort(knots.begin(), knots.end());
  knots.front() = lo;
  knots.back() = hi;
  // enforce a minimum gap so cells stay well conditioned
  const double min_gap = (hi - lo) * 1e-3;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    knots[i] = std::max(knots[i], knots[i - 1] + min_gap);
  }
  knots.back() = std::max(knots.back(), hi);
  return knots;
}

}  // namespace testsupport
