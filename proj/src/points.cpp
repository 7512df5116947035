#include "cornercut/points.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <utility>

#include "cornercut/transfinite.hpp"

namespace cornercut {

namespace {

void validate_level(const PolylineLevel& level) {
  const std::size_t m = level.points.size();
  if (level.u.size() != m) {
    throw LengthMismatchError("parameter and point counts differ");
  }
  const std::size_t min_count = level.topology == Topology::closed ? 3 : 2;
  if (m < min_count) {
    throw Error("polyline needs at least " + std::to_string(min_count) + " points");
  }
  const std::size_t dim = level.points.front().size();
  if (dim == 0) throw Error("points must have at least one coordinate");
  for (const auto& p : level.points) {
    if (p.size() != dim) throw LengthMismatchError("points have mixed dimensions");
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (!(level.u[i] < level.u[i + 1])) {
      throw Error("parameters must be strictly increasing");
    }
  }
  if (level.topology == Topology::closed) {
    if (!(level.period > level.u.back() - level.u.front())) {
      throw Error("closed polyline period must exceed the parameter span");
    }
  }
}

std::vector<double> default_params(std::size_t m) {
  std::vector<double> u(m);
  for (std::size_t i = 0; i < m; ++i) u[i] = static_cast<double>(i);
  return u;
}

double inf_norm_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) m = std::max(m, std::abs(a[c] - b[c]));
  return m;
}

std::vector<double> blend(const std::vector<double>& p, const std::vector<double>& q,
                          double w) {
  std::vector<double> out(p.size());
  for (std::size_t c = 0; c < p.size(); ++c) out[c] = (1.0 - w) * p[c] + w * q[c];
  return out;
}

}  // namespace

PolylineLevel make_open_polyline(std::vector<std::vector<double>> points,
                                 std::vector<double> u) {
  PolylineLevel level;
  level.topology = Topology::open;
  if (u.empty()) u = default_params(points.size());
  level.u = std::move(u);
  level.points = std::move(points);
  validate_level(level);
  return level;
}

PolylineLevel make_closed_polyline(std::vector<std::vector<double>> points,
                                   std::vector<double> u, double period) {
  PolylineLevel level;
  level.topology = Topology::closed;
  if (u.empty()) {
    u = default_params(points.size());
    if (period == 0.0) period = static_cast<double>(points.size());
  } else if (period == 0.0) {
    throw Error("closed polyline with explicit parameters needs an explicit period");
  }
  level.period = period;
  level.u = std::move(u);
  level.points = std::move(points);
  validate_level(level);
  return level;
}

double mesh_size(const PolylineLevel& level) {
  double d = 0.0;
  for (std::size_t i = 0; i + 1 < level.u.size(); ++i) {
    d = std::max(d, level.u[i + 1] - level.u[i]);
  }
  if (level.topology == Topology::closed) {
    d = std::max(d, level.u.front() + level.period - level.u.back());
  }
  return d;
}

double lipschitz_constant(const PolylineLevel& level) {
  const std::size_t m = level.size();
  double lip = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    lip = std::max(lip, inf_norm_diff(level.points[i + 1], level.points[i]) /
                            (level.u[i + 1] - level.u[i]));
  }
  if (level.topology == Topology::closed) {
    const double wrap_gap = level.u.front() + level.period - level.u.back();
    lip = std::max(lip, inf_norm_diff(level.points.front(), level.points.back()) /
                            wrap_gap);
  }
  return lip;
}

std::vector<double> polyline_eval(const PolylineLevel& level, double x) {
  const std::size_t m = level.size();
  if (level.topology == Topology::closed) {
    const double lo = level.u.front();
    double r = std::fmod(x - lo, level.period);
    if (r < 0.0) r += level.period;
    x = lo + r;
    // x in [u_front, u_front + period); the wrap segment runs from u_back
    // to u_front + period and ends at the first point.
    if (x >= level.u.back()) {
      const double a = level.u.back();
      const double b = level.u.front() + level.period;
      if (x == a) return level.points.back();
      std::vector<double> out(level.dim());
      for (std::size_t c = 0; c < out.size(); ++c) {
        out[c] = linear_interp(a, b, level.points.back()[c], level.points.front()[c], x);
      }
      return out;
    }
  } else {
    if (x < level.u.front() || x > level.u.back()) {
      throw OutOfDomainError("parameter " + std::to_string(x) +
                             " outside the polyline domain");
    }
  }
  auto it = std::upper_bound(level.u.begin(), level.u.end(), x);
  std::size_t i = (it == level.u.begin()) ? 0 : static_cast<std::size_t>(it - level.u.begin()) - 1;
  i = std::min(i, m - 2);
  if (x == level.u[i]) return level.points[i];
  if (x == level.u[i + 1]) return level.points[i + 1];
  std::vector<double> out(level.dim());
  for (std::size_t c = 0; c < out.size(); ++c) {
    out[c] = linear_interp(level.u[i], level.u[i + 1], level.points[i][c],
                           level.points[i + 1][c], x);
  }
  return out;
}

PolylineLevel corner_cut_step(const PolylineLevel& level, const WeightPair& pair) {
  validate_level(level);
  const std::size_t m = level.size();
  const std::size_t edges = level.edge_count();
  if (level.topology == Topology::closed && edges % pair.period() != 0) {
    throw PeriodMismatchError("closed polyline with " + std::to_string(edges) +
                              " edges cannot use a weight period of " +
                              std::to_string(pair.period()));
  }
  PolylineLevel next;
  next.level = level.level + 1;
  next.topology = level.topology;
  next.period = level.period;
  next.u.reserve(2 * edges);
  next.points.reserve(2 * edges);
  for (std::size_t i = 0; i < edges; ++i) {
    const std::size_t j = (i + 1) % m;  // only differs from i+1 on the wrap edge
    const double ui = level.u[i];
    const double uj = (j == 0) ? level.u.front() + level.period : level.u[j];
    const double a = pair.alpha(static_cast<std::ptrdiff_t>(i));
    const double b = pair.beta(static_cast<std::ptrdiff_t>(i));
    next.u.push_back((1.0 - a) * ui + a * uj);
    next.u.push_back((1.0 - b) * ui + b * uj);
    next.points.push_back(blend(level.points[i], level.points[j], a));
    next.points.push_back(blend(level.points[i], level.points[j], b));
  }
  validate_level(next);
  return next;
}

double points_tail_bound(double lipschitz, double initial_mesh, double mu, int k) {
  if (!(mu > 0.0) || !(mu < 1.0)) {
    throw Error("tail bound needs a contraction factor in (0, 1)");
  }
  return lipschitz * initial_mesh * std::pow(mu, k + 1) / (2.0 * (1.0 - mu));
}

PointsRun run_points(const PolylineLevel& initial, const WeightSchedule& schedule,
                     int step_count, bool force) {
  if (step_count < 0) throw Error("step count must be nonnegative");
  validate_level(initial);
  PointsRun run;
  run.certificate = certify(schedule);
  if (!run.certificate.points_convergent && !force) {
    throw NotCertifiedError(
        "schedule contraction factor " + std::to_string(run.certificate.mu_sup) +
        " is not < 1; pass force to refine anyway");
  }
  run.lipschitz = lipschitz_constant(initial);
  run.initial_mesh = mesh_size(initial);
  run.levels.reserve(static_cast<std::size_t>(step_count) + 1);
  run.levels.push_back(initial);
  run.levels.front().level = 0;
  for (int k = 0; k < step_count; ++k) {
    run.levels.push_back(
        corner_cut_step(run.levels.back(), schedule.at(static_cast<std::size_t>(k))));
  }
  if (run.certificate.points_convergent) {
    for (int k = 0; k <= step_count; ++k) {
      run.tail_bounds.push_back(
          points_tail_bound(run.lipschitz, run.initial_mesh, run.certificate.mu_sup, k));
    }
  }
  return run;
}

double polyline_sup_distance(const PolylineLevel& coarse, const PolylineLevel& fine,
                             int samples_per_interval) {
  if (samples_per_interval < 2) {
    throw Error("need at least two samples per interval");
  }
  if (coarse.topology != fine.topology) {
    throw Error("cannot compare polylines of different topology");
  }
  std::set<double> params;
  if (coarse.topology == Topology::closed) {
    if (std::abs(coarse.period - fine.period) >
        1e-12 * std::max(1.0, std::abs(fine.period))) {
      throw Error("cannot compare closed polylines of different period");
    }
    const double lo = fine.u.front();
    const double period = fine.period;
    auto wrap = [lo, period](double x) {
      double r = std::fmod(x - lo, period);
      if (r < 0.0) r += period;
      return lo + r;
    };
    for (double x : coarse.u) params.insert(wrap(x));
    const std::size_t m = fine.size();
    for (std::size_t i = 0; i < m; ++i) {
      const double a = fine.u[i];
      const double b = (i + 1 < m) ? fine.u[i + 1] : fine.u.front() + period;
      for (int s = 0; s < samples_per_interval; ++s) {
        const double x =
            a + (b - a) * static_cast<double>(s) / (samples_per_interval - 1);
        params.insert(wrap(x));
      }
    }
  } else {
    const double lo = std::max(coarse.domain_lo(), fine.domain_lo());
    const double hi = std::min(coarse.domain_hi(), fine.domain_hi());
    if (!(lo < hi)) throw Error("polyline domains do not overlap");
    for (double x : coarse.u) {
      if (x >= lo && x <= hi) params.insert(x);
    }
    for (std::size_t i = 0; i + 1 < fine.size(); ++i) {
      const double a = std::max(fine.u[i], lo);
      const double b = std::min(fine.u[i + 1], hi);
      if (!(a <= b)) continue;
      for (int s = 0; s < samples_per_interval; ++s) {
        params.insert(a + (b - a) * static_cast<double>(s) / (samples_per_interval - 1));
      }
    }
  }
  double sup = 0.0;
  for (double x : params) {
    sup = std::max(sup, inf_norm_diff(polyline_eval(coarse, x), polyline_eval(fine, x)));
  }
  return sup;
}

double successive_sup_distance(const PointsRun& run, int k, int samples_per_interval) {
  if (k < 0 || static_cast<std::size_t>(k) + 1 >= run.levels.size()) {
    throw Error("level index out of range");
  }
  return polyline_sup_distance(run.levels[static_cast<std::size_t>(k)],
                               run.levels[static_cast<std::size_t>(k) + 1],
                               samples_per_interval);
}

}  // namespace cornercut
