#pragma once

#include <vector>

#include "cornercut/weights.hpp"

namespace cornercut {

enum class Topology { open, closed };

/// One refinement level of a polyline in R^n: strictly increasing parameters
/// u paired with points of equal count. Closed polylines are cyclic with a
/// parameter translation `period` (> u-span), so index m wraps to index 0 at
/// parameter u[0] + period.
struct PolylineLevel {
  int level = 0;
  Topology topology = Topology::open;
  double period = 0.0;  // closed only
  std::vector<double> u;
  std::vector<std::vector<double>> points;

  std::size_t size() const noexcept { return u.size(); }
  std::size_t dim() const noexcept { return points.empty() ? 0 : points.front().size(); }
  std::size_t edge_count() const noexcept {
    return topology == Topology::closed ? u.size() : u.size() - 1;
  }
  double domain_lo() const noexcept { return u.front(); }
  double domain_hi() const noexcept {
    return topology == Topology::closed ? u.front() + period : u.back();
  }
};

/// Build and validate an open polyline; empty `u` defaults to 0,1,2,...
PolylineLevel make_open_polyline(std::vector<std::vector<double>> points,
                                 std::vector<double> u = {});

/// Build and validate a closed polyline; empty `u` defaults to 0,1,...,m-1
/// with period m. An explicit `u` requires an explicit period > u-span.
PolylineLevel make_closed_polyline(std::vector<std::vector<double>> points,
                                   std::vector<double> u = {}, double period = 0.0);

/// Largest consecutive parameter gap (the wrap gap included when closed).
double mesh_size(const PolylineLevel& level);

/// Smallest Lipschitz constant of the piecewise-linear interpolant:
/// max_i ||P_{i+1} - P_i||_inf / (u_{i+1} - u_i). Gluing the per-segment
/// bounds across breakpoints is lossless, so this is the global constant.
double lipschitz_constant(const PolylineLevel& level);

/// Piecewise-linear interpolant through (u_i, P_i), exact at knots.
/// Open polylines reject parameters outside [u_front, u_back]; closed ones
/// wrap any real parameter by the period.
std::vector<double> polyline_eval(const PolylineLevel& level, double x);

/// One refinement step: every edge (P_i, P_{i+1}) is replaced by the two
/// interior points (1-a_i) P_i + a_i P_{i+1} and (1-b_i) P_i + b_i P_{i+1},
/// and the parameters are refined by the same rule, which keeps every new
/// point on the current polyline. Weights index edges modulo the pair's
/// period; closed polylines additionally require the period to divide the
/// edge count so that the refined polygon closes up.
PolylineLevel corner_cut_step(const PolylineLevel& level, const WeightPair& pair);

/// A full refinement run with its convergence data.
struct PointsRun {
  std::vector<PolylineLevel> levels;  // 0..K
  Certificate certificate;
  double lipschitz = 0.0;     // of level 0; preserved under refinement
  double initial_mesh = 0.0;  // d of level 0
  std::vector<double> tail_bounds;  // distance from level k to any later level
};

/// Bound L * d0 * mu^(k+1) / (2 (1 - mu)) on the distance between the level-k
/// interpolant and every finer one (requires mu < 1).
double points_tail_bound(double lipschitz, double initial_mesh, double mu, int k);

/// Run `step_count` refinement steps. The schedule must certify
/// points-convergent unless `force` is set.
PointsRun run_points(const PolylineLevel& initial, const WeightSchedule& schedule,
                     int step_count, bool force = false);

/// Max infinity-norm gap between the interpolants of two levels over their
/// common parameter domain, sampled on the union of both levels' breakpoints
/// plus `samples_per_interval` uniform samples per interval of the finer
/// level (endpoints included). Breakpoint inclusion makes the sampled max
/// exact for these piecewise-linear functions.
double polyline_sup_distance(const PolylineLevel& coarse, const PolylineLevel& fine,
                             int samples_per_interval);

/// Distance between consecutive levels k and k+1 of a run; bounded by
/// L * d^(k+1) / 2.
double successive_sup_distance(const PointsRun& run, int k, int samples_per_interval);

}  // namespace cornercut
