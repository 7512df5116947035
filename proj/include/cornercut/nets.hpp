#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cornercut/transfinite.hpp"
#include "cornercut/weights.hpp"

namespace cornercut {

/// Grid of lines: strictly increasing knot sequences in both directions.
/// The grid's lines are { s_i } x R and R x { t_j }; consecutive knots bound
/// the grid cells.
class GridT {
 public:
  GridT(std::vector<double> s_knots, std::vector<double> t_knots);

  const std::vector<double>& s() const noexcept { return s_; }
  const std::vector<double>& t() const noexcept { return t_; }
  std::size_t cells_s() const noexcept { return s_.size() - 1; }
  std::size_t cells_t() const noexcept { return t_.size() - 1; }

  double mesh_s() const noexcept;
  double mesh_t() const noexcept;
  Rect bounds() const noexcept { return Rect(s_.front(), s_.back(), t_.front(), t_.back()); }
  std::pair<double, double> origin() const noexcept { return {s_.front(), t_.front()}; }

  /// Cell indices containing (s, t); knot ties resolve to the cell on the
  /// right, the last knot to the last cell.
  std::pair<std::size_t, std::size_t> locate(double s, double t) const;

 private:
  std::vector<double> s_;
  std::vector<double> t_;
};

/// Uniform grid with `cells` cells per direction spanning the given ranges.
GridT make_uniform_grid(double s_lo, double s_hi, std::size_t s_cells, double t_lo,
                        double t_hi, std::size_t t_cells);

/// A net of u-functions on a grid: one function phi_j(s) along every line
/// t = t_j and one function psi_i(t) along every line s = s_i. A valid net is
/// compatible at the crossings: phi_j(s_i) == psi_i(t_j).
class NetOfFunctions {
 public:
  NetOfFunctions(GridT grid, std::vector<UFunction> phi, std::vector<UFunction> psi,
                 int level = 0);
  NetOfFunctions(const NetOfFunctions& other);
  NetOfFunctions& operator=(const NetOfFunctions&) = delete;

  const GridT& grid() const noexcept { return grid_; }
  int level() const noexcept { return level_; }
  const UFunction& phi(std::size_t j) const { return phi_.at(j); }
  const UFunction& psi(std::size_t i) const { return psi_.at(i); }

  /// Net value at the crossing (s_i, t_j), taken from phi_j and memoized.
  double crossing(std::size_t i, std::size_t j) const;

 private:
  GridT grid_;
  std::vector<UFunction> phi_;
  std::vector<UFunction> psi_;
  int level_ = 0;
  mutable std::vector<double> crossing_values_;
  mutable std::vector<std::uint8_t> crossing_ready_;
  mutable std::mutex crossing_mutex_;
};

/// Net sampling a bivariate function along the grid lines.
NetOfFunctions net_from_function(BivariateFn f, GridT grid, int level = 0);

/// Net with piecewise-linear u-functions through the crossing values
/// values[i][j] = N(s_i, t_j).
NetOfFunctions net_from_values(GridT grid, const std::vector<std::vector<double>>& values,
                               int level = 0);

struct CrossingMismatch {
  std::size_t i = 0, j = 0;
  double phi_value = 0.0, psi_value = 0.0;
};

struct C0Report {
  std::vector<CrossingMismatch> mismatches;
  bool compatible() const noexcept { return mismatches.empty(); }
};

/// List every crossing where |phi_j(s_i) - psi_i(t_j)| > tol.
C0Report check_c0(const NetOfFunctions& net, double tol);

/// Shared counter limiting the raw (uncached) surface evaluations of a run.
class EvalBudget {
 public:
  explicit EvalBudget(std::uint64_t limit) : limit_(limit) {}

  /// Limit from CORNERCUT_EVAL_BUDGET, or a generous default.
  static std::uint64_t limit_from_env();

  void charge();
  std::uint64_t used() const noexcept { return used_.load(std::memory_order_relaxed); }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::atomic<std::uint64_t> used_{0};
  std::uint64_t limit_;
};

/// The piecewise Coons surface of a net: on every grid cell, the Coons patch
/// blending the four bounding u-functions. Evaluations are memoized, so the
/// surface stays cheap when its own grid-line traces feed the next
/// refinement level.
class PiecewiseCoonsSurface {
 public:
  explicit PiecewiseCoonsSurface(std::shared_ptr<const NetOfFunctions> net,
                                 std::shared_ptr<EvalBudget> budget = nullptr);

  double operator()(double s, double t) const;
  const NetOfFunctions& net() const noexcept { return *net_; }
  Rect domain() const noexcept { return net_->grid().bounds(); }
  const std::shared_ptr<EvalBudget>& budget() const noexcept { return budget_; }

  /// The Coons patch of one cell in local coordinates; mainly for
  /// inspection and tests.
  CoonsPatch patch(std::size_t i, std::size_t j) const;

 private:
  double eval_raw(double s, double t) const;

  struct KeyHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const;
  };

  std::shared_ptr<const NetOfFunctions> net_;
  std::shared_ptr<EvalBudget> budget_;
  mutable std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, double, KeyHash>
      cache_;
  mutable std::mutex cache_mutex_;
};

double surface_eval(const PiecewiseCoonsSurface& surface, double s, double t);

/// One knot-refinement step: every grid interval [x_i, x_{i+1}] contributes
/// the two knots (1-a_i) x_i + a_i x_{i+1} and (1-b_i) x_i + b_i x_{i+1},
/// per direction with its own weights. The refined mesh sizes satisfy
/// mesh' <= contraction_factor(weights) * mesh.
GridT refine_grid(const GridT& grid, const WeightPair& s_weights,
                  const WeightPair& t_weights);

/// Net whose u-functions are traces of the surface along the lines of
/// `grid`; continuous by construction, hence C0. The surface must cover the
/// grid's bounding rectangle.
NetOfFunctions restrict_to_grid(std::shared_ptr<const PiecewiseCoonsSurface> surface,
                                const GridT& grid);

struct NetRunOptions {
  bool force = false;
  /// Replace exact surface traces by piecewise-linear resamples with
  /// `resample_points_per_cell` samples per grid cell. Faster, but the run
  /// then reports its levels as approximations.
  bool resample = false;
  int resample_points_per_cell = 16;
  /// Mixed-divided-difference bound of the initial net, when known exactly;
  /// otherwise it is estimated by sampling.
  std::optional<double> bmsdd_constant;
  int bmsdd_samples_per_interval = 32;
  std::shared_ptr<EvalBudget> budget;
};

struct NetRun {
  std::vector<std::shared_ptr<const NetOfFunctions>> nets;            // 0..K
  std::vector<std::shared_ptr<const PiecewiseCoonsSurface>> surfaces; // 0..K
  Certificate certificate;
  double bmsdd_constant = 0.0;
  bool bmsdd_estimated = true;
  double initial_cell_area = 0.0;   // mesh_s(0) * mesh_t(0)
  std::vector<double> tail_bounds;  // empty when not nets-certified
  bool resampled = false;
};

/// Bound (3 L H / 4) * (3 mu*^2)^k on the distance between the level-k
/// surface and every finer one; requires mu* < sqrt(3)/3 unless forced.
double net_tail_bound(double bmsdd_constant, double initial_cell_area, double mu_star,
                      int k, bool force = false);

/// Run `step_count` net refinement steps: refine the grid, then restrict the
/// current surface to it. Requires the combined certificate to be
/// nets-convergent unless forced.
NetRun run_nets(const NetOfFunctions& initial, const WeightSchedule& s_schedule,
                const WeightSchedule& t_schedule, int step_count,
                NetRunOptions options = {});

/// Sampled estimate of the net's mixed-second-divided-difference bound, over
/// the two generating families of configurations: adjacent s-knots against
/// tau pairs inside one t-interval, and symmetrically. These families
/// propagate their bound to every grid configuration, so the sampled max is
/// a lower estimate converging to the net's constant as sampling refines.
double estimate_bmsdd(const NetOfFunctions& net, int samples_per_interval);

/// Max |surface_a - surface_b| over an inclusive n x n sample grid on the
/// window rectangle.
double surface_sup_distance(const PiecewiseCoonsSurface& a,
                            const PiecewiseCoonsSurface& b, const Rect& window,
                            int samples_per_side);

/// Distance between the level-k and level-(k+1) surfaces of a run, sampled
/// on the finest level's bounding rectangle; bounded by
/// 3^(k+1) * L * mesh_s^(k+1) * mesh_t^(k+1) / 4.
double net_successive_distance(const NetRun& run, int k, int samples_per_side);

}  // namespace cornercut
