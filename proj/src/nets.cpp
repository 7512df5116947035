#include "cornercut/nets.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <utility>

namespace cornercut {

namespace {

void require_increasing(const std::vector<double>& knots, const char* axis) {
  if (knots.size() < 2) {
    throw Error(std::string("grid needs at least two ") + axis + "-knots");
  }
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (!(knots[i] < knots[i + 1])) {
      throw Error(std::string(axis) + "-knots must be strictly increasing");
    }
  }
}

std::size_t locate_axis(const std::vector<double>& knots, double x) {
  auto it = std::upper_bound(knots.begin(), knots.end(), x);
  std::size_t i = (it == knots.begin()) ? 0 : static_cast<std::size_t>(it - knots.begin()) - 1;
  return std::min(i, knots.size() - 2);
}

double max_gap(const std::vector<double>& knots) {
  double g = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) g = std::max(g, knots[i + 1] - knots[i]);
  return g;
}

std::vector<double> refine_knots(const std::vector<double>& knots,
                                 const WeightPair& weights) {
  std::vector<double> out;
  out.reserve(2 * (knots.size() - 1));
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = weights.alpha(static_cast<std::ptrdiff_t>(i));
    const double b = weights.beta(static_cast<std::ptrdiff_t>(i));
    out.push_back((1.0 - a) * knots[i] + a * knots[i + 1]);
    out.push_back((1.0 - b) * knots[i] + b * knots[i + 1]);
  }
  return out;
}

}  // namespace

GridT::GridT(std::vector<double> s_knots, std::vector<double> t_knots)
    : s_(std::move(s_knots)), t_(std::move(t_knots)) {
  require_increasing(s_, "s");
  require_increasing(t_, "t");
}

double GridT::mesh_s() const noexcept { return max_gap(s_); }
double GridT::mesh_t() const noexcept { return max_gap(t_); }

std::pair<std::size_t, std::size_t> GridT::locate(double s, double t) const {
  return {locate_axis(s_, s), locate_axis(t_, t)};
}

GridT make_uniform_grid(double s_lo, double s_hi, std::size_t s_cells, double t_lo,
                        double t_hi, std::size_t t_cells) {
  if (s_cells == 0 || t_cells == 0) throw Error("grid needs at least one cell per direction");
  std::vector<double> s(s_cells + 1), t(t_cells + 1);
  for (std::size_t i = 0; i <= s_cells; ++i) {
    s[i] = s_lo + (s_hi - s_lo) * static_cast<double>(i) / static_cast<double>(s_cells);
  }
  for (std::size_t j = 0; j <= t_cells; ++j) {
    t[j] = t_lo + (t_hi - t_lo) * static_cast<double>(j) / static_cast<double>(t_cells);
  }
  return GridT(std::move(s), std::move(t));
}

NetOfFunctions::NetOfFunctions(GridT grid, std::vector<UFunction> phi,
                               std::vector<UFunction> psi, int level)
    : grid_(std::move(grid)), phi_(std::move(phi)), psi_(std::move(psi)), level_(level) {
  if (phi_.size() != grid_.t().size()) {
    throw LengthMismatchError("need one phi u-function per t-knot");
  }
  if (psi_.size() != grid_.s().size()) {
    throw LengthMismatchError("need one psi u-function per s-knot");
  }
  const double s_lo = grid_.s().front(), s_hi = grid_.s().back();
  const double t_lo = grid_.t().front(), t_hi = grid_.t().back();
  const double s_slack = 1e-9 * (s_hi - s_lo);
  const double t_slack = 1e-9 * (t_hi - t_lo);
  for (const auto& f : phi_) {
    if (!f.valid() || f.lo() > s_lo + s_slack || f.hi() < s_hi - s_slack) {
      throw Error("phi u-functions must cover the grid's s-range");
    }
  }
  for (const auto& f : psi_) {
    if (!f.valid() || f.lo() > t_lo + t_slack || f.hi() < t_hi - t_slack) {
      throw Error("psi u-functions must cover the grid's t-range");
    }
  }
  crossing_values_.assign(grid_.s().size() * grid_.t().size(), 0.0);
  crossing_ready_.assign(crossing_values_.size(), 0);
}

NetOfFunctions::NetOfFunctions(const NetOfFunctions& other)
    : grid_(other.grid_), phi_(other.phi_), psi_(other.psi_), level_(other.level_) {
  crossing_values_.assign(grid_.s().size() * grid_.t().size(), 0.0);
  crossing_ready_.assign(crossing_values_.size(), 0);
}

double NetOfFunctions::crossing(std::size_t i, std::size_t j) const {
  const std::size_t idx = i * grid_.t().size() + j;
  {
    std::lock_guard<std::mutex> lock(crossing_mutex_);
    if (crossing_ready_[idx]) return crossing_values_[idx];
  }
  const double value = phi_.at(j)(grid_.s().at(i));
  std::lock_guard<std::mutex> lock(crossing_mutex_);
  crossing_values_[idx] = value;
  crossing_ready_[idx] = 1;
  return value;
}

NetOfFunctions net_from_function(BivariateFn f, GridT grid, int level) {
  const double s_lo = grid.s().front(), s_hi = grid.s().back();
  const double t_lo = grid.t().front(), t_hi = grid.t().back();
  std::vector<UFunction> phi, psi;
  phi.reserve(grid.t().size());
  psi.reserve(grid.s().size());
  for (double tj : grid.t()) {
    phi.emplace_back([f, tj](double s) { return f(s, tj); }, s_lo, s_hi,
                     Representation::analytic);
  }
  for (double si : grid.s()) {
    psi.emplace_back([f, si](double t) { return f(si, t); }, t_lo, t_hi,
                     Representation::analytic);
  }
  return NetOfFunctions(std::move(grid), std::move(phi), std::move(psi), level);
}

NetOfFunctions net_from_values(GridT grid,
                               const std::vector<std::vector<double>>& values,
                               int level) {
  const std::size_t ns = grid.s().size();
  const std::size_t nt = grid.t().size();
  if (values.size() != ns) {
    throw LengthMismatchError("need one value row per s-knot");
  }
  for (const auto& row : values) {
    if (row.size() != nt) throw LengthMismatchError("need one value per t-knot in each row");
  }
  std::vector<UFunction> phi, psi;
  phi.reserve(nt);
  psi.reserve(ns);
  for (std::size_t j = 0; j < nt; ++j) {
    std::vector<double> line(ns);
    for (std::size_t i = 0; i < ns; ++i) line[i] = values[i][j];
    phi.push_back(piecewise_linear_ufunction(grid.s(), std::move(line)));
  }
  for (std::size_t i = 0; i < ns; ++i) {
    psi.push_back(piecewise_linear_ufunction(grid.t(), values[i]));
  }
  return NetOfFunctions(std::move(grid), std::move(phi), std::move(psi), level);
}

C0Report check_c0(const NetOfFunctions& net, double tol) {
  C0Report report;
  const auto& s = net.grid().s();
  const auto& t = net.grid().t();
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < t.size(); ++j) {
      const double from_phi = net.phi(j)(s[i]);
      const double from_psi = net.psi(i)(t[j]);
      if (std::abs(from_phi - from_psi) > tol) {
        report.mismatches.push_back({i, j, from_phi, from_psi});
      }
    }
  }
  return report;
}

std::uint64_t EvalBudget::limit_from_env() {
  if (const char* env = std::getenv("CORNERCUT_EVAL_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 200'000'000ULL;
}

void EvalBudget::charge() {
  const std::uint64_t now = used_.fetch_add(1, std::memory_order_relaxed) + 1;
  if (now > limit_) {
    throw BudgetExceededError("evaluation budget of " + std::to_string(limit_) +
                              " raw surface evaluations exhausted");
  }
}

std::size_t PiecewiseCoonsSurface::KeyHash::operator()(
    const std::pair<std::uint64_t, std::uint64_t>& k) const {
  std::uint64_t h = k.first * 0x9E3779B97F4A7C15ULL;
  h ^= k.second + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h);
}

PiecewiseCoonsSurface::PiecewiseCoonsSurface(std::shared_ptr<const NetOfFunctions> net,
                                             std::shared_ptr<EvalBudget> budget)
    : net_(std::move(net)), budget_(std::move(budget)) {
  if (!net_) throw Error("surface needs a net");
  if (!budget_) budget_ = std::make_shared<EvalBudget>(EvalBudget::limit_from_env());
}

double PiecewiseCoonsSurface::operator()(double s, double t) const {
  const Rect r = domain();
  if (!r.contains(s, t, 1e-9 * std::max(r.width(), r.height()))) {
    throw OutOfDomainError("surface evaluated at (" + std::to_string(s) + ", " +
                           std::to_string(t) + ") outside its grid window");
  }
  s = std::clamp(s, r.a, r.b);
  t = std::clamp(t, r.c, r.d);
  const std::pair<std::uint64_t, std::uint64_t> key{std::bit_cast<std::uint64_t>(s),
                                                    std::bit_cast<std::uint64_t>(t)};
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  const double value = eval_raw(s, t);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  cache_.emplace(key, value);
  return value;
}

double PiecewiseCoonsSurface::eval_raw(double s, double t) const {
  budget_->charge();
  const auto [i, j] = net_->grid().locate(s, t);
  const auto& sk = net_->grid().s();
  const auto& tk = net_->grid().t();
  const double h1 = sk[i + 1] - sk[i];
  const double h2 = tk[j + 1] - tk[j];
  const double ws = (s - sk[i]) / h1;
  const double wt = (t - tk[j]) / h2;
  PatchCorners c;
  c.p00 = net_->crossing(i, j);
  c.p01 = net_->crossing(i, j + 1);
  c.p10 = net_->crossing(i + 1, j);
  c.p11 = net_->crossing(i + 1, j + 1);
  return (1.0 - ws) * net_->psi(i)(t) + ws * net_->psi(i + 1)(t) +
         (1.0 - wt) * net_->phi(j)(s) + wt * net_->phi(j + 1)(s) -
         ((1.0 - ws) * ((1.0 - wt) * c.p00 + wt * c.p01) +
          ws * ((1.0 - wt) * c.p10 + wt * c.p11));
}

CoonsPatch PiecewiseCoonsSurface::patch(std::size_t i, std::size_t j) const {
  const auto& sk = net_->grid().s();
  const auto& tk = net_->grid().t();
  if (i + 1 >= sk.size() || j + 1 >= tk.size()) throw Error("cell index out of range");
  const double s0 = sk[i], h1 = sk[i + 1] - sk[i];
  const double t0 = tk[j], h2 = tk[j + 1] - tk[j];
  auto net = net_;
  UFunction phi0([net, j, s0](double x) { return net->phi(j)(s0 + x); }, 0.0, h1,
                 net->phi(j).representation());
  UFunction phi1([net, j, s0](double x) { return net->phi(j + 1)(s0 + x); }, 0.0, h1,
                 net->phi(j + 1).representation());
  UFunction psi0([net, i, t0](double x) { return net->psi(i)(t0 + x); }, 0.0, h2,
                 net->psi(i).representation());
  UFunction psi1([net, i, t0](double x) { return net->psi(i + 1)(t0 + x); }, 0.0, h2,
                 net->psi(i + 1).representation());
  return CoonsPatch(std::move(phi0), std::move(phi1), std::move(psi0), std::move(psi1),
                    h1, h2);
}

double surface_eval(const PiecewiseCoonsSurface& surface, double s, double t) {
  return surface(s, t);
}

GridT refine_grid(const GridT& grid, const WeightPair& s_weights,
                  const WeightPair& t_weights) {
  return GridT(refine_knots(grid.s(), s_weights), refine_knots(grid.t(), t_weights));
}

NetOfFunctions restrict_to_grid(std::shared_ptr<const PiecewiseCoonsSurface> surface,
                                const GridT& grid) {
  if (!surface) throw Error("restrict_to_grid needs a surface");
  const Rect dom = surface->domain();
  const Rect sub = grid.bounds();
  if (sub.a < dom.a || sub.b > dom.b || sub.c < dom.c || sub.d > dom.d) {
    throw OutOfDomainError("grid window exceeds the surface domain");
  }
  std::vector<UFunction> phi, psi;
  phi.reserve(grid.t().size());
  psi.reserve(grid.s().size());
  for (double tj : grid.t()) {
    phi.emplace_back([surface, tj](double s) { return (*surface)(s, tj); }, sub.a, sub.b,
                     Representation::surface_trace);
  }
  for (double si : grid.s()) {
    psi.emplace_back([surface, si](double t) { return (*surface)(si, t); }, sub.c, sub.d,
                     Representation::surface_trace);
  }
  return NetOfFunctions(grid, std::move(phi), std::move(psi),
                        surface->net().level() + 1);
}

namespace {

// Piecewise-linear materialization of a net's u-functions: `per_cell` samples
// per grid cell plus the final knot. Grid knots stay exact table entries, so
// crossing compatibility survives the resampling.
NetOfFunctions resample_net(const NetOfFunctions& net, int per_cell) {
  if (per_cell < 2) throw Error("resampling needs at least two points per cell");
  const auto& sk = net.grid().s();
  const auto& tk = net.grid().t();
  auto sample_axis = [per_cell](const std::vector<double>& knots) {
    std::vector<double> xs;
    xs.reserve((knots.size() - 1) * static_cast<std::size_t>(per_cell) + 1);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      for (int l = 0; l < per_cell; ++l) {
        xs.push_back(knots[i] +
                     (knots[i + 1] - knots[i]) * static_cast<double>(l) / per_cell);
      }
    }
    xs.push_back(knots.back());
    return xs;
  };
  const std::vector<double> s_samples = sample_axis(sk);
  const std::vector<double> t_samples = sample_axis(tk);
  std::vector<UFunction> phi, psi;
  phi.reserve(tk.size());
  psi.reserve(sk.size());
  for (std::size_t j = 0; j < tk.size(); ++j) {
    std::vector<double> values;
    values.reserve(s_samples.size());
    for (double x : s_samples) values.push_back(net.phi(j)(x));
    phi.push_back(piecewise_linear_ufunction(s_samples, std::move(values)));
  }
  for (std::size_t i = 0; i < sk.size(); ++i) {
    std::vector<double> values;
    values.reserve(t_samples.size());
    for (double x : t_samples) values.push_back(net.psi(i)(x));
    psi.push_back(piecewise_linear_ufunction(t_samples, std::move(values)));
  }
  return NetOfFunctions(net.grid(), std::move(phi), std::move(psi), net.level());
}

}  // namespace

double net_tail_bound(double bmsdd_constant, double initial_cell_area, double mu_star,
                      int k, bool force) {
  if (bmsdd_constant < 0.0 || initial_cell_area < 0.0) {
    throw Error("tail bound needs nonnegative constant and cell area");
  }
  if (!force && !(mu_star > 0.0 && mu_star < kNetContractionThreshold)) {
    throw NotCertifiedError("net tail bound needs mu* in (0, sqrt(3)/3)");
  }
  return 0.75 * bmsdd_constant * initial_cell_area *
         std::pow(3.0 * mu_star * mu_star, k);
}

NetRun run_nets(const NetOfFunctions& initial, const WeightSchedule& s_schedule,
                const WeightSchedule& t_schedule, int step_count,
                NetRunOptions options) {
  if (step_count < 0) throw Error("step count must be nonnegative");
  NetRun run;
  run.certificate = certify(s_schedule, t_schedule);
  if (!run.certificate.nets_convergent && !options.force) {
    throw NotCertifiedError("net schedule contraction factor " +
                            std::to_string(run.certificate.mu_sup) +
                            " is not < sqrt(3)/3; pass force to refine anyway");
  }
  auto budget = options.budget
                    ? options.budget
                    : std::make_shared<EvalBudget>(EvalBudget::limit_from_env());
  run.resampled = options.resample;
  run.initial_cell_area = initial.grid().mesh_s() * initial.grid().mesh_t();
  if (options.bmsdd_constant) {
    run.bmsdd_constant = *options.bmsdd_constant;
    run.bmsdd_estimated = false;
  } else {
    run.bmsdd_constant = estimate_bmsdd(initial, options.bmsdd_samples_per_interval);
    run.bmsdd_estimated = true;
  }

  run.nets.push_back(std::make_shared<NetOfFunctions>(initial));
  run.surfaces.push_back(std::make_shared<PiecewiseCoonsSurface>(run.nets.back(), budget));
  for (int k = 0; k < step_count; ++k) {
    const auto level = static_cast<std::size_t>(k);
    const GridT refined = refine_grid(run.nets.back()->grid(), s_schedule.at(level),
                                      t_schedule.at(level));
    NetOfFunctions next = restrict_to_grid(run.surfaces.back(), refined);
    run.nets.push_back(std::make_shared<NetOfFunctions>(
        options.resample ? resample_net(next, options.resample_points_per_cell)
                         : std::move(next)));
    run.surfaces.push_back(
        std::make_shared<PiecewiseCoonsSurface>(run.nets.back(), budget));
  }
  if (run.certificate.nets_convergent) {
    for (int k = 0; k <= step_count; ++k) {
      run.tail_bounds.push_back(net_tail_bound(run.bmsdd_constant, run.initial_cell_area,
                                               run.certificate.mu_sup, k));
    }
  }
  return run;
}

double estimate_bmsdd(const NetOfFunctions& net, int samples_per_interval) {
  if (samples_per_interval < 2) {
    throw Error("BMSDD estimation needs at least two samples per interval");
  }
  const auto& sk = net.grid().s();
  const auto& tk = net.grid().t();
  const int n = samples_per_interval;
  double best = 0.0;

  // Family (a): sigma pair = adjacent s-knots, taus inside one t-interval.
  // The max |difference quotient| over samples is attained at an adjacent
  // sample pair, so only those are formed.
  for (std::size_t j = 0; j + 1 < tk.size(); ++j) {
    std::vector<double> taus(n);
    for (int l = 0; l < n; ++l) {
      taus[l] = tk[j] + (tk[j + 1] - tk[j]) * static_cast<double>(l) / (n - 1);
    }
    std::vector<double> prev(n), cur(n);
    for (int l = 0; l < n; ++l) prev[l] = net.psi(0)(taus[l]);
    for (std::size_t i = 1; i < sk.size(); ++i) {
      for (int l = 0; l < n; ++l) cur[l] = net.psi(i)(taus[l]);
      for (int l = 0; l + 1 < n; ++l) {
        const double v = msdd(sk[i - 1], sk[i], taus[l], taus[l + 1], prev[l],
                              cur[l + 1], cur[l], prev[l + 1]);
        best = std::max(best, std::abs(v));
      }
      std::swap(prev, cur);
    }
  }

  // Family (b): tau pair = adjacent t-knots, sigmas inside one s-interval.
  for (std::size_t i = 0; i + 1 < sk.size(); ++i) {
    std::vector<double> sigmas(n);
    for (int l = 0; l < n; ++l) {
      sigmas[l] = sk[i] + (sk[i + 1] - sk[i]) * static_cast<double>(l) / (n - 1);
    }
    std::vector<double> prev(n), cur(n);
    for (int l = 0; l < n; ++l) prev[l] = net.phi(0)(sigmas[l]);
    for (std::size_t j = 1; j < tk.size(); ++j) {
      for (int l = 0; l < n; ++l) cur[l] = net.phi(j)(sigmas[l]);
      for (int l = 0; l + 1 < n; ++l) {
        const double v = msdd(sigmas[l], sigmas[l + 1], tk[j - 1], tk[j], prev[l],
                              cur[l + 1], prev[l + 1], cur[l]);
        best = std::max(best, std::abs(v));
      }
      std::swap(prev, cur);
    }
  }
  return best;
}

double surface_sup_distance(const PiecewiseCoonsSurface& a,
                            const PiecewiseCoonsSurface& b, const Rect& window,
                            int samples_per_side) {
  if (samples_per_side < 2) throw Error("need at least two samples per side");
  double sup = 0.0;
  for (int is = 0; is < samples_per_side; ++is) {
    const double s =
        window.a + window.width() * static_cast<double>(is) / (samples_per_side - 1);
    for (int it = 0; it < samples_per_side; ++it) {
      const double t =
          window.c + window.height() * static_cast<double>(it) / (samples_per_side - 1);
      sup = std::max(sup, std::abs(a(s, t) - b(s, t)));
    }
  }
  return sup;
}

double net_successive_distance(const NetRun& run, int k, int samples_per_side) {
  if (k < 0 || static_cast<std::size_t>(k) + 1 >= run.surfaces.size()) {
    throw Error("level index out of range");
  }
  const Rect window = run.nets.back()->grid().bounds();
  return surface_sup_distance(*run.surfaces[static_cast<std::size_t>(k)],
                              *run.surfaces[static_cast<std::size_t>(k) + 1], window,
                              samples_per_side);
}

}  // namespace cornercut
