#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>

#include "cornercut/config.hpp"
#include "cornercut/nets.hpp"
#include "cornercut/points.hpp"
#include "cornercut/registry.hpp"
#include "cornercut/transfinite.hpp"
#include "cornercut/version.hpp"
#include "cornercut/weights.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace cornercut;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Corner cutting refinement of polylines and nets of functions";
  m.attr("__version__") = kVersion;
  m.attr("NET_CONTRACTION_THRESHOLD") = kNetContractionThreshold;
  m.attr("DEFAULT_MARGIN") = kDefaultMargin;

  // base first: translators registered later take precedence
  auto base = py::register_exception<Error>(m, "CornercutError");
  py::register_exception<NotCertifiedError>(m, "NotCertifiedError", base);
  py::register_exception<OutOfDomainError>(m, "OutOfDomainError", base);
  py::register_exception<BudgetExceededError>(m, "BudgetExceededError", base);
  py::register_exception<CompatibilityError>(m, "CompatibilityError", base);
  py::register_exception<ClassViolationError>(m, "ClassViolationError", base);
  py::register_exception<ConfigError>(m, "ConfigError", base);

  // ---- weights ----
  py::class_<WeightPair>(m, "WeightPair")
      .def(py::init<std::vector<double>, std::vector<double>, double>(), "alpha"_a,
           "beta"_a, "margin"_a = kDefaultMargin)
      .def_property_readonly("alpha", &WeightPair::alphas)
      .def_property_readonly("beta", &WeightPair::betas)
      .def_property_readonly("period", &WeightPair::period)
      .def_property_readonly("class_slack", &WeightPair::class_slack)
      .def("__repr__", [](const WeightPair& p) {
        return "WeightPair(period=" + std::to_string(p.period()) + ")";
      });

  m.def("validate_weight_pair", &validate_weight_pair, "alpha"_a, "beta"_a,
        "margin"_a = kDefaultMargin);
  m.def("contraction_factor", &contraction_factor, "pair"_a);

  py::class_<WeightSchedule>(m, "WeightSchedule")
      .def(py::init<WeightPair>(), "constant"_a)
      .def(py::init<std::vector<WeightPair>>(), "levels"_a)
      .def_property_readonly("is_constant", &WeightSchedule::is_constant)
      .def_property_readonly("level_count", &WeightSchedule::level_count)
      .def("at", &WeightSchedule::at, "level"_a);

  py::class_<Certificate>(m, "Certificate")
      .def_readonly("mu_per_level", &Certificate::mu_per_level)
      .def_readonly("mu_sup", &Certificate::mu_sup)
      .def_readonly("points_convergent", &Certificate::points_convergent)
      .def_readonly("nets_convergent", &Certificate::nets_convergent)
      .def_readonly("margin", &Certificate::margin)
      .def("__repr__", [](const Certificate& c) {
        return "Certificate(mu_sup=" + std::to_string(c.mu_sup) + ", points=" +
               (c.points_convergent ? "true" : "false") + ", nets=" +
               (c.nets_convergent ? "true" : "false") + ")";
      });

  m.def("certify", py::overload_cast<const WeightSchedule&>(&certify), "schedule"_a);
  m.def("certify",
        py::overload_cast<const WeightSchedule&, const WeightSchedule&>(&certify),
        "s_schedule"_a, "t_schedule"_a);

  // ---- points ----
  py::enum_<Topology>(m, "Topology")
      .value("open", Topology::open)
      .value("closed", Topology::closed);

  py::class_<PolylineLevel>(m, "PolylineLevel")
      .def_readonly("level", &PolylineLevel::level)
      .def_readonly("topology", &PolylineLevel::topology)
      .def_readonly("period", &PolylineLevel::period)
      .def_readonly("u", &PolylineLevel::u)
      .def_readonly("points", &PolylineLevel::points)
      .def("__len__", &PolylineLevel::size)
      .def_property_readonly("dim", &PolylineLevel::dim)
      .def_property_readonly("edge_count", &PolylineLevel::edge_count);

  m.def("make_open_polyline", &make_open_polyline, "points"_a,
        "u"_a = std::vector<double>{});
  m.def("make_closed_polyline", &make_closed_polyline, "points"_a,
        "u"_a = std::vector<double>{}, "period"_a = 0.0);
  m.def("mesh_size", &mesh_size, "level"_a);
  m.def("lipschitz_constant", &lipschitz_constant, "level"_a);
  m.def("polyline_eval", &polyline_eval, "level"_a, "x"_a);
  m.def("corner_cut_step", &corner_cut_step, "level"_a, "pair"_a);

  py::class_<PointsRun>(m, "PointsRun")
      .def_readonly("levels", &PointsRun::levels)
      .def_readonly("certificate", &PointsRun::certificate)
      .def_readonly("lipschitz", &PointsRun::lipschitz)
      .def_readonly("initial_mesh", &PointsRun::initial_mesh)
      .def_readonly("tail_bounds", &PointsRun::tail_bounds);

  m.def("run_points", &run_points, "initial"_a, "schedule"_a, "steps"_a,
        "force"_a = false);
  m.def("points_tail_bound", &points_tail_bound, "lipschitz"_a, "initial_mesh"_a,
        "mu"_a, "k"_a);
  m.def("polyline_sup_distance", &polyline_sup_distance, "coarse"_a, "fine"_a,
        "samples_per_interval"_a);
  m.def("successive_sup_distance", &successive_sup_distance, "run"_a, "k"_a,
        "samples_per_interval"_a);

  // ---- transfinite ----
  py::class_<Rect>(m, "Rect")
      .def(py::init<double, double, double, double>(), "a"_a, "b"_a, "c"_a, "d"_a)
      .def_readonly("a", &Rect::a)
      .def_readonly("b", &Rect::b)
      .def_readonly("c", &Rect::c)
      .def_readonly("d", &Rect::d)
      .def_property_readonly("width", &Rect::width)
      .def_property_readonly("height", &Rect::height);

  m.def(
      "linear_interp",
      [](double a, double b, double fa, double fb, double x) {
        return linear_interp(a, b, fa, fb, x);
      },
      "a"_a, "b"_a, "fa"_a, "fb"_a, "x"_a);
  m.def("divided_diff2", &divided_diff2, "a"_a, "b"_a, "x"_a, "fa"_a, "fb"_a, "fx"_a);
  m.def("msdd",
        py::overload_cast<double, double, double, double, double, double, double,
                          double>(&msdd),
        "sigma1"_a, "sigma2"_a, "tau1"_a, "tau2"_a, "f11"_a, "f22"_a, "f21"_a,
        "f12"_a);
  m.def(
      "msdd",
      [](const std::function<double(double, double)>& f, double sigma1, double sigma2,
         double tau1, double tau2) { return msdd(f, sigma1, sigma2, tau1, tau2); },
      "f"_a, "sigma1"_a, "sigma2"_a, "tau1"_a, "tau2"_a);

  py::class_<PatchCorners>(m, "PatchCorners")
      .def(py::init([](double p00, double p01, double p10, double p11) {
             return PatchCorners{p00, p01, p10, p11};
           }),
           "p00"_a, "p01"_a, "p10"_a, "p11"_a)
      .def_readonly("p00", &PatchCorners::p00)
      .def_readonly("p01", &PatchCorners::p01)
      .def_readonly("p10", &PatchCorners::p10)
      .def_readonly("p11", &PatchCorners::p11);

  py::class_<BilinearPatch>(m, "BilinearPatch")
      .def(py::init<PatchCorners, double, double>(), "corners"_a, "h1"_a, "h2"_a)
      .def("__call__", &BilinearPatch::operator(), "s"_a, "t"_a);

  py::enum_<Representation>(m, "Representation")
      .value("analytic", Representation::analytic)
      .value("piecewise_linear", Representation::piecewise_linear)
      .value("surface_trace", Representation::surface_trace);

  py::class_<UFunction>(m, "UFunction")
      .def(py::init([](std::function<double(double)> f, double lo, double hi) {
             return UFunction(std::move(f), lo, hi);
           }),
           "f"_a, "lo"_a, "hi"_a)
      .def("__call__", &UFunction::operator(), "x"_a)
      .def_property_readonly("lo", &UFunction::lo)
      .def_property_readonly("hi", &UFunction::hi)
      .def_property_readonly("representation", &UFunction::representation);

  m.def("piecewise_linear_ufunction", &piecewise_linear_ufunction, "knots"_a,
        "values"_a);

  py::class_<CoonsPatch>(m, "CoonsPatch")
      .def(py::init<UFunction, UFunction, UFunction, UFunction, double, double,
                    double>(),
           "phi0"_a, "phi1"_a, "psi0"_a, "psi1"_a, "h1"_a, "h2"_a,
           "compat_tol"_a = -1.0)
      .def("__call__", &CoonsPatch::operator(), "s"_a, "t"_a)
      .def_property_readonly("corners", &CoonsPatch::corners)
      .def_property_readonly("h1", &CoonsPatch::h1)
      .def_property_readonly("h2", &CoonsPatch::h2);

  m.def("coons_eval", &coons_eval, "patch"_a, "s"_a, "t"_a);
  m.def(
      "boundary_trace_patch",
      [](const std::function<double(double, double)>& f, const Rect& r) {
        return boundary_trace_patch(f, r);
      },
      "f"_a, "rect"_a);
  m.def(
      "coons_error_exact",
      [](const std::function<double(double, double)>& f, const Rect& r, double s,
         double t) { return coons_error_exact(f, r, s, t); },
      "f"_a, "rect"_a, "s"_a, "t"_a);
  m.def("coons_error_bound", &coons_error_bound, "msdd_bound"_a, "rect"_a);
  m.def("linear_interp_error_bound", &linear_interp_error_bound, "lipschitz"_a, "a"_a,
        "b"_a);

  // ---- nets ----
  py::class_<GridT>(m, "GridT")
      .def(py::init<std::vector<double>, std::vector<double>>(), "s_knots"_a,
           "t_knots"_a)
      .def_property_readonly("s", &GridT::s)
      .def_property_readonly("t", &GridT::t)
      .def_property_readonly("cells_s", &GridT::cells_s)
      .def_property_readonly("cells_t", &GridT::cells_t)
      .def_property_readonly("mesh_s", &GridT::mesh_s)
      .def_property_readonly("mesh_t", &GridT::mesh_t)
      .def_property_readonly("bounds", &GridT::bounds)
      .def_property_readonly("origin", &GridT::origin)
      .def("locate", &GridT::locate, "s"_a, "t"_a);

  m.def("make_uniform_grid", &make_uniform_grid, "s_lo"_a, "s_hi"_a, "s_cells"_a,
        "t_lo"_a, "t_hi"_a, "t_cells"_a);

  py::class_<NetOfFunctions, std::shared_ptr<NetOfFunctions>>(m, "NetOfFunctions")
      .def_property_readonly("grid", &NetOfFunctions::grid)
      .def_property_readonly("level", &NetOfFunctions::level)
      .def("phi", &NetOfFunctions::phi, "j"_a)
      .def("psi", &NetOfFunctions::psi, "i"_a)
      .def("crossing", &NetOfFunctions::crossing, "i"_a, "j"_a);

  m.def(
      "net_from_function",
      [](std::function<double(double, double)> f, const GridT& grid, int level) {
        return std::make_shared<NetOfFunctions>(
            net_from_function(std::move(f), grid, level));
      },
      "f"_a, "grid"_a, "level"_a = 0);
  m.def(
      "net_from_values",
      [](const GridT& grid, const std::vector<std::vector<double>>& values,
         int level) {
        return std::make_shared<NetOfFunctions>(net_from_values(grid, values, level));
      },
      "grid"_a, "values"_a, "level"_a = 0);
  m.def(
      "net_from_builtin",
      [](const std::string& name, const GridT& grid) {
        return std::make_shared<NetOfFunctions>(
            net_from_function(builtin_surface(name), grid));
      },
      "name"_a, "grid"_a);
  m.def("builtin_surface_names", &builtin_surface_names);

  py::class_<CrossingMismatch>(m, "CrossingMismatch")
      .def_readonly("i", &CrossingMismatch::i)
      .def_readonly("j", &CrossingMismatch::j)
      .def_readonly("phi_value", &CrossingMismatch::phi_value)
      .def_readonly("psi_value", &CrossingMismatch::psi_value);

  py::class_<C0Report>(m, "C0Report")
      .def_readonly("mismatches", &C0Report::mismatches)
      .def_property_readonly("compatible", &C0Report::compatible);

  m.def("check_c0", &check_c0, "net"_a, "tol"_a);

  py::class_<EvalBudget, std::shared_ptr<EvalBudget>>(m, "EvalBudget")
      .def(py::init<std::uint64_t>(), "limit"_a)
      .def_property_readonly("used", &EvalBudget::used)
      .def_property_readonly("limit", &EvalBudget::limit);

  py::class_<PiecewiseCoonsSurface, std::shared_ptr<PiecewiseCoonsSurface>>(
      m, "PiecewiseCoonsSurface")
      .def(py::init([](std::shared_ptr<NetOfFunctions> net,
                       std::shared_ptr<EvalBudget> budget) {
             return std::make_shared<PiecewiseCoonsSurface>(std::move(net),
                                                            std::move(budget));
           }),
           "net"_a, "budget"_a = nullptr)
      .def("__call__", &PiecewiseCoonsSurface::operator(), "s"_a, "t"_a)
      .def_property_readonly("domain", &PiecewiseCoonsSurface::domain)
      .def("patch", &PiecewiseCoonsSurface::patch, "i"_a, "j"_a);

  m.def("surface_eval", &surface_eval, "surface"_a, "s"_a, "t"_a);
  m.def("refine_grid", &refine_grid, "grid"_a, "s_weights"_a, "t_weights"_a);
  m.def(
      "restrict_to_grid",
      [](std::shared_ptr<PiecewiseCoonsSurface> surface, const GridT& grid) {
        return std::make_shared<NetOfFunctions>(
            restrict_to_grid(std::move(surface), grid));
      },
      "surface"_a, "grid"_a);

  py::class_<NetRun>(m, "NetRun")
      .def_readonly("certificate", &NetRun::certificate)
      .def_readonly("bmsdd_constant", &NetRun::bmsdd_constant)
      .def_readonly("bmsdd_estimated", &NetRun::bmsdd_estimated)
      .def_readonly("initial_cell_area", &NetRun::initial_cell_area)
      .def_readonly("tail_bounds", &NetRun::tail_bounds)
      .def_readonly("resampled", &NetRun::resampled)
      .def_property_readonly(
          "level_count", [](const NetRun& run) { return run.nets.size(); })
      .def(
          "net",
          [](const NetRun& run, std::size_t k) {
            return std::const_pointer_cast<NetOfFunctions>(run.nets.at(k));
          },
          "k"_a)
      .def(
          "surface",
          [](const NetRun& run, std::size_t k) {
            return std::const_pointer_cast<PiecewiseCoonsSurface>(run.surfaces.at(k));
          },
          "k"_a);

  m.def(
      "run_nets",
      [](const NetOfFunctions& initial, const WeightSchedule& s_schedule,
         const WeightSchedule& t_schedule, int steps, bool force, bool resample,
         int resample_points_per_cell, std::optional<double> bmsdd_constant,
         int bmsdd_samples_per_interval, std::shared_ptr<EvalBudget> budget) {
        NetRunOptions options;
        options.force = force;
        options.resample = resample;
        options.resample_points_per_cell = resample_points_per_cell;
        options.bmsdd_constant = bmsdd_constant;
        options.bmsdd_samples_per_interval = bmsdd_samples_per_interval;
        options.budget = std::move(budget);
        return run_nets(initial, s_schedule, t_schedule, steps, options);
      },
      "initial"_a, "s_schedule"_a, "t_schedule"_a, "steps"_a, "force"_a = false,
      "resample"_a = false, "resample_points_per_cell"_a = 16,
      "bmsdd_constant"_a = std::nullopt, "bmsdd_samples_per_interval"_a = 32,
      "budget"_a = nullptr);

  m.def("estimate_bmsdd", &estimate_bmsdd, "net"_a, "samples_per_interval"_a);
  m.def("net_successive_distance", &net_successive_distance, "run"_a, "k"_a,
        "samples_per_side"_a);
  m.def("net_tail_bound", &net_tail_bound, "bmsdd_constant"_a, "initial_cell_area"_a,
        "mu_star"_a, "k"_a, "force"_a = false);
  m.def("surface_sup_distance", &surface_sup_distance, "a"_a, "b"_a, "window"_a,
        "samples_per_side"_a);
}
