#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wzlab/brownian.hpp"
#include "wzlab/config.hpp"
#include "wzlab/experiments.hpp"
#include "wzlab/grid_function.hpp"
#include "wzlab/kernel.hpp"
#include "wzlab/rate.hpp"
#include "wzlab/sde.hpp"
#include "wzlab/time_grid.hpp"
#include "wzlab/wick.hpp"

namespace py = pybind11;
using namespace wzlab;

namespace {

std::vector<double> span_to_vector(std::span<const double> s) {
    return std::vector<double>(s.begin(), s.end());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Wong-Zakai approximation lab: grids, kernels, Wick calculus, SDE solvers";

    py::register_exception<NotExactlyComputable>(m, "NotExactlyComputableError");
    py::register_exception<NumericFailure>(m, "NumericFailureError");
    py::register_exception<ConfigError>(m, "ConfigurationError");

    py::class_<TimeGrid>(m, "TimeGrid")
        .def(py::init<double, std::size_t>(), py::arg("horizon"), py::arg("n_steps"))
        .def_property_readonly("horizon", &TimeGrid::horizon)
        .def_property_readonly("n_steps", &TimeGrid::n_steps)
        .def_property_readonly("dt", &TimeGrid::dt)
        .def("node", &TimeGrid::node)
        .def("__eq__", [](const TimeGrid& a, const TimeGrid& b) { return a == b; })
        .def("__repr__", [](const TimeGrid& g) {
            return "TimeGrid(horizon=" + std::to_string(g.horizon()) +
                   ", n_steps=" + std::to_string(g.n_steps()) + ")";
        });
    m.def("make_grid", &make_grid, py::arg("horizon"), py::arg("n_steps"));

    py::class_<GridFunction>(m, "GridFunction")
        .def(py::init<TimeGrid, std::vector<double>>(), py::arg("grid"), py::arg("cell_values"))
        .def_static("zero", &GridFunction::zero)
        .def_static("constant", &GridFunction::constant)
        .def_static("indicator", &GridFunction::indicator, py::arg("grid"), py::arg("node_k"))
        .def_static("sample", &GridFunction::sample, py::arg("grid"), py::arg("f"))
        .def_property_readonly("grid", &GridFunction::grid)
        .def("cells", [](const GridFunction& f) { return span_to_vector(f.cells()); })
        .def("l2_norm", &GridFunction::l2_norm)
        .def("l2_norm_sq", &GridFunction::l2_norm_sq)
        .def("__len__", &GridFunction::size)
        .def("__getitem__",
             [](const GridFunction& f, std::size_t i) {
                 if (i >= f.size()) throw py::index_error();
                 return f[i];
             })
        .def("__add__", [](const GridFunction& a, const GridFunction& b) { return a + b; })
        .def("__sub__", [](const GridFunction& a, const GridFunction& b) { return a - b; })
        .def("__mul__", [](const GridFunction& a, double s) { return a * s; })
        .def("__rmul__", [](const GridFunction& a, double s) { return a * s; })
        .def("__neg__", [](const GridFunction& a) { return -a; });
    m.def("inner_product", &inner_product, py::arg("f"), py::arg("g"));

    py::class_<BrownianPath>(m, "BrownianPath")
        .def_property_readonly("grid", &BrownianPath::grid)
        .def_property_readonly("seed", &BrownianPath::seed)
        .def_property_readonly("sample_index", &BrownianPath::sample_index)
        .def("increments", [](const BrownianPath& p) { return span_to_vector(p.increments()); })
        .def("node_values", [](const BrownianPath& p) { return span_to_vector(p.node_values()); })
        .def("value_at_node", &BrownianPath::value_at_node);
    m.def("sample_brownian", &sample_brownian, py::arg("grid"), py::arg("seed"),
          py::arg("sample_index"));
    m.def("ito_integral", &ito_integral, py::arg("f"), py::arg("path"));
    m.def("shift_path", &shift_path, py::arg("path"), py::arg("g"));

    py::enum_<KernelFamily>(m, "KernelFamily")
        .value("Polygonal", KernelFamily::Polygonal)
        .value("Mollifier", KernelFamily::Mollifier);

    py::class_<Kernel>(m, "Kernel")
        .def_static("polygonal", &Kernel::polygonal, py::arg("grid"), py::arg("mesh"))
        .def_static("mollifier", &Kernel::mollifier, py::arg("grid"), py::arg("epsilon"))
        .def_property_readonly("family", &Kernel::family)
        .def_property_readonly("epsilon", &Kernel::epsilon)
        .def_property_readonly("grid", &Kernel::grid)
        .def("slice", &Kernel::slice, py::arg("k"))
        .def("derivative_slice", &Kernel::derivative_slice, py::arg("k"))
        .def("norm_sq", &Kernel::norm_sq, py::arg("k"))
        .def("node_indicator_distance", &Kernel::node_indicator_distance, py::arg("k"))
        .def("norm_sq_rate", &Kernel::norm_sq_rate, py::arg("k"))
        .def("delta_distance", &Kernel::delta_distance)
        .def("sup_slice_norm", &Kernel::sup_slice_norm);

    py::class_<SmoothedPath>(m, "SmoothedPath")
        .def_readonly("values", &SmoothedPath::values)
        .def_readonly("node_derivs", &SmoothedPath::node_derivs);
    m.def("smooth_path", &smooth_path, py::arg("kernel"), py::arg("path"));

    py::class_<ExponentialVector>(m, "ExponentialVector")
        .def_static("exponential", &ExponentialVector::exponential, py::arg("f"),
                    py::arg("coeff") = 1.0)
        .def_static("constant", &ExponentialVector::constant, py::arg("grid"), py::arg("c"))
        .def("evaluate", &ExponentialVector::evaluate, py::arg("path"))
        .def("mean", &ExponentialVector::mean)
        .def("n_terms", [](const ExponentialVector& a) { return a.terms().size(); })
        .def("__add__",
             [](const ExponentialVector& a, const ExponentialVector& b) { return a + b; })
        .def("__sub__",
             [](const ExponentialVector& a, const ExponentialVector& b) { return a - b; })
        .def("__mul__", [](const ExponentialVector& a, double s) { return a * s; })
        .def("__rmul__", [](const ExponentialVector& a, double s) { return a * s; });
    m.def("wick_product", &wick_product, py::arg("a"), py::arg("b"));
    m.def("translate", &translate, py::arg("a"), py::arg("g"));
    m.def("gamma_contract", &gamma_contract, py::arg("a"));
    m.def("malliavin_directional", &malliavin_directional, py::arg("a"), py::arg("u"));
    m.def("approx_equal", &approx_equal, py::arg("a"), py::arg("b"), py::arg("rel_tol") = 1e-12);

    py::enum_<ExponentialKind>(m, "ExponentialKind")
        .value("PlainExp", ExponentialKind::PlainExp)
        .value("StochExp", ExponentialKind::StochExp);
    m.def("lp_norm_exact",
          [](const ExponentialVector& a, double p) { return lp_norm_exact(a, p); }, py::arg("a"),
          py::arg("p"));
    m.def("l2_distance_exact", &l2_distance_exact, py::arg("f"), py::arg("g"), py::arg("kind"));
    m.def("l2_distance_inverse_exact", &l2_distance_inverse_exact, py::arg("f"), py::arg("g"));

    py::enum_<DriftFamily>(m, "DriftFamily")
        .value("Zero", DriftFamily::Zero)
        .value("Linear", DriftFamily::Linear)
        .value("AffineSine", DriftFamily::AffineSine)
        .value("LogisticClipped", DriftFamily::LogisticClipped);

    py::class_<DriftSpec>(m, "DriftSpec")
        .def_static("zero", &DriftSpec::zero)
        .def_static("linear", &DriftSpec::linear, py::arg("a"))
        .def_static("affine_sine", &DriftSpec::affine_sine, py::arg("a"), py::arg("c"))
        .def_static("logistic_clipped", &DriftSpec::logistic_clipped, py::arg("a"), py::arg("cap"))
        .def("__call__", &DriftSpec::operator(), py::arg("t"), py::arg("x"))
        .def_property_readonly("lipschitz", &DriftSpec::lipschitz)
        .def_property_readonly("growth", &DriftSpec::growth);

    py::class_<SigmaSpec>(m, "SigmaSpec")
        .def_static("constant", &SigmaSpec::constant, py::arg("value"))
        .def_static("piecewise_constant", &SigmaSpec::piecewise_constant, py::arg("values"),
                    py::arg("horizon"))
        .def_static("sine", &SigmaSpec::sine, py::arg("base"), py::arg("amplitude"),
                    py::arg("frequency"))
        .def("__call__", &SigmaSpec::operator(), py::arg("t"))
        .def_property_readonly("sup_norm", &SigmaSpec::sup_norm);

    py::enum_<SdeInterpretation>(m, "SdeInterpretation")
        .value("Stratonovich", SdeInterpretation::Stratonovich)
        .value("Ito", SdeInterpretation::Ito);

    py::class_<SdeConfig>(m, "SdeConfig")
        .def(py::init<DriftSpec, SigmaSpec, double, TimeGrid, SdeInterpretation>(),
             py::arg("drift"), py::arg("sigma"), py::arg("x0"), py::arg("grid"),
             py::arg("interpretation"))
        .def_readonly("x0", &SdeConfig::x0)
        .def_readonly("grid", &SdeConfig::grid);

    py::enum_<SolutionKind>(m, "SolutionKind")
        .value("ExactStratonovich", SolutionKind::ExactStratonovich)
        .value("ExactIto", SolutionKind::ExactIto)
        .value("WzPointwise", SolutionKind::WzPointwise)
        .value("WzWick", SolutionKind::WzWick)
        .value("ClosedForm", SolutionKind::ClosedForm)
        .value("FineEuler", SolutionKind::FineEuler);

    py::class_<PathSolution>(m, "PathSolution")
        .def_readonly("node_stride", &PathSolution::node_stride)
        .def_readonly("node_indices", &PathSolution::node_indices)
        .def_readonly("values", &PathSolution::values)
        .def_readonly("kind", &PathSolution::kind);

    py::enum_<WzRoute>(m, "WzRoute")
        .value("Factored", WzRoute::Factored)
        .value("Direct", WzRoute::Direct);

    m.def("exact_stratonovich", &exact_stratonovich, py::arg("cfg"), py::arg("path"));
    m.def("exact_ito", &exact_ito, py::arg("cfg"), py::arg("path"));
    m.def("wz_pointwise", &wz_pointwise, py::arg("cfg"), py::arg("kernel"), py::arg("path"),
          py::arg("route") = WzRoute::Factored);
    m.def("wz_wick", &wz_wick, py::arg("cfg"), py::arg("kernel"), py::arg("path"),
          py::arg("subsample") = 1);
    m.def("wick_closed_form_linear", &wick_closed_form_linear, py::arg("cfg"), py::arg("kernel"),
          py::arg("path"), py::arg("subsample") = 1);
    m.def("euler_maruyama", &euler_maruyama, py::arg("cfg"), py::arg("path"));
    m.def("coarsen_path", &coarsen_path, py::arg("fine"), py::arg("factor"));
    m.def("d_l2norm_dt", &d_l2norm_dt, py::arg("kernel"), py::arg("k"));

    m.def("s_q", &s_q, py::arg("lam"), py::arg("q"));

    py::enum_<SolverPair>(m, "SolverPair")
        .value("StratonovichVsWz", SolverPair::StratonovichVsWz)
        .value("ItoVsWick", SolverPair::ItoVsWick);

    py::class_<ErrorPoint>(m, "ErrorPoint")
        .def_readonly("epsilon", &ErrorPoint::epsilon)
        .def_readonly("delta", &ErrorPoint::delta)
        .def_readonly("error", &ErrorPoint::error)
        .def_readonly("std_error", &ErrorPoint::std_error)
        .def_readonly("n_samples", &ErrorPoint::n_samples);

    py::class_<ErrorCurve>(m, "ErrorCurve")
        .def(py::init([](SolverPair pair, double p, std::vector<ErrorPoint> points) {
                 return ErrorCurve{pair, p, std::move(points)};
             }),
             py::arg("pair"), py::arg("p"), py::arg("points"))
        .def_readonly("pair", &ErrorCurve::pair)
        .def_readonly("p", &ErrorCurve::p)
        .def_readonly("points", &ErrorCurve::points);

    py::class_<RateFit>(m, "RateFit")
        .def_readonly("slope", &RateFit::slope)
        .def_readonly("intercept", &RateFit::intercept)
        .def_readonly("r_squared", &RateFit::r_squared)
        .def_readonly("fitted_c", &RateFit::fitted_c);

    py::class_<BoundCheckReport>(m, "BoundCheckReport")
        .def_readonly("fitted_c", &BoundCheckReport::fitted_c)
        .def_readonly("all_points_within", &BoundCheckReport::all_points_within);

    py::class_<McOptions>(m, "McOptions")
        .def(py::init([](double p, std::size_t n_samples, std::uint64_t seed, std::size_t jobs,
                         std::size_t subsample) {
                 return McOptions{p, n_samples, seed, jobs, subsample};
             }),
             py::arg("p") = 2.0, py::arg("n_samples") = 1000, py::arg("seed") = 0,
             py::arg("jobs") = 0, py::arg("subsample") = 1);

    m.def("fit_rate", &fit_rate, py::arg("curve"), py::arg("q"));
    m.def("bound_check", &bound_check, py::arg("curve"), py::arg("q"));
    m.def("mc_error", &mc_error, py::arg("pair"), py::arg("cfg"), py::arg("kernel"),
          py::arg("opts"), py::call_guard<py::gil_scoped_release>());
    m.def("closed_form_error", &closed_form_error, py::arg("pair"), py::arg("cfg"),
          py::arg("kernel"), py::arg("subsample") = 1);
    m.def("closed_form_node_error", &closed_form_node_error, py::arg("pair"), py::arg("cfg"),
          py::arg("kernel"), py::arg("k"));
}
