#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ohd/diagnostics.hpp"
#include "ohd/evolution.hpp"
#include "ohd/experiments.hpp"
#include "ohd/flux.hpp"
#include "ohd/nonlocal.hpp"
#include "ohd/spectral.hpp"
#include "ohd/verification.hpp"

namespace py = pybind11;

namespace {

struct PyGrid {
    ohd::GridPtr g;
};

ohd::Field as_field(const PyGrid& grid, py::array_t<double, py::array::c_style | py::array::forcecast> arr) {
    if (arr.ndim() != 1 || arr.shape(0) != grid.g->num_points)
        throw std::invalid_argument("expected a 1-d array with one sample per grid point");
    std::vector<double> v(arr.data(), arr.data() + arr.shape(0));
    return ohd::Field(grid.g, std::move(v));
}

py::array_t<double> as_array(const ohd::Field& f) {
    return py::array_t<double>(static_cast<py::ssize_t>(f.values.size()), f.values.data());
}

py::array_t<double> vec_array(const std::vector<double>& v) {
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

ohd::FluxModel flux_by_name(const std::string& name, const std::vector<double>& coeffs,
                            double range) {
    if (name == "burgers") return ohd::burgers_flux();
    if (name == "cubic") return ohd::cubic_flux(range);
    if (name == "custom") return ohd::polynomial_flux(coeffs, {-range, range});
    throw std::invalid_argument("unknown flux '" + name + "'");
}

ohd::SolverConfig config_from_kwargs(double gamma, double delta, double dt, double t_end,
                                     double cfl_safety, bool dealias, double blowup_threshold,
                                     int record_every) {
    ohd::SolverConfig c;
    c.gamma = gamma;
    c.delta = delta;
    c.dt = dt;
    c.t_end = t_end;
    c.cfl_safety = cfl_safety;
    c.dealias = dealias;
    c.blowup_threshold = blowup_threshold;
    c.record_every = record_every;
    return c;
}

py::dict report_dict(const ohd::DiagnosticsReport& r) {
    py::dict d;
    d["t"] = vec_array(r.times);
    d["u_l2sq"] = vec_array(r.u_l2sq);
    d["ux_l2sq"] = vec_array(r.ux_l2sq);
    d["uxx_l2sq"] = vec_array(r.uxx_l2sq);
    d["u_linf"] = vec_array(r.u_linf);
    d["p_l2"] = vec_array(r.p_l2);
    d["p_linf"] = vec_array(r.p_linf);
    d["px_l2"] = vec_array(r.px_l2);
    d["mean_u"] = vec_array(r.mean_u);
    d["mean_p"] = vec_array(r.mean_p);
    d["elliptic_residual"] = vec_array(r.elliptic_residual);
    d["coupling_residual"] = vec_array(r.coupling_residual);
    d["sup_p_linf"] = r.sup_p_linf;
    d["sup_ux_linf"] = r.sup_ux_linf;
    py::list verdicts;
    for (const auto& v : ohd::all_checks(r)) {
        py::dict e;
        e["name"] = v.name;
        e["pass"] = v.pass;
        e["worst_margin"] = v.worst_margin;
        e["worst_time"] = v.worst_time;
        e["detail"] = v.detail;
        verdicts.append(e);
    }
    d["verdicts"] = verdicts;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "pseudospectral solver for the dissipative Ostrovsky-Hunter equation";

    py::class_<PyGrid>(m, "Grid")
        .def(py::init([](double L, int N) { return PyGrid{ohd::make_grid(L, N)}; }),
             py::arg("L"), py::arg("N"))
        .def_property_readonly("L", [](const PyGrid& g) { return g.g->half_length; })
        .def_property_readonly("N", [](const PyGrid& g) { return g.g->num_points; })
        .def_property_readonly("dx", [](const PyGrid& g) { return g.g->spacing; })
        .def_property_readonly("x",
                               [](const PyGrid& g) {
                                   std::vector<double> v(g.g->num_points);
                                   for (int i = 0; i < g.g->num_points; ++i) v[i] = g.g->point(i);
                                   return vec_array(v);
                               })
        .def_property_readonly("k", [](const PyGrid& g) { return vec_array(g.g->k_table); });

    m.def("mean", [](const PyGrid& g, py::array_t<double> u) { return ohd::mean(as_field(g, u)); },
          py::arg("grid"), py::arg("u"));
    m.def("l2_norm",
          [](const PyGrid& g, py::array_t<double> u) { return ohd::l2_norm(as_field(g, u)); },
          py::arg("grid"), py::arg("u"));
    m.def("linf_norm",
          [](const PyGrid& g, py::array_t<double> u) { return ohd::linf_norm(as_field(g, u)); },
          py::arg("grid"), py::arg("u"));
    m.def("inner_product",
          [](const PyGrid& g, py::array_t<double> a, py::array_t<double> b) {
              return ohd::inner_product(as_field(g, a), as_field(g, b));
          },
          py::arg("grid"), py::arg("a"), py::arg("b"));

    m.def("derivative",
          [](const PyGrid& g, py::array_t<double> u, int order) {
              return as_array(ohd::derivative(as_field(g, u), order));
          },
          py::arg("grid"), py::arg("u"), py::arg("order") = 1);

    m.def("dealias",
          [](const PyGrid& g, py::array_t<double> u) {
              auto s = ohd::to_spectral(as_field(g, u));
              ohd::dealias(s, *g.g);
              return as_array(ohd::to_physical(s, g.g));
          },
          py::arg("grid"), py::arg("u"), "apply the two-thirds rule and transform back");

    m.def("solve_p",
          [](const PyGrid& g, py::array_t<double> u, double delta) {
              return as_array(ohd::solve_p(as_field(g, u), delta));
          },
          py::arg("grid"), py::arg("u"), py::arg("delta"));
    m.def("check_elliptic_identity",
          [](const PyGrid& g, py::array_t<double> u, py::array_t<double> p, double delta) {
              return ohd::check_elliptic_identity(as_field(g, u), as_field(g, p), delta);
          },
          py::arg("grid"), py::arg("u"), py::arg("p"), py::arg("delta"));
    m.def("coupling_product",
          [](const PyGrid& g, py::array_t<double> u, py::array_t<double> p, double delta) {
              return ohd::coupling_product(as_field(g, u), as_field(g, p), delta);
          },
          py::arg("grid"), py::arg("u"), py::arg("p"), py::arg("delta"));

    m.def("linear_symbol", &ohd::linear_symbol, py::arg("k"), py::arg("gamma"), py::arg("delta"));

    m.def("cfl_dt",
          [](const PyGrid& g, py::array_t<double> u, const std::string& flux, double cfl_safety,
             const std::vector<double>& coeffs, double range) {
              return ohd::cfl_dt(as_field(g, u), *g.g, flux_by_name(flux, coeffs, range),
                                 cfl_safety);
          },
          py::arg("grid"), py::arg("u"), py::arg("flux") = "burgers", py::arg("cfl_safety") = 0.5,
          py::arg("coeffs") = std::vector<double>{}, py::arg("range") = 8.0);

    m.def("prepare_initial_data",
          [](const PyGrid& g, const std::string& name, double amplitude, int mode, double width,
             double center, double radius, int max_mode, std::uint64_t seed) {
              ohd::ProfileSpec ps;
              ps.name = name;
              ps.amplitude = amplitude;
              ps.mode = mode;
              ps.width = width;
              ps.center = center;
              ps.radius = radius;
              ps.max_mode = max_mode;
              ps.seed = seed;
              auto init = ohd::prepare_initial_data(ps, g.g);
              py::dict d;
              d["u0"] = as_array(init.u0);
              d["p0"] = as_array(init.p0);
              d["u0_l2"] = init.u0_l2;
              d["u0_linf"] = init.u0_linf;
              d["p0_l2"] = init.p0_l2;
              return d;
          },
          py::arg("grid"), py::arg("name"), py::arg("amplitude") = 1.0, py::arg("mode") = 1,
          py::arg("width") = 1.0, py::arg("center") = 0.0, py::arg("radius") = 1.0,
          py::arg("max_mode") = 0, py::arg("seed") = 1);

    m.def("run",
          [](const PyGrid& g, py::array_t<double> u0, double gamma, double delta, double dt,
             double t_end, double cfl_safety, bool dealias, double blowup_threshold,
             int record_every, const std::string& flux, const std::vector<double>& coeffs,
             double range) {
              const auto cfg = config_from_kwargs(gamma, delta, dt, t_end, cfl_safety, dealias,
                                                  blowup_threshold, record_every);
              const auto fm = flux_by_name(flux, coeffs, range);
              auto [state, report] = ohd::run(as_field(g, u0), cfg, fm);
              py::dict d;
              d["t"] = state.t;
              d["u"] = as_array(state.u);
              d["p"] = as_array(state.p);
              d["steps"] = state.step_index;
              d["diagnostics"] = report_dict(report);
              return d;
          },
          py::arg("grid"), py::arg("u0"), py::arg("gamma") = 0.5, py::arg("delta") = 0.0,
          py::arg("dt") = 0.0, py::arg("t_end") = 1.0, py::arg("cfl_safety") = 0.5,
          py::arg("dealias") = true, py::arg("blowup_threshold") = 1e3,
          py::arg("record_every") = 1, py::arg("flux") = "burgers",
          py::arg("coeffs") = std::vector<double>{}, py::arg("range") = 8.0);

    m.def("verify",
          [] {
              py::list out;
              for (const auto& c : ohd::verify_all()) {
                  py::dict d;
                  d["index"] = c.index;
                  d["name"] = c.name;
                  d["pass"] = c.pass;
                  d["detail"] = c.detail;
                  out.append(d);
              }
              return out;
          },
          "run the built-in invariant suite; slow");
}
