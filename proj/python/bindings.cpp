#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sector_heat/asymptotics.hpp"
#include "sector_heat/cli.hpp"
#include "sector_heat/config.hpp"
#include "sector_heat/eigen.hpp"
#include "sector_heat/errors.hpp"
#include "sector_heat/heat_kernel.hpp"
#include "sector_heat/nonlinear_solver.hpp"
#include "sector_heat/profile.hpp"
#include "sector_heat/verification.hpp"

namespace py = pybind11;
using namespace sector_heat;

namespace {

// Nodes as an (n, dims) array and values as an (n,) array.
py::tuple field_arrays(const Field& f) {
    const SectorGrid& g = f.grid();
    py::array_t<double> pts({f.size(), g.dims()});
    py::array_t<double> vals(f.size());
    auto p = pts.mutable_unchecked<2>();
    auto v = vals.mutable_unchecked<1>();
    std::vector<double> x(g.dims());
    for (std::size_t i = 0; i < f.size(); ++i) {
        g.point(i, x);
        for (std::size_t a = 0; a < x.size(); ++a) p(i, a) = x[a];
        v(i) = f[i];
    }
    return py::make_tuple(pts, vals);
}

}  // namespace

PYBIND11_MODULE(_sector_heat, m) {
    m.doc() = "Heat equation with absorption on sectors: kernels, solver and checks";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<DomainSpec>(m, "DomainSpec")
        .def(py::init([](int N, int mm, double gamma, double alpha) {
                 DomainSpec s{N, mm, gamma, alpha};
                 s.validate();
                 return s;
             }),
             py::arg("N"), py::arg("m"), py::arg("gamma"), py::arg("alpha"))
        .def_readonly("N", &DomainSpec::N)
        .def_readonly("m", &DomainSpec::m)
        .def_readonly("gamma", &DomainSpec::gamma)
        .def_readonly("alpha", &DomainSpec::alpha)
        .def_property_readonly("critical_alpha", &DomainSpec::critical_alpha)
        .def("__repr__", &DomainSpec::describe);

    py::class_<VerificationReport>(m, "VerificationReport")
        .def_readonly("name", &VerificationReport::name)
        .def_readonly("violation", &VerificationReport::violation)
        .def_readonly("tolerance", &VerificationReport::tolerance)
        .def_readonly("passed", &VerificationReport::pass)
        .def_readonly("fingerprint", &VerificationReport::fingerprint)
        .def_readonly("note", &VerificationReport::note)
        .def_property_readonly("metrics",
                               [](const VerificationReport& r) {
                                   py::dict d;
                                   for (const auto& [k, v] : r.metrics) d[py::str(k)] = v;
                                   return d;
                               })
        .def("__repr__", [](const VerificationReport& r) {
            std::ostringstream os;
            os << "<" << (r.pass ? "PASS " : "FAIL ") << r.name << " violation=" << r.violation << ">";
            return os.str();
        });

    m.def("psi0", [](std::vector<double> x, const DomainSpec& s) { return psi0(x, s); }, py::arg("x"),
          py::arg("spec"));
    m.def("weight", [](std::vector<double> x, const DomainSpec& s) { return weight(x, s); }, py::arg("x"),
          py::arg("spec"));
    m.def("psi0_constant", &psi0_constant, py::arg("m"), py::arg("gamma"));
    m.def(
        "kernel",
        [](double t, std::vector<double> x, std::vector<double> y, const DomainSpec& s) {
            if (x.size() != y.size() || static_cast<int>(x.size()) != s.N)
                throw DomainError("points must have N coordinates");
            return kernel(t, x, y, s);
        },
        py::arg("t"), py::arg("x"), py::arg("y"), py::arg("spec"));
    m.def("erf_product", [](double d, std::vector<double> x, const DomainSpec& s) { return erf_product(d, x, s); },
          py::arg("delta"), py::arg("x"), py::arg("spec"));
    m.def("absorption_flow", [](double u, double tau, double alpha) { return Absorption::power(alpha).flow(u, tau); },
          py::arg("u"), py::arg("tau"), py::arg("alpha"));

    m.def(
        "solve_psi0",
        [](const DomainSpec& s, double h, double radius, std::vector<double> times, double dt0, double scale) {
            SolverConfig c;
            c.dt0 = dt0;
            c.dt_rel = 0.1;
            c.dt_max = 4.0;
            c.snapshots = std::move(times);
            c.validate();
            py::gil_scoped_release release;
            const Trajectory tr =
                solve(ProfileSpec::psi0(scale), make_grid(SectorGrid::uniform(s, h, radius)), s, c);
            py::gil_scoped_acquire acquire;
            py::list out;
            for (const Field& f : tr.snapshots) out.append(py::make_tuple(f.time(), field_arrays(f)));
            return out;
        },
        py::arg("spec"), py::arg("h"), py::arg("radius"), py::arg("times"), py::arg("dt0") = 0.03,
        py::arg("scale") = 1.0,
        "Snapshots (t, (points, values)) of the solution with data scale * psi0.");

    m.def("regime", [](const DomainSpec& s) { return regime_name(classify_regime(s).regime); }, py::arg("spec"));
    m.def("bessel_j", &bessel_j, py::arg("nu"), py::arg("x"));
    m.def("bessel_first_zero", &bessel_first_zero, py::arg("nu"));
    m.def("bessel_oracle", &bessel_oracle, py::arg("d"));
    m.def(
        "sector_ball_eigen",
        [](const DomainSpec& s, double h, const std::string& boundary) {
            EigenOptions o;
            if (boundary == "mask")
                o.boundary = BallBoundary::Mask;
            else if (boundary != "ghost")
                throw DomainError("boundary must be ghost or mask");
            const EigenResult r = sector_ball_eigen(s, h, o);
            return py::make_tuple(r.lambda, field_arrays(r.field));
        },
        py::arg("spec"), py::arg("h"), py::arg("boundary") = "ghost",
        "(lambda, (points, values)) of the ground state on the unit sector-ball.");

    m.def(
        "kernel_domination_check",
        [](const DomainSpec& s, std::size_t samples, std::uint64_t seed) {
            return kernel_domination_check(s, samples, seed);
        },
        py::arg("spec"), py::arg("samples") = 1000, py::arg("seed") = 1);
    m.def(
        "elliptic_residual",
        [](const DomainSpec& s, double h, int order, double tolerance) {
            EllipticOptions o;
            o.stencil_order = order;
            return elliptic_residual(s, h, o, tolerance);
        },
        py::arg("spec"), py::arg("h"), py::arg("order") = 2, py::arg("tolerance") = 1e-3);

    m.def("parse_config", [](const std::string& text) {
        const RunConfig c = RunConfig::parse(text);
        c.validate();
        return py::make_tuple(c.serialize(), c.fingerprint());
    }, py::arg("text"), "Validated canonical text and fingerprint of a configuration.");
    m.def("default_config", [] { return RunConfig{}.serialize(); });
    m.def(
        "run",
        [](const std::string& subcommand, const std::string& config, const std::string& out, int jobs) {
            std::ostringstream log, err;
            int code;
            {
                py::gil_scoped_release release;
                code = run_cli(subcommand, config, out, jobs, log, err);
            }
            return py::make_tuple(code, log.str(), err.str());
        },
        py::arg("subcommand"), py::arg("config") = "", py::arg("out") = "", py::arg("jobs") = 1,
        "Runs a CLI subcommand in process; returns (exit_code, log, errors).");
}
