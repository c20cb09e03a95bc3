#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "plasmon/cli.hpp"
#include "plasmon/effective.hpp"
#include "plasmon/mie.hpp"
#include "plasmon/selftest.hpp"
#include "plasmon/shell_modes.hpp"
#include "plasmon/sphere_modes.hpp"

namespace py = pybind11;
using namespace plasmon;

PYBIND11_MODULE(_plasmon, m) {
    m.doc() = "Plasmonic resonance and scattering routines";

    py::register_exception<Error>(m, "PlasmonError", PyExc_ValueError);

    py::class_<DrudeParams>(m, "DrudeParams")
        .def(py::init<double, double, double>(), py::arg("eps_inf") = 1.0, py::arg("omega_p") = 1.0,
             py::arg("gamma") = 0.0)
        .def_readwrite("eps_inf", &DrudeParams::eps_inf)
        .def_readwrite("omega_p", &DrudeParams::omega_p)
        .def_readwrite("gamma", &DrudeParams::gamma_damp);
    m.def("drude_permittivity", &drude_permittivity);

    py::class_<MediumPair>(m, "MediumPair")
        .def(py::init<cplx, cplx, cplx, cplx>(), py::arg("eps_m") = 1.0, py::arg("mu_m") = 1.0,
             py::arg("eps_c") = 1.0, py::arg("mu_c") = 1.0)
        .def_readwrite("eps_m", &MediumPair::eps_m)
        .def_readwrite("mu_m", &MediumPair::mu_m)
        .def_readwrite("eps_c", &MediumPair::eps_c)
        .def_readwrite("mu_c", &MediumPair::mu_c);

    py::class_<Material>(m, "Material")
        .def(py::init([](DrudeParams d, cplx mu_c, cplx eps_m, cplx mu_m) { return Material{d, mu_c, eps_m, mu_m}; }),
             py::arg("drude") = DrudeParams{}, py::arg("mu_c") = 1.0, py::arg("eps_m") = 1.0, py::arg("mu_m") = 1.0)
        .def("at", &Material::at);

    m.def("bessel_pair", [](int n, cplx z) {
        const BesselPair b = bessel_pair(n, z);
        return py::make_tuple(b.j, b.h);
    });
    m.def("riccati_pair", [](int n, cplx z) {
        const RiccatiPair r = riccati_pair(n, z);
        return py::make_tuple(r.J, r.H);
    });

    m.def("scattering_coeffs", [](double radius, const MediumPair& md, double omega, int nmax) {
        const ScatterCoeffs s = scattering_coeffs({radius}, md, omega, nmax);
        return py::make_tuple(s.te, s.tm);
    }, py::arg("radius"), py::arg("media"), py::arg("omega"), py::arg("nmax") = 0);
    m.def("extinction", [](double radius, const MediumPair& md, double omega, const std::string& mode,
                           const Eigen::Vector3d& d, const Eigen::Vector3d& p) {
        if (mode != "series" && mode != "dipole") throw Error(ErrorKind::domain, "mode must be series or dipole");
        return extinction({radius}, md, omega, PlaneWave{d, p},
                          mode == "series" ? ExtinctionMode::series : ExtinctionMode::dipole);
    }, py::arg("radius"), py::arg("media"), py::arg("omega"), py::arg("mode") = "series",
       py::arg("d") = Eigen::Vector3d::UnitZ(), py::arg("p") = Eigen::Vector3d::UnitX());

    py::class_<ResonanceReport>(m, "ResonanceReport")
        .def_readonly("found", &ResonanceReport::found)
        .def_readonly("omega_star", &ResonanceReport::omega_star)
        .def_readonly("family", &ResonanceReport::family)
        .def_readonly("n", &ResonanceReport::n)
        .def_readonly("tau_at_min", &ResonanceReport::tau_at_min)
        .def_readonly("shift_from_quasistatic", &ResonanceReport::shift_from_quasistatic)
        .def_readonly("fwhm_estimate", &ResonanceReport::fwhm_estimate)
        .def_readonly("quasistatic_omega", &ResonanceReport::quasistatic_omega)
        .def_property_readonly("order", [](const ResonanceReport& r) { return to_string(r.order); });

    m.def("find_resonance", [](const std::string& family, int n, const Material& mat, double radius,
                               const std::string& order) {
        return find_resonance(family_from_string(family), n, mat, radius, order_from_string(order));
    }, py::arg("family"), py::arg("n"), py::arg("material"), py::arg("radius"), py::arg("order") = "quasistatic");

    m.def("eigen_expansions", [](int n, double omega, const MediumPair& md) {
        py::list out;
        for (const EigenExpansion& e : eigen_expansions(n, omega, md))
            out.append(py::dict(py::arg("family") = to_string(e.family), py::arg("tau0") = e.tau0,
                                py::arg("tau2") = e.tau2_coeff));
        return out;
    });
    m.def("w_blocks", [](int n, double omega, const MediumPair& md) {
        const ModeBlock b = w_blocks(n, omega, md);
        return py::make_tuple(Eigen::MatrixXcd(b.W0), Eigen::MatrixXcd(b.W1), Eigen::MatrixXcd(b.W2));
    });

    m.def("shell_np_eigenvalue", &shell_np_eigenvalue);
    m.def("shell_resonances", [](const Material& mat, double r_s, double rho, const std::string& order, int n_cut) {
        py::list out;
        for (const ShellResonance& r : shell_resonances(mat, {r_s, rho}, order_from_string(order), n_cut))
            out.append(py::make_tuple(r.branch, r.hybrid, r.report));
        return out;
    }, py::arg("material"), py::arg("r_s"), py::arg("rho"), py::arg("order") = "quasistatic", py::arg("n_cut") = 1);

    m.def("mg_effective_ball", [](cplx eps_m, cplx eps_c, double f, double c) {
        const EffectiveTensor t = mg_effective_ball(eps_m, eps_c, f, c);
        return py::dict(py::arg("gamma_star") = Eigen::Matrix3cd(t.gamma_star), py::arg("f") = t.f,
                        py::arg("validity") = t.validity, py::arg("margin") = t.margin,
                        py::arg("remainder_scale") = t.remainder_scale, py::arg("dist") = t.dist);
    }, py::arg("eps_m"), py::arg("eps_c"), py::arg("f"), py::arg("validity_constant") = 0.1);

    m.def("q1_correction", [](cplx eps_c, const Eigen::Matrix3d& R, int n, int mm) {
        return q1_correction({eps_c, 0.0, R}, {n, mm}, 1.0);
    }, py::arg("eps_c"), py::arg("R"), py::arg("n"), py::arg("m"));

    m.def("periodic_regular_part", [](const Eigen::Vector3d& x) { return periodic_regular_part(x); });

    m.def("selftest", [] {
        py::list out;
        for (const CheckResult& r : run_selftest()) out.append(py::make_tuple(r.name, r.passed, r.value));
        return out;
    });

    m.def("run_cli", [](std::vector<std::string> args) {
        std::vector<char*> argv;
        std::string prog = "plasmon";
        argv.push_back(prog.data());
        for (auto& a : args) argv.push_back(a.data());
        return cli::run(static_cast<int>(argv.size()), argv.data());
    });
}
