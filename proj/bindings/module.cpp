#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sblab/dynamics.hpp"
#include "sblab/fock.hpp"
#include "sblab/levelshift.hpp"
#include "sblab/mourre.hpp"
#include "sblab/scattering.hpp"

namespace py = pybind11;
using namespace sblab;

namespace {

std::vector<std::complex<double>> kernel_profile(const std::vector<double>& rs,
                                                 const ModelParams& p) {
    const auto ls = levelshift::compute_level_shift(p);
    const double lambda0 = p.e0 - p.g * p.g * ls.gamma0_gs;
    std::vector<std::complex<double>> out;
    out.reserve(rs.size());
    for (double r : rs) out.push_back(scattering::onshell_kernel(r, ls, lambda0, 1.0, p));
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "spin-boson level shift, scattering kernel, survival dynamics and "
              "Fock-space oracle";

    py::register_exception<Error>(m, "SblabError");

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init(&ModelParams::make), py::arg("e1"), py::arg("m"),
             py::arg("lambda_uv"), py::arg("g"))
        .def_static("reference", &ModelParams::reference, py::arg("g") = 0.05)
        .def_readonly("e0", &ModelParams::e0)
        .def_readonly("e1", &ModelParams::e1)
        .def_readonly("m", &ModelParams::m)
        .def_readonly("lambda_uv", &ModelParams::lambda_uv)
        .def_readonly("g", &ModelParams::g)
        .def("delta_gap", &ModelParams::delta_gap);

    m.def("omega", [](double r, const ModelParams& p) { return omega(r, p); });
    m.def("form_factor", [](double r, const ModelParams& p) { return form_factor(r, p); });
    m.def("xi", [](double r, const ModelParams& p) { return xi(r, p); });
    m.def("theta", [](double tau, const ModelParams& p) { return levelshift::theta(tau, p); });

    py::class_<levelshift::LevelShift>(m, "LevelShift")
        .def_readonly("gamma_minus0", &levelshift::LevelShift::gamma_minus0)
        .def_readonly("gamma_plus0", &levelshift::LevelShift::gamma_plus0)
        .def_readonly("theta0", &levelshift::LevelShift::theta0)
        .def_readonly("gamma0_gs", &levelshift::LevelShift::gamma0_gs);

    py::class_<levelshift::Resonance>(m, "Resonance")
        .def_readonly("lambda1_tilde", &levelshift::Resonance::lambda1_tilde)
        .def_readonly("lambda0_approx", &levelshift::Resonance::lambda0_approx)
        .def_readonly("decay_rate", &levelshift::Resonance::decay_rate);

    m.def("level_shift",
          [](const ModelParams& p) { return levelshift::compute_level_shift(p); });
    m.def("resonance", [](const ModelParams& p) { return levelshift::resonance(p); });
    m.def("gamma_eps", [](double eps, int sign, const ModelParams& p) {
        return levelshift::gamma_eps(eps, sign, p);
    });
    m.def("gamma_boundary",
          [](int sign, const ModelParams& p) { return levelshift::gamma_boundary(sign, p); });
    m.def("gamma0_groundshift",
          [](const ModelParams& p) { return levelshift::gamma0_groundshift(p); });

    m.def("survival_residue", [](double t, const ModelParams& p) {
        return dynamics::survival_residue(t, levelshift::resonance(p));
    });
    m.def("survival_quadrature", [](double t, const ModelParams& p) {
        return dynamics::survival_quadrature(t, levelshift::resonance(p));
    });
    m.def("chi_cutoff", &dynamics::chi_cutoff, py::arg("r"), py::arg("s"), py::arg("params"));

    m.def("onshell_kernel_profile", &kernel_profile, py::arg("r_values"), py::arg("params"));
    m.def("transition_lorentzian",
          [](double lo, double hi, const ModelParams& p) {
              const auto ls = levelshift::compute_level_shift(p);
              const double lam0 = p.e0 - p.g * p.g * ls.gamma0_gs;
              const auto packet = scattering::bump_packet(lo, hi);
              return scattering::transition_lorentzian(packet, packet, ls, lam0, 1.0, p);
          },
          py::arg("support_lo"), py::arg("support_hi"), py::arg("params"));

    m.def("oracle_ground_energy",
          [](const ModelParams& p, int modes, int n_max, double k_max) {
              const auto grid = fock::build_grid(modes, k_max);
              const auto ham = fock::assemble(p, grid, n_max);
              return fock::ground_state(ham).first;
          },
          py::arg("params"), py::arg("modes") = 40, py::arg("n_max") = 2,
          py::arg("k_max") = 6.0);

    m.def("oracle_survival",
          [](const ModelParams& p, const std::vector<double>& times, int modes, int n_max,
             double k_max) {
              const auto grid = fock::build_grid(modes, k_max);
              const auto ham = fock::assemble(p, grid, n_max);
              const auto eig = fock::decompose(ham);
              return fock::survival_oracle(ham, eig, times).amplitudes;
          },
          py::arg("params"), py::arg("times"), py::arg("modes") = 200, py::arg("n_max") = 1,
          py::arg("k_max") = 6.0);

    m.def("mourre_alpha",
          [](const ModelParams& p, int modes, int n_max, double k_max) {
              const auto grid = fock::build_grid(modes, k_max);
              return mourre::mourre_constant(p, grid, n_max).alpha_num;
          },
          py::arg("params"), py::arg("modes") = 200, py::arg("n_max") = 1,
          py::arg("k_max") = 6.0);
}
