#include "dvrqc/active_space.hpp"
#include "dvrqc/cli.hpp"
#include "dvrqc/detci.hpp"
#include "dvrqc/dmrg.hpp"
#include "dvrqc/errors.hpp"
#include "dvrqc/jwci.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace dvrqc;

namespace {

InteractionModel interactions(double en, double ee, double nn) {
    InteractionModel m;
    m.electron_nuclear.length = en;
    m.electron_electron.length = ee;
    m.nuclear_nuclear.length = nn;
    return m;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "DVR electronic structure for 1D chains";

    py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
    py::register_exception<InvalidDomain>(m, "InvalidDomain", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<DvrBasis>(m, "DvrBasis")
        .def_property_readonly("kind", [](const DvrBasis& b) { return std::string(to_string(b.kind)); })
        .def_readonly("grid", &DvrBasis::grid)
        .def_readonly("weights", &DvrBasis::weights)
        .def_readonly("spacing", &DvrBasis::spacing)
        .def("__len__", &DvrBasis::size);

    m.def("sine_dvr", &build_sine_dvr, py::arg("a"), py::arg("b"), py::arg("n"));
    m.def("sinc_dvr", &build_sinc_dvr, py::arg("x0"), py::arg("dx"), py::arg("n"));
    m.def("kinetic_matrix", &kinetic_matrix, py::arg("basis"));

    py::class_<IntegralSet>(m, "IntegralSet")
        .def_readonly("basis", &IntegralSet::basis)
        .def_readonly("t", &IntegralSet::t)
        .def_readonly("v", &IntegralSet::v)
        .def_readonly("g", &IntegralSet::g)
        .def_readonly("e_nn", &IntegralSet::e_nn)
        .def("core_hamiltonian", &IntegralSet::core_hamiltonian)
        .def("__len__", &IntegralSet::size);

    m.def(
        "build_integrals",
        [](const DvrBasis& basis, std::vector<double> positions, std::vector<int> charges, int electrons,
           double en_length, double ee_length, double nn_length) {
            return build_integrals(basis, ChainGeometry{std::move(positions), std::move(charges), electrons},
                                   interactions(en_length, ee_length, nn_length));
        },
        py::arg("basis"), py::arg("positions"), py::arg("charges"), py::arg("electrons"),
        py::arg("en_length") = 1.0, py::arg("ee_length") = 1.0, py::arg("nn_length") = 1.0,
        "Lengths in bohr. Screening lengths default to 1 bohr (plain erf(r)/r).");
    m.def("random_small_instance", &random_small_instance, py::arg("seed"), py::arg("n"));

    py::class_<ScfResult>(m, "ScfResult")
        .def_readonly("e_hf", &ScfResult::e_hf)
        .def_readonly("mo_coeff", &ScfResult::mo_coeff)
        .def_readonly("orbital_energies", &ScfResult::orbital_energies)
        .def_readonly("density", &ScfResult::density)
        .def_readonly("fock", &ScfResult::fock)
        .def_readonly("commutator_norm", &ScfResult::commutator_norm)
        .def_readonly("n_occupied", &ScfResult::n_occupied)
        .def_readonly("iterations", &ScfResult::iterations)
        .def_readonly("converged", &ScfResult::converged);

    m.def(
        "scf",
        [](const IntegralSet& ints, int electrons, int max_iter, bool diis) {
            ScfOptions o;
            o.max_iter = max_iter;
            o.use_diis = diis;
            return scf_solve(ints, electrons, o);
        },
        py::arg("ints"), py::arg("electrons"), py::arg("max_iter") = 200, py::arg("diis") = true);
    m.def("fock_matrix", &fock_matrix, py::arg("ints"), py::arg("density"));

    m.def(
        "casci",
        [](const ScfResult& scf, const IntegralSet& ints, Index n_orb, int n_elec, double s_z, Index roots) {
            return solve_casci(build_active_hamiltonian(scf, ints, n_orb, n_elec), s_z, roots).energies;
        },
        py::arg("scf"), py::arg("ints"), py::arg("n_orb"), py::arg("n_elec"), py::arg("s_z") = 0.0,
        py::arg("roots") = 1, "Lowest CASCI energies (hartree), frozen core below the window.");
    m.def(
        "fci",
        [](const IntegralSet& ints, int electrons, double s_z) {
            const Index n = ints.size();
            return solve_casci(full_space_hamiltonian(ints, Matrix::Identity(n, n), electrons), s_z).energies[0];
        },
        py::arg("ints"), py::arg("electrons"), py::arg("s_z") = 0.0, "Full CI directly on the DVR sites.");
    m.def(
        "jwci",
        [](const ScfResult& scf, const IntegralSet& ints, Index n_orb, int n_elec) {
            const ActiveSpaceHamiltonian ash = build_active_hamiltonian(scf, ints, n_orb, n_elec);
            const JwciResult r = solve_jwci(build_jw_hamiltonian(ash), 1, JwSector{n_elec, std::nullopt});
            return py::make_tuple(r.energies[0], r.n_expectation[0]);
        },
        py::arg("scf"), py::arg("ints"), py::arg("n_orb"), py::arg("n_elec"),
        "(energy, <N>) from exact diagonalization of the spin-chain Hamiltonian.");

    py::class_<DmrgResult>(m, "DmrgResult")
        .def_readonly("energy", &DmrgResult::energy)
        .def_readonly("sweep_energies", &DmrgResult::sweep_energies)
        .def_readonly("completed_sweep_energies", &DmrgResult::completed_sweep_energies)
        .def_readonly("truncation_errors", &DmrgResult::truncation_errors)
        .def_readonly("n_expectation", &DmrgResult::n_expectation)
        .def_readonly("n_variance", &DmrgResult::n_variance)
        .def_readonly("d_used", &DmrgResult::d_used)
        .def_readonly("half_sweeps", &DmrgResult::half_sweeps)
        .def_readonly("number_flag", &DmrgResult::number_flag);

    m.def(
        "dmrg",
        [](const IntegralSet& ints, int electrons, std::vector<Index> d_schedule, int sweeps, double mu,
           double lanczos_tol) {
            DmrgConfig c;
            c.d_schedule = std::move(d_schedule);
            c.n_sweeps = sweeps;
            c.mu = mu;
            c.n_target = electrons;
            c.lanczos_tol = lanczos_tol;
            py::gil_scoped_release release;
            return dmrg_run(chain_terms(ints), c);
        },
        py::arg("ints"), py::arg("electrons"), py::arg("d_schedule") = std::vector<Index>{10},
        py::arg("sweeps") = 4, py::arg("mu") = 1.0, py::arg("lanczos_tol") = 1e-8);

    m.def(
        "run_config",
        [](const std::string& path, const std::string& methods) {
            const RunConfig cfg = load_config(path);
            const auto chosen = parse_methods(methods);
            Report r;
            {
                py::gil_scoped_release release;
                r = run(cfg, chosen);
            }
            return py::make_tuple(report_json(r).dump(), r.exit_code);
        },
        py::arg("path"), py::arg("methods") = "all", "(report JSON text, exit code) for a config file.");
    m.def("fnv1a_hex", &fnv1a_hex, py::arg("data"));
    m.def("selftest", [] {
        py::list out;
        for (const auto& c : selftest()) {
            out.append(py::make_tuple(c.name, c.passed, c.detail));
        }
        return out;
    });
}
