#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>

#include "qtangle/errors.hpp"
#include "qtangle/io.hpp"
#include "qtangle/monotone.hpp"
#include "qtangle/state.hpp"
#include "qtangle/tangle_mixed.hpp"
#include "qtangle/tangle_pure.hpp"

namespace py = pybind11;
using namespace qtangle;

namespace {

py::dict ensemble_to_dict(const Ensemble& ensemble) {
    py::list members;
    for (const auto& m : ensemble.members) {
        members.append(py::make_tuple(m.p, m.psi.amplitudes()));
    }
    py::dict d;
    d["members"] = members;
    return d;
}

py::dict tau_min_to_dict(const TauMinResult& r) {
    py::dict d;
    d["value"] = r.value;
    d["method"] = r.method == TauMinResult::Method::Analytic ? "analytic" : "convex-roof";
    if (r.witness) d["witness"] = ensemble_to_dict(*r.witness);
    return d;
}

}  // namespace

PYBIND11_MODULE(_qtangle, m) {
    m.doc() = "n-tangle and related entanglement measures for n-qubit states";
    m.attr("__version__") = "0.1.0";

    py::register_exception<Error>(m, "QtangleError");

    py::class_<StateVector>(m, "StateVector")
        .def(py::init<int, ComplexVector>(), py::arg("n"), py::arg("amplitudes"))
        .def_static("from_amplitudes", &StateVector::from_amplitudes, py::arg("amplitudes"))
        .def_static("normalized", &StateVector::normalized, py::arg("n"), py::arg("amplitudes"))
        .def_property_readonly("num_qubits", &StateVector::num_qubits)
        .def_property_readonly("dim", &StateVector::dim)
        .def_property_readonly("amplitudes", &StateVector::amplitudes)
        .def("norm", &StateVector::norm)
        .def("__repr__", [](const StateVector& s) {
            return "<StateVector n=" + std::to_string(s.num_qubits()) + ">";
        });

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init<int, ComplexMatrix>(), py::arg("n"), py::arg("matrix"))
        .def_static("from_pure", &DensityMatrix::from_pure, py::arg("psi"))
        .def_property_readonly("num_qubits", &DensityMatrix::num_qubits)
        .def_property_readonly("dim", &DensityMatrix::dim)
        .def_property_readonly("matrix", &DensityMatrix::matrix)
        .def("__repr__", [](const DensityMatrix& d) {
            return "<DensityMatrix n=" + std::to_string(d.num_qubits()) + ">";
        });

    m.def("make_cat", &make_cat, py::arg("n"));
    m.def("make_w", &make_w, py::arg("n"));
    m.def("make_ghz", &make_ghz);
    m.def("make_singlet_pairs", &make_singlet_pairs, py::arg("pairs"));
    m.def("make_basis", &make_basis, py::arg("bits"));
    m.def("random_state", &random_state, py::arg("n"), py::arg("seed"));
    m.def("tensor_product", &tensor_product, py::arg("a"), py::arg("b"));
    m.def("partial_trace",
          py::overload_cast<const StateVector&, const std::vector<int>&>(&partial_trace),
          py::arg("psi"), py::arg("keep"));
    m.def("partial_trace",
          py::overload_cast<const DensityMatrix&, const std::vector<int>&>(&partial_trace),
          py::arg("rho"), py::arg("keep"));

    m.def("spin_flip", &spin_flip, py::arg("psi"));
    m.def("concurrence_pure", &concurrence_pure, py::arg("psi"));
    m.def("n_tangle", &n_tangle, py::arg("psi"));
    m.def("three_tangle", &three_tangle, py::arg("psi"));
    m.def("epsilon_contraction_oracle", &epsilon_contraction_oracle, py::arg("psi"),
          py::arg("last_pair_qubit") = 0, py::arg("allow_large") = false);
    m.def("permute_qubits", &permute_qubits, py::arg("psi"), py::arg("perm"));
    m.def("tangle_one_vs_rest", &tangle_one_vs_rest, py::arg("psi"), py::arg("qubit"));

    m.def("spin_flip_density", &spin_flip_density, py::arg("rho"));
    m.def(
        "lambda_spectrum",
        [](const DensityMatrix& rho) { return lambda_spectrum(rho).lambdas; },
        py::arg("rho"));
    m.def(
        "tau_min_analytic",
        [](const DensityMatrix& rho) { return tau_min_to_dict(tau_min_analytic(rho)); },
        py::arg("rho"));
    m.def("concurrence_mixed_2q", &concurrence_mixed_2q, py::arg("rho"));
    m.def(
        "convex_roof_minimize",
        [](const DensityMatrix& rho, int restarts, std::uint64_t seed) {
            ConvexRoofConfig cfg;
            cfg.restarts = restarts;
            cfg.seed = seed;
            return tau_min_to_dict(convex_roof_minimize(
                rho, [](const StateVector& s) { return n_tangle(s); }, cfg));
        },
        py::arg("rho"), py::arg("restarts") = 20, py::arg("seed") = 0);
    m.def(
        "check_ckw",
        [](const StateVector& psi) {
            const CkwReport r = check_ckw(psi);
            py::dict d;
            d["lhs"] = r.lhs;
            d["tau_min_12"] = r.tau_min_12;
            d["tau_min_13"] = r.tau_min_13;
            d["three_tangle"] = r.three_tangle;
            d["rhs"] = r.rhs;
            d["residual"] = r.residual;
            return d;
        },
        py::arg("psi"));
    m.def(
        "check_w_equality",
        [](int n) {
            const WeqReport r = check_w_equality(n);
            py::dict d;
            d["n"] = r.n;
            d["pair_concurrences"] = r.pair_concurrences;
            d["pairwise_sum"] = r.pairwise_sum;
            d["one_vs_rest"] = r.one_vs_rest;
            d["residual"] = r.residual;
            return d;
        },
        py::arg("n"));

    py::class_<PovmPair>(m, "PovmPair")
        .def_readonly("A1", &PovmPair::A1)
        .def_readonly("A2", &PovmPair::A2)
        .def_readonly("a", &PovmPair::a)
        .def_readonly("b", &PovmPair::b);
    m.def("make_povm_pair", &make_povm_pair, py::arg("a"), py::arg("b"), py::arg("U1"),
          py::arg("U2"), py::arg("V"));
    m.def("random_povm_pair", &random_povm_pair, py::arg("seed"));
    m.def(
        "apply_povm",
        [](const StateVector& psi, const PovmPair& pair, int party) {
            const auto [o1, o2] = apply_povm(psi, pair, party);
            const auto to_dict = [](const MeasurementOutcome& o) {
                py::dict d;
                d["p"] = o.p;
                d["phi"] = o.phi ? py::cast(*o.phi) : py::none();
                return d;
            };
            return py::make_tuple(to_dict(o1), to_dict(o2));
        },
        py::arg("psi"), py::arg("pair"), py::arg("party"));
    m.def("monotone_trial", &monotone_trial, py::arg("psi"), py::arg("pair"), py::arg("party"));
    m.def(
        "run_monotone_suite",
        [](int n, int trials, std::uint64_t seed, double tol) {
            const MonotoneReport r = run_monotone_suite(n, trials, seed, tol);
            py::dict d;
            d["n"] = r.n;
            d["trials"] = r.trials;
            d["skipped"] = r.skipped;
            d["violations"] = r.violations;
            d["max_ratio"] = r.max_ratio;
            return d;
        },
        py::arg("n"), py::arg("trials"), py::arg("seed"), py::arg("tol") = 1e-9);

    m.def("parse_state", [](const std::string& text, bool normalize) {
        std::istringstream in(text);
        return io::read_qst(in, normalize);
    }, py::arg("text"), py::arg("normalize") = false);
    m.def("serialize_state", &io::to_qst_string, py::arg("psi"));
    m.def("parse_density", [](const std::string& text) {
        std::istringstream in(text);
        return io::read_qdm(in);
    }, py::arg("text"));
    m.def("serialize_density", &io::to_qdm_string, py::arg("rho"));
}
