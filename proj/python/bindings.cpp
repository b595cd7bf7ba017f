#include "weilzeta/errors.hpp"
#include "weilzeta/hecke.hpp"
#include "weilzeta/series.hpp"
#include "weilzeta/weil.hpp"
#include "weilzeta/zeta.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace wz;

namespace {

EvenLattice lattice_of(const std::vector<std::vector<long>>& gram) {
    EvenLattice L;
    for (const auto& row : gram) {
        std::vector<mpz_class> r;
        for (long x : row) r.emplace_back(x);
        L.gram.push_back(r);
    }
    L.validate();
    return L;
}

std::vector<std::vector<cd>> to_rows(const WeilMatrix& m) {
    std::vector<std::vector<cd>> out(m.dim(), std::vector<cd>(m.dim()));
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) out[i][j] = m.entry_cd(i, j);
    return out;
}

}  // namespace

PYBIND11_MODULE(weilzeta_py, m) {
    m.doc() = "Weil representations, vector-valued Eisenstein series and Hecke operators";

    py::register_exception<Error>(m, "Error");

    py::class_<FQM>(m, "DiscriminantForm")
        .def(py::init([](const std::vector<std::vector<long>>& gram) { return discriminant_form(lattice_of(gram)); }),
             py::arg("gram"))
        .def_property_readonly("order", &FQM::order)
        .def_property_readonly("level", &FQM::level)
        .def_property_readonly("signature_mod_8", &FQM::signature_mod_8)
        .def_property_readonly("elementary_divisors", &FQM::elementary_divisors)
        .def("q", [](const FQM& D, long x) { return D.q(x).get_d(); })
        .def("gauss_sum", [](const FQM& D, long d) { return gauss_sum(D, d).to_cd(); }, py::arg("d") = 1)
        .def("milgram_holds", &milgram_holds)
        .def("is_anisotropic", &is_anisotropic)
        .def("__repr__", &FQM::describe);

    m.def("builtin", [](const std::string& name) {
        if (name == "a2") return discriminant_form(lattice_A2());
        if (name == "e8") return discriminant_form(lattice_E8());
        if (name == "diag22") return discriminant_form(lattice_diag22());
        if (name == "a2a2") return discriminant_form(lattice_A2A2());
        throw py::value_error("unknown lattice " + name);
    });

    m.def(
        "weil_matrix",
        [](const FQM& D, int genus, const std::string& word) { return to_rows(rho_word(D, parse_word(genus, word))); },
        py::arg("module"), py::arg("genus"), py::arg("word"));
    m.def("coset_count", [](const std::string& kind, long n) {
        if (kind == "genus1") return genus1_cosets(n).size();
        if (kind == "genus2") return genus2_cosets(n).size();
        if (kind == "hecke") return hecke_right_cosets(n, Variant::Dprime).size();
        throw py::value_error("unknown coset kind " + kind);
    });

    m.def("eisenstein1", py::overload_cast<const FQM&, int, cd, cd, long, bool>(&eisenstein1), py::arg("module"),
          py::arg("l"), py::arg("s"), py::arg("tau"), py::arg("height"), py::arg("dual") = false);
    m.def(
        "pullback_residual",
        [](const FQM& D, int l, cd s, cd tau, cd zeta, long dmax) {
            return pullback_residual(D, l, s, tau, zeta, dmax, PullbackTrunc{});
        },
        py::arg("module"), py::arg("l"), py::arg("s"), py::arg("tau"), py::arg("zeta"), py::arg("dmax"));

    m.def("ramanujan_tau", [](long T) {
        std::vector<long> out;
        for (const auto& x : ramanujan_tau(T)) out.push_back(x.get_si());
        return out;
    });
    m.def(
        "delta_eigenvalue", [](long d) { return eigenvalue(discriminant_form(lattice_E8()), delta_qexpansion(60), d).lambda; },
        py::arg("d"));
    m.def("delta_value", [](cd tau) { return eval_form(delta_qexpansion(60), tau)[0]; }, py::arg("tau"));

    m.def("C_const", &C_const, py::arg("l"), py::arg("s"));
    m.def("xi_constant", &xi_constant, py::arg("l"), py::arg("s"), py::arg("prime_bound"), py::arg("module"));
    m.def(
        "standard_zeta",
        [](const std::map<long, cd>& eigs, cd s) { return standard_zeta(eigs, s).value; }, py::arg("eigenvalues"),
        py::arg("s"));
    m.def(
        "local_factor_agreement",
        [](const FQM& D, long p, int samples, unsigned seed) {
            std::map<std::string, bool> out;
            for (const auto& c : check_local_factors(local_data(D, p), samples, seed))
                out[label_str(c.label.sigma, c.label.part, c.label.k)] = c.identity;
            return out;
        },
        py::arg("module"), py::arg("p"), py::arg("samples") = 20, py::arg("seed") = 1);
}
