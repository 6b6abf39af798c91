// Python bindings for the main operations: branch series with invariants,
// weight-one branches, interpolated special values, the pairing-identity
// sweep, and the database evidence check. Big integers cross the boundary as
// native Python ints.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "iwasawa/kl.hpp"
#include "iwasawa/lmfdb.hpp"
#include "iwasawa/lvalues.hpp"
#include "iwasawa/reciprocity.hpp"
#include "iwasawa/weight_one.hpp"

namespace py = pybind11;
using namespace iwasawa;

namespace {

py::int_ to_py(const mpz_class& z) {
    PyObject* o = PyLong_FromString(z.get_str().c_str(), nullptr, 10);
    if (!o) throw py::error_already_set();
    return py::reinterpret_steal<py::int_>(o);
}

void put_series(py::dict& d, const IwasawaSeries<Zp>& F) {
    py::list coeffs, precs;
    for (long i = 0; i < F.D(); ++i) {
        const Zp& a = F.coeff(i);
        if (a.is_exact_zero()) {
            coeffs.append(py::int_(0));
            precs.append(py::int_(-1));  // -1: exact
        } else {
            coeffs.append(to_py(a.residue()));
            precs.append(py::int_(a.prec()));
        }
    }
    d["coefficients"] = coeffs;
    d["coefficient_moduli"] = precs;
}

py::dict kl_branch_py(const DirichletChar& eta, long p, long D, long M, bool verify) {
    KLBranch b = kl_series(eta, p, D, M, verify);
    SeriesInvariants inv = invariants(b.series);
    py::dict d;
    d["eta"] = b.eta.label();
    d["p"] = p;
    d["pole"] = b.pole;
    d["mu"] = inv.mu;
    d["lambda"] = inv.lambda;
    d["certified"] = inv.certified;
    put_series(d, b.series);
    return d;
}

py::dict weight_one_branch_py(const DirichletChar& quad, long p, long j, long D, long M) {
    WeightOneBranch b = weight_one_branch(quad, p, j, D, M);
    py::dict d;
    d["p"] = p;
    d["j"] = j;
    d["exact_zero"] = b.exact_zero;
    d["exceptional"] = b.exceptional;
    d["predicted_mu"] = b.predicted_mu;
    d["predicted_lambda"] = b.predicted_lambda;
    if (b.exact_zero) {
        d["mu"] = py::none();
        d["lambda"] = py::none();
    } else {
        SeriesInvariants inv = invariants(b.series);
        d["mu"] = inv.mu;
        d["lambda"] = inv.lambda;
        d["certified"] = inv.certified;
        d["vanishes_at_origin"] = b.series.coeff(0).is_zero_at_precision();
        put_series(d, b.series);
    }
    return d;
}

py::dict lp_value_py(const DirichletChar& eta, long n, long p, long prec) {
    Zp v = lp_value_tame(eta, n, p, prec);
    long den = v.den_exp();
    Zp w = den > 0 ? v.mul_ratio(pow_p(p, den), 1) : v;
    py::dict d;
    d["numerator"] = to_py(w.residue());  // value = numerator / p^den_exp
    d["den_exp"] = den;
    d["prec"] = v.prec();
    return d;
}

py::list reciprocity_sweep_py(const DirichletChar& chi, long p, long r, long prec) {
    std::vector<ReciprocityReport> reps = reciprocity_sweep(chi, p, r, prec);
    py::list out;
    for (const ReciprocityReport& rep : reps) {
        py::dict d;
        d["psi"] = rep.psi.label();
        d["order"] = rep.psi.order();
        d["agreement"] = rep.agree;
        d["sign"] = rep.sign;
        d["pre_trace_equal"] = rep.pre_equal;
        out.append(d);
    }
    return out;
}

py::dict twist_check_py(const DirichletChar& eta, const DirichletChar& psi, long p, long D,
                        long M) {
    TwistCheck tc = kl_twist_check(eta, psi, p, D, M);
    py::dict d;
    d["pass"] = tc.pass;
    d["agreement"] = tc.agree;
    d["required"] = tc.required;
    return d;
}

py::dict gorenstein_py(long N, long p, std::optional<DirichletChar> chi, bool offline) {
    DirichletChar c = chi ? *chi : quadratic_char(N);
    FetchOptions opt = fetch_options_from_env();
    opt.offline = opt.offline || offline;
    GorensteinEvidence ev = gorenstein_evidence(N, p, c, opt);
    py::dict d;
    d["verdict"] = ev.verdict;
    d["dim"] = ev.dim;
    d["cm_forms"] = ev.cmForms;
    d["zp_rank_one"] = ev.zpRankOne;
    d["citations"] = ev.citations;
    return d;
}

py::tuple series_invariants_py(long p, long prec, const std::vector<py::int_>& coeffs) {
    std::vector<Zp> c;
    c.reserve(coeffs.size());
    for (const py::int_& v : coeffs) {
        py::str s = py::reinterpret_steal<py::str>(PyObject_Str(v.ptr()));
        if (!s.ptr()) throw py::error_already_set();
        c.emplace_back(p, prec, mpz_class(static_cast<std::string>(s)));
    }
    SeriesInvariants inv = invariants(IwasawaSeries<Zp>(std::move(c)));
    return py::make_tuple(inv.mu, inv.lambda, inv.certified);
}

}  // namespace

PYBIND11_MODULE(_iwasawa, m) {
    m.doc() = "Kubota-Leopoldt p-adic L-functions as Iwasawa power series";

    py::register_exception<precision_error>(m, "PrecisionError", PyExc_RuntimeError);
    py::register_exception<data_error>(m, "DataError", PyExc_RuntimeError);

    py::class_<DirichletChar>(m, "DirichletChar")
        .def(py::init<long>(), py::arg("modulus") = 1)
        .def_static("from_conrey", &DirichletChar::from_conrey, py::arg("modulus"),
                    py::arg("conrey_n"))
        .def_static("omega_like", &DirichletChar::omega_like, py::arg("p"))
        .def_property_readonly("modulus", &DirichletChar::modulus)
        .def_property_readonly("conductor", &DirichletChar::conductor)
        .def_property_readonly("order", &DirichletChar::order)
        .def_property_readonly("is_even", &DirichletChar::is_even)
        .def("label", &DirichletChar::label)
        .def("primitive", &DirichletChar::primitive)
        .def("inverse", &DirichletChar::inverse)
        .def("pow", &DirichletChar::pow, py::arg("k"))
        .def("__mul__", &DirichletChar::operator*)
        .def("__eq__", &DirichletChar::operator==)
        .def("__repr__",
             [](const DirichletChar& c) { return "DirichletChar(" + c.label() + ")"; });

    m.def("quadratic_char", &quadratic_char, py::arg("N"),
          "the order-2 character of conductor N, when unique");
    m.def("even_wild_characters", &even_wild_characters, py::arg("p"), py::arg("r"),
          "even nontrivial characters of conductor exactly p^r");

    m.def("kl_branch", &kl_branch_py, py::arg("eta"), py::arg("p"), py::arg("D") = 24,
          py::arg("M") = 12, py::arg("verify") = true,
          "branch series of the p-adic L-function with certified invariants");
    m.def("weight_one_branch", &weight_one_branch_py, py::arg("quad"), py::arg("p"),
          py::arg("j"), py::arg("D") = 24, py::arg("M") = 12,
          "branch j of the weight-one p-adic L-function of the quadratic character");
    m.def("lp_value", &lp_value_py, py::arg("eta"), py::arg("n"), py::arg("p"),
          py::arg("prec"),
          "interpolated special value at 1-n as numerator / p^den_exp mod p^prec");
    m.def("twist_check", &twist_check_py, py::arg("eta"), py::arg("psi"), py::arg("p"),
          py::arg("D") = 24, py::arg("M") = 12,
          "verify the wild twist identity in the ramified ring");
    m.def("reciprocity_sweep", &reciprocity_sweep_py, py::arg("chi"), py::arg("p"),
          py::arg("r"), py::arg("prec") = 0,
          "pairing identity over every even nontrivial character of conductor p^r");
    m.def("gorenstein_evidence", &gorenstein_py, py::arg("N"), py::arg("p"),
          py::arg("chi") = py::none(), py::arg("offline") = true,
          "database evidence for the rank-one CM hypothesis at (N, p)");
    m.def("series_invariants", &series_invariants_py, py::arg("p"), py::arg("prec"),
          py::arg("coefficients"),
          "(mu, lambda, certified) of the series with the given integer coefficients");
}
