#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dmf/level.hpp"
#include "dmf/spectral.hpp"
#include "dmf/verify.hpp"

namespace py = pybind11;
using namespace dmf;

namespace {

FieldPtr make_field(uint32_t q) {
    uint32_t base = 0;
    for (uint32_t cand = 2; cand <= q; ++cand)
        if (q % cand == 0) {
            base = cand;
            break;
        }
    uint32_t v = q, e = 0;
    while (base && v % base == 0) {
        v /= base;
        ++e;
    }
    if (!base || v != 1) throw value_error("q must be a prime power");
    return GF::make(base, e);
}

std::vector<std::pair<int64_t, std::string>> series_coeffs(const USeries& s) {
    std::vector<std::pair<int64_t, std::string>> out;
    for (const auto& [i, v] : s.terms()) out.emplace_back(i, v.str());
    return out;
}

py::dict series_dict(const USeries& s, const std::string& form) {
    py::dict d;
    d["form"] = form;
    d["q"] = s.field()->q();
    d["k"] = s.weight();
    d["l"] = s.type();
    d["level"] = s.level().str();
    d["certified_prec"] = s.prec();
    d["coefficients"] = series_coeffs(s);
    return d;
}

GeneratorId make_id(const FieldPtr& gf, const std::string& form, const std::string& P) {
    GeneratorId id;
    if (form.rfind("gd:", 0) == 0) {
        id.name = "gd";
        id.d = (uint32_t)std::stoul(form.substr(3));
        return id;
    }
    id.name = form;
    if (form == "E_P") {
        if (P.empty()) throw value_error("E_P needs P");
        id.P = poly_parse(gf, P);
    }
    return id;
}

}  // namespace

PYBIND11_MODULE(dmfpy, m) {
    m.doc() = "exact Drinfeld modular form expansions, Hecke operators, and verification suites";

    py::register_exception<precision_error>(m, "PrecisionError", PyExc_ValueError);
    py::register_exception<resource_error>(m, "ResourceError", PyExc_RuntimeError);

    m.def(
        "expand",
        [](const std::string& form, uint32_t q, int64_t prec, const std::string& P) {
            auto gf = make_field(q);
            FormContext ctx(gf);
            USeries s = ctx.generator(make_id(gf, form, P), prec);
            return series_dict(s, form);
        },
        py::arg("form"), py::arg("q") = 3, py::arg("prec") = 30, py::arg("P") = "",
        "u-expansion of a generator form");

    m.def(
        "monomial",
        [](int64_t a, int64_t b, int64_t c, uint32_t q, int64_t prec) {
            auto gf = make_field(q);
            FormContext ctx(gf);
            return series_dict(ctx.monomial(a, b, c, prec),
                               "g1^" + std::to_string(a) + "*Delta^" + std::to_string(b) + "*h^" +
                                   std::to_string(c));
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("q") = 3, py::arg("prec") = 30,
        "u-expansion of g1^a Delta^b h^c");

    m.def(
        "hecke",
        [](const std::string& op, const std::string& P, const std::string& form, uint32_t q,
           int64_t prec, const std::string& formP) {
            auto gf = make_field(q);
            FormContext ctx(gf);
            PrimeP prime = PrimeP::make(poly_parse(gf, P));
            USeries f = ctx.generator(make_id(gf, form, formP), prec * prime.qd);
            USeries img;
            if (op == "T") img = op_T(f, prime, prec);
            else if (op == "U") img = op_U(f, prime, prec);
            else if (op == "deltaP") img = op_delta_P(f.truncated(prec), prime, prec);
            else throw value_error("op must be T, U, or deltaP");
            return series_dict(img, op + "_" + P + "(" + form + ")");
        },
        py::arg("op"), py::arg("P"), py::arg("form"), py::arg("q") = 3, py::arg("prec") = 30,
        py::arg("form_P") = "", "apply a Hecke or degeneracy operator to a generator form");

    m.def(
        "matrix",
        [](uint32_t q, const std::string& P, int64_t k, int l, bool cusp) {
            auto gf = make_field(q);
            FormContext ctx(gf);
            HeckeReport r = hecke_matrix(ctx, PrimeP::make(poly_parse(gf, P)), k, l, cusp);
            py::dict d;
            d["q"] = r.q;
            d["P"] = r.P.str();
            d["k"] = r.k;
            d["l"] = r.l;
            d["dim"] = r.basis.dim();
            std::vector<std::vector<std::string>> mat;
            for (const auto& row : r.mat) {
                std::vector<std::string> jr;
                for (const auto& v : row) jr.push_back(v.str());
                mat.push_back(jr);
            }
            d["matrix"] = mat;
            d["char_poly"] = r.char_poly.str();
            d["min_poly"] = r.min_poly.str();
            py::dict verdicts;
            verdicts["kernel_trivial"] = r.kernel_trivial;
            verdicts["no_pm_Pk2_eigenvalue"] = r.no_pm_pk2;
            verdicts["diagonalizable"] = r.diagonalizable;
            verdicts["id_minus_PkT2_bijective"] = r.bijective;
            d["verdicts"] = verdicts;
            d["certified_prec"] = r.certified_prec;
            return d;
        },
        py::arg("q"), py::arg("P"), py::arg("k"), py::arg("l"), py::arg("cusp") = true,
        "T_p matrix on the monomial basis with characteristic/minimal polynomial and verdicts");

    m.def(
        "goss",
        [](const std::string& lattice, uint32_t q, int64_t kmax) {
            auto gf = make_field(q);
            std::vector<Scalar> alpha;
            if (lattice.rfind("torsion:", 0) == 0)
                alpha = torsion_alpha(poly_parse(gf, lattice.substr(8)));
            else if (lattice == "period")
                alpha = period_alpha(gf, kmax);
            else
                throw value_error("lattice must be 'period' or 'torsion:<P>'");
            GossTable tab = goss_table(gf, alpha, kmax);
            std::vector<std::string> rows;
            for (int64_t i = 1; i <= tab.kmax(); ++i) rows.push_back(tab.g(i).str());
            return rows;
        },
        py::arg("lattice"), py::arg("q") = 3, py::arg("kmax") = 10,
        "Goss polynomial table as canonical polynomial text");

    m.def(
        "carlitz",
        [](const std::string& a, uint32_t q) {
            auto gf = make_field(q);
            return carlitz_poly(poly_parse(gf, a)).str();
        },
        py::arg("a"), py::arg("q") = 3, "rho_a as an additive polynomial in X");

    m.def(
        "verify",
        [](const std::string& suite, uint32_t q, int64_t prec, uint64_t seed, const std::string& P,
           const std::string& P1, const std::string& P2, const std::string& Q, int64_t kmax) {
            auto gf = make_field(q);
            RunConfig cfg;
            cfg.p = gf->p();
            cfg.r = gf->r();
            cfg.prec = prec;
            cfg.seed = seed;
            cfg.P = P;
            cfg.P1 = P1;
            cfg.P2 = P2;
            cfg.Q = Q;
            cfg.kmax = kmax;
            SuiteReport rep = run_suite(suite, cfg);
            return py::module_::import("json").attr("loads")(report_to_json(rep));
        },
        py::arg("suite"), py::arg("q") = 3, py::arg("prec") = 0, py::arg("seed") = 0x5eed,
        py::arg("P") = "", py::arg("P1") = "", py::arg("P2") = "", py::arg("Q") = "",
        py::arg("kmax") = 0, "run a named verification suite and return the report");

    m.def("suites", [] { return suite_names(); }, "names of the verification suites");
}
