#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "dmf/level.hpp"
#include "dmf/spectral.hpp"
#include "dmf/verify.hpp"

using namespace dmf;
using nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct GlobalOpts {
    uint32_t q = 0;
    uint32_t p = 3;
    uint32_t r = 1;
    std::string modulus;
    int64_t prec = 0;
    std::string format = "json";
    uint64_t seed = 0x5eed;
    int64_t degree_limit = 100000;
    std::string out;

    void resolve() {
        if (q) {
            // factor q = p^r with p prime
            uint32_t base = 0;
            for (uint32_t cand = 2; cand <= q; ++cand) {
                if (q % cand == 0) {
                    base = cand;
                    break;
                }
            }
            uint32_t v = q, e = 0;
            while (v % base == 0) {
                v /= base;
                ++e;
            }
            if (v != 1) throw value_error("q must be a prime power");
            p = base;
            r = e;
        }
    }

    RunConfig run_config() const {
        RunConfig cfg;
        cfg.p = p;
        cfg.r = r;
        cfg.prec = prec;
        cfg.seed = seed;
        cfg.degree_limit = degree_limit;
        cfg.format = format;
        if (!modulus.empty()) {
            auto gfp = GF::make(p, 1);
            Poly m = poly_parse(gfp, modulus);
            for (int64_t i = 0; i <= m.degree(); ++i) cfg.modulus.push_back(m.coeff(i));
        }
        return cfg;
    }

    FieldPtr field() const { return run_config().make_field(); }
};

void emit(const GlobalOpts& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream os(g.out);
        os << text << "\n";
    }
}

ordered_json series_json(const USeries& s, const std::string& form) {
    ordered_json j;
    j["form"] = form;
    j["q"] = s.field()->q();
    j["k"] = s.weight();
    j["l"] = s.type();
    j["level"] = s.level().str();
    j["certified_prec"] = s.prec();
    ordered_json coeffs = ordered_json::array();
    for (const auto& [i, v] : s.terms()) coeffs.push_back(ordered_json::array({i, v.str()}));
    j["coefficients"] = coeffs;
    return j;
}

GeneratorId parse_form_name(const FieldPtr& gf, const std::string& name, const std::string& pstr) {
    GeneratorId id;
    if (name.rfind("gd:", 0) == 0) {
        id.name = "gd";
        id.d = (uint32_t)std::stoul(name.substr(3));
        return id;
    }
    id.name = name;
    if (name == "E_P") {
        if (pstr.empty()) throw value_error("E_P needs --P");
        id.P = poly_parse(gf, pstr);
    }
    return id;
}

// "g1^2*Delta*h^3"-style monomials or a single generator name
USeries parse_form_series(FormContext& ctx, const std::string& text, const std::string& pstr,
                          int64_t prec) {
    const auto& gf = ctx.field();
    int64_t a = 0, b = 0, c = 0;
    bool monomial = true;
    size_t i = 0;
    while (i < text.size() && monomial) {
        size_t star = text.find('*', i);
        std::string tok = text.substr(i, star == std::string::npos ? star : star - i);
        size_t caret = tok.find('^');
        std::string base = tok.substr(0, caret);
        int64_t e = 1;
        if (caret != std::string::npos) e = std::stoll(tok.substr(caret + 1));
        if (base == "g1") a += e;
        else if (base == "Delta") b += e;
        else if (base == "h") c += e;
        else monomial = false;
        if (star == std::string::npos) break;
        i = star + 1;
    }
    if (monomial && (a || b || c)) return ctx.monomial(a, b, c, prec);
    return ctx.generator(parse_form_name(gf, text, pstr), prec);
}

int cmd_expand(const GlobalOpts& g, const std::string& form, const std::string& pstr) {
    FormContext ctx(g.field());
    int64_t prec = g.prec ? g.prec : 30;
    USeries s = parse_form_series(ctx, form, pstr, prec);
    if (g.format == "text") {
        std::ostringstream os;
        series_write(os, s);
        emit(g, os.str());
    } else {
        emit(g, series_json(s, form).dump(2));
    }
    return kExitPass;
}

int cmd_carlitz(const GlobalOpts& g, const std::string& a) {
    auto gf = g.field();
    AdditivePoly rho = carlitz_poly(poly_parse(gf, a));
    if (g.format == "text") {
        emit(g, rho.str());
    } else {
        ordered_json j;
        j["a"] = a;
        j["rho"] = rho.str();
        ordered_json coeffs = ordered_json::array();
        for (int64_t i = 0; i <= rho.tau_degree(); ++i) coeffs.push_back(rho.coeff(i).str());
        j["coefficients"] = coeffs;
        emit(g, j.dump(2));
    }
    return kExitPass;
}

int cmd_goss(const GlobalOpts& g, const std::string& lattice, int64_t kmax) {
    auto gf = g.field();
    std::vector<Scalar> alpha;
    std::string tag = lattice;
    if (lattice.rfind("torsion:", 0) == 0) {
        alpha = torsion_alpha(poly_parse(gf, lattice.substr(8)));
    } else if (lattice == "period") {
        alpha = period_alpha(gf, kmax);
    } else {
        throw value_error("lattice must be 'period' or 'torsion:<P>'");
    }
    GossTable tab = goss_table(gf, alpha, kmax);
    if (g.format == "text") {
        std::ostringstream os;
        for (int64_t i = 1; i <= tab.kmax(); ++i)
            os << "G_" << i << " = " << tab.g(i).str() << "\n";
        emit(g, os.str());
    } else {
        ordered_json j;
        j["lattice"] = tag;
        j["kmax"] = kmax;
        ordered_json rows = ordered_json::array();
        for (int64_t i = 1; i <= tab.kmax(); ++i) rows.push_back(tab.g(i).str());
        j["polys"] = rows;
        emit(g, j.dump(2));
    }
    return kExitPass;
}

int cmd_hecke(const GlobalOpts& g, const std::string& op, const std::string& pstr,
              const std::string& form) {
    auto gf = g.field();
    FormContext ctx(gf);
    PrimeP P = PrimeP::make(poly_parse(gf, pstr));
    int64_t out = g.prec ? g.prec : 30;
    USeries f = parse_form_series(ctx, form, "", out * (op == "deltaP" ? 1 : P.qd));
    USeries img;
    if (op == "T") img = op_T(f, P, out);
    else if (op == "U") img = op_U(f, P, out);
    else if (op == "deltaP") img = op_delta_P(f, P, out);
    else throw value_error("op must be T, U, or deltaP");
    emit(g, series_json(img, op + "_" + pstr + "(" + form + ")").dump(2));
    return kExitPass;
}

int cmd_matrix(const GlobalOpts& g, const std::string& pstr, int64_t k, int64_t l, bool cusp) {
    auto gf = g.field();
    FormContext ctx(gf);
    PrimeP P = PrimeP::make(poly_parse(gf, pstr));
    HeckeReport rep = hecke_matrix(ctx, P, k, (int)l, cusp);
    ordered_json j;
    j["q"] = rep.q;
    j["P"] = rep.P.str();
    j["k"] = rep.k;
    j["l"] = rep.l;
    j["cusp"] = rep.cusp;
    ordered_json basis = ordered_json::array();
    for (auto [a, b] : rep.basis.exps)
        basis.push_back("g1^" + std::to_string(a) + "*Delta^" + std::to_string(b) + "*h^" +
                        std::to_string(rep.l));
    j["basis"] = basis;
    ordered_json mat = ordered_json::array();
    for (const auto& row : rep.mat) {
        ordered_json jr = ordered_json::array();
        for (const auto& v : row) jr.push_back(v.str());
        mat.push_back(jr);
    }
    j["matrix"] = mat;
    j["char_poly"] = rep.char_poly.str();
    j["min_poly"] = rep.min_poly.str();
    ordered_json verdicts;
    verdicts["kernel_trivial"] = rep.kernel_trivial;
    verdicts["no_pm_Pk2_eigenvalue"] = rep.no_pm_pk2;
    verdicts["diagonalizable"] = rep.diagonalizable;
    verdicts["id_minus_PkT2_bijective"] = rep.bijective;
    j["verdicts"] = verdicts;
    j["certified_prec"] = rep.certified_prec;
    emit(g, j.dump(2));
    return kExitPass;
}

int cmd_verify(const GlobalOpts& g, const std::string& suite, const std::string& pstr,
               const std::string& p1, const std::string& p2, const std::string& qstr,
               int64_t kmax) {
    RunConfig cfg = g.run_config();
    cfg.P = pstr;
    cfg.P1 = p1;
    cfg.P2 = p2;
    cfg.Q = qstr;
    cfg.kmax = kmax;
    SuiteReport rep = run_suite(suite, cfg);
    emit(g, g.format == "text" ? report_to_text(rep) : report_to_json(rep));
    return rep.all_pass() ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Drinfeld modular forms: expansions, Hecke operators, verification"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--q", g.q, "field size q = p^r (prime power)");
    app.add_option("--p", g.p, "characteristic (odd prime)");
    app.add_option("--r", g.r, "extension degree");
    app.add_option("--modulus", g.modulus, "modulus for r > 1, e.g. 'T^2+1' read in w");
    app.add_option("--prec", g.prec, "output precision (exclusive coefficient bound)");
    app.add_option("--format", g.format, "json|text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", g.seed, "seed for randomized property checks");
    app.add_option("--degree-limit", g.degree_limit, "polynomial degree ceiling (resource guard)");
    app.add_option("--out", g.out, "write the report to a file");

    std::string form = "h", pstr, op = "T", lattice = "torsion:T", p1, p2, qstr;
    int64_t kmax = 0, k = 4, l = 1;
    bool cusp = false;

    auto* cexpand = app.add_subcommand("expand", "u-expansion of a generator form");
    cexpand->add_option("--form", form, "g1 | gd:<d> | h | Delta | E | E_P | Delta_T | Delta_W | monomial");
    cexpand->add_option("--P", pstr, "prime for E_P");

    auto* ccarlitz = app.add_subcommand("carlitz", "rho_a as an additive polynomial");
    std::string apoly = "T";
    ccarlitz->add_option("--a", apoly, "element of F_q[T]");

    auto* cgoss = app.add_subcommand("goss", "Goss polynomial table");
    cgoss->add_option("--lattice", lattice, "period | torsion:<P>");
    cgoss->add_option("--kmax", kmax, "table size")->required();

    auto* checke = app.add_subcommand("hecke", "apply T_p, U_p, or delta_P to a form");
    checke->add_option("--op", op, "T | U | deltaP");
    checke->add_option("--P", pstr, "monic prime")->required();
    checke->add_option("--form", form, "generator or monomial");

    auto* cmatrix = app.add_subcommand("matrix", "T_p matrix on a monomial basis");
    cmatrix->add_option("--P", pstr, "monic prime")->required();
    cmatrix->add_option("--k", k, "weight")->required();
    cmatrix->add_option("--l", l, "type")->required();
    cmatrix->add_flag("--cusp", cusp, "cusp subspace");

    auto* cverify = app.add_subcommand("verify", "run a named verification suite");
    std::string suite;
    cverify->add_option("suite", suite, "suite name")->required();
    cverify->add_option("--P", pstr, "prime override");
    cverify->add_option("--P1", p1, "first prime override");
    cverify->add_option("--P2", p2, "second prime override");
    cverify->add_option("--Q", qstr, "second prime for the counterexample");
    cverify->add_option("--kmax", kmax, "sweep bound override");

    auto* clist = app.add_subcommand("suites", "list the verification suites");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        g.resolve();
        if (cexpand->parsed()) return cmd_expand(g, form, pstr);
        if (ccarlitz->parsed()) return cmd_carlitz(g, apoly);
        if (cgoss->parsed()) return cmd_goss(g, lattice, kmax);
        if (checke->parsed()) return cmd_hecke(g, op, pstr, form);
        if (cmatrix->parsed()) return cmd_matrix(g, pstr, k, l, cusp);
        if (cverify->parsed()) return cmd_verify(g, suite, pstr, p1, p2, qstr, kmax);
        if (clist->parsed()) {
            for (const auto& n : suite_names()) std::cout << n << "\n";
            return kExitPass;
        }
    } catch (const resource_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
