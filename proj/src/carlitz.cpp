#include "dmf/carlitz.hpp"

#include <sstream>

namespace dmf {

AdditivePoly::AdditivePoly(FieldPtr gf, std::vector<Poly> coeffs)
    : gf_(std::move(gf)), c_(std::move(coeffs)) {
    trim();
}

void AdditivePoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly AdditivePoly::coeff(int64_t i) const {
    if (i < 0 || i >= (int64_t)c_.size()) return Poly(gf_);
    return c_[i];
}

AdditivePoly AdditivePoly::operator+(const AdditivePoly& o) const {
    std::vector<Poly> c(std::max(c_.size(), o.c_.size()), Poly(gf_));
    for (size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + o.coeff(i);
    return AdditivePoly(gf_, std::move(c));
}

AdditivePoly AdditivePoly::compose(const AdditivePoly& o) const {
    // (f o g)_k = sum_{i+j=k} f_i * g_j^(q^i)
    if (c_.empty() || o.c_.empty()) return AdditivePoly(gf_);
    std::vector<Poly> c(c_.size() + o.c_.size() - 1, Poly(gf_));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j].is_zero()) continue;
            c[i + j] = c[i + j] + c_[i] * o.c_[j].frobenius((uint32_t)i);
        }
    }
    return AdditivePoly(gf_, std::move(c));
}

std::string AdditivePoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    int64_t qpow = 1;
    std::vector<std::string> parts;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i].is_zero()) {
            std::string cs = c_[i].str();
            bool plain = cs.find('+') == std::string::npos && cs.find('*') == std::string::npos;
            std::string term;
            if (cs != "1") term = (plain ? cs : "(" + cs + ")") + "*";
            term += "X";
            if (qpow > 1) term += "^" + std::to_string(qpow);
            parts.push_back(term);
        }
        qpow *= gf_->q();
    }
    for (size_t i = parts.size(); i-- > 0;) {
        if (!first) os << "+";
        os << parts[i];
        first = false;
    }
    return os.str();
}

AdditivePoly carlitz_poly(const Poly& a) {
    if (a.is_zero()) throw value_error("carlitz module is not defined at zero");
    const auto& gf = a.field();
    // rho_T = T*X + X^q
    AdditivePoly rho_t(gf, {Poly::variable(gf), Poly::constant(gf, 1)});
    AdditivePoly tpow(gf, {Poly::constant(gf, 1)});  // rho_{T^0} = X
    AdditivePoly acc(gf);
    for (int64_t i = 0; i <= a.degree(); ++i) {
        uint32_t ci = a.coeff(i);
        if (ci) {
            std::vector<Poly> scaled;
            for (const auto& c : tpow.coeffs()) scaled.push_back(c.scaled(ci));
            acc = acc + AdditivePoly(gf, std::move(scaled));
        }
        if (i < a.degree()) tpow = rho_t.compose(tpow);
    }
    return acc;
}

Poly d_sequence(const FieldPtr& gf, uint32_t i) {
    Poly d = Poly::constant(gf, 1);
    Poly t = Poly::variable(gf);
    for (uint32_t k = 1; k <= i; ++k) {
        Poly bracket = t.frobenius(k) - t;  // T^(q^k) - T
        d = bracket * d.frobenius(1);
    }
    return d;
}

std::vector<Scalar> period_alpha(const FieldPtr& gf, int64_t kmax) {
    std::vector<Scalar> alpha{Scalar::one(gf)};
    int64_t qpow = gf->q();
    uint32_t j = 1;
    Poly d = Poly::constant(gf, 1);
    Poly t = Poly::variable(gf);
    while (qpow <= kmax) {
        d = (t.frobenius(j) - t) * d.frobenius(1);
        alpha.push_back(Scalar(Poly::constant(gf, 1), d));
        qpow *= gf->q();
        ++j;
    }
    return alpha;
}

bool poly_is_irreducible(const Poly& f) {
    int64_t d = f.degree();
    if (d < 1) return false;
    if (d == 1) return true;
    const auto& gf = f.field();
    // Rabin: T^(q^d) = T mod f, and gcd(T^(q^(d/l)) - T, f) = 1 for primes l | d
    std::vector<int64_t> checkpoints;
    for (int64_t l = 2; l <= d; ++l)
        if (d % l == 0) {
            bool prime = true;
            for (int64_t m = 2; m * m <= l; ++m)
                if (l % m == 0) prime = false;
            if (prime) checkpoints.push_back(d / l);
        }
    Poly t = Poly::variable(gf);
    Poly h = poly_divmod(t, f).second;
    for (int64_t k = 1; k <= d; ++k) {
        h = poly_divmod(h.frobenius(1), f).second;  // h^q mod f
        for (int64_t cp : checkpoints)
            if (k == cp && poly_gcd(h - t, f).degree() != 0) return false;
        if (k == d && !(h - t).is_zero() && !poly_divides(f, h - t)) return false;
    }
    return true;
}

std::vector<Scalar> torsion_alpha(const Poly& P) {
    if (!P.is_monic()) throw value_error("torsion conductor must be monic");
    if (!poly_is_irreducible(P)) throw value_error("torsion conductor must be irreducible");
    AdditivePoly rho = carlitz_poly(P);
    Scalar pinv = Scalar(P).inverse();
    std::vector<Scalar> alpha;
    for (int64_t j = 0; j <= P.degree(); ++j) alpha.push_back(Scalar(rho.coeff(j)) * pinv);
    return alpha;
}

const XPoly& GossTable::g(int64_t i) const {
    if (i < 1 || i > kmax()) throw value_error("goss index out of range");
    return polys[i - 1];
}

GossTable goss_table(const FieldPtr& gf, const std::vector<Scalar>& alpha, int64_t kmax) {
    if (alpha.empty() || !alpha[0].is_one()) throw value_error("alpha_0 must be 1");
    GossTable tab;
    tab.alpha = alpha;
    if (kmax < 1) return tab;
    tab.polys.reserve(kmax);
    tab.polys.push_back(XPoly::x(gf));
    for (int64_t i = 2; i <= kmax; ++i) {
        XPoly acc = tab.polys[i - 2];  // G_{i-1}
        int64_t qpow = gf->q();
        size_t j = 1;
        while (qpow < i && j < alpha.size()) {
            if (!alpha[j].is_zero()) acc = acc + tab.polys[i - qpow - 1].scaled(alpha[j]);
            if (qpow > kmax / gf->q()) break;
            qpow *= gf->q();
            ++j;
        }
        tab.polys.push_back(acc.shifted_x(1));
    }
    return tab;
}

namespace {

// lift an isobaric X-polynomial to a u-series (indices share one residue class)
USeries xpoly_as_series(const XPoly& g) {
    const auto& gf = g.field();
    int qm1 = (int)gf->q() - 1;
    int type = -1;
    for (size_t i = 0; i < g.coeffs().size(); ++i) {
        if (g.coeffs()[i].is_zero()) continue;
        int cls = (int)(i % qm1);
        if (type == -1)
            type = cls;
        else if (type != cls)
            throw grading_error("X-polynomial is not isobaric");
    }
    if (type == -1) type = 0;
    USeries f(gf, 0, type, kExactPrec);
    for (size_t i = 0; i < g.coeffs().size(); ++i) f.add_term((int64_t)i, g.coeffs()[i]);
    return f;
}

}  // namespace

USeries goss_eval(const XPoly& g, const USeries& s, int64_t out_prec) {
    return series_compose(xpoly_as_series(g), s, out_prec);
}

USeries uscale_mul(const USeries& v, const Poly& a, int64_t out_prec) {
    const auto& gf = v.field();
    if (!a.is_monic()) throw value_error("u-scale requires a monic polynomial");
    int64_t d = a.degree();
    int64_t qd = 1;
    for (int64_t i = 0; i < d; ++i) qd *= gf->q();
    int qm1 = (int)gf->q() - 1;
    int64_t prec = std::min(out_prec, prec_add(v.prec(), qd));
    if (prec >= kExactPrec)
        throw value_error("u-scale multiplication needs a finite output precision");
    USeries out(gf, v.weight(), (int)((v.type() + 1) % qm1), prec);
    out = out.with_level(v.level());
    if (v.terms().empty() || v.order() + qd >= prec) return out;

    AdditivePoly rho = carlitz_poly(a);
    std::vector<Scalar> r;  // r_i = coeff(rho_a, X^(q^i)) as scalars, i < d
    for (int64_t i = 0; i < d; ++i) r.push_back(Scalar(rho.coeff(i)));

    int64_t start = v.order() + qd;
    int64_t count = (prec - 1 - start) / qm1 + 1;
    std::vector<Scalar> w((size_t)count, Scalar::zero(gf));
    const auto& vterms = v.terms();
    for (int64_t idx = 0; idx < count; ++idx) {
        int64_t m = start + idx * qm1;
        Scalar val = Scalar::zero(gf);
        auto it = vterms.find(m - qd);
        if (it != vterms.end()) val = it->second;
        int64_t qi = 1;
        for (int64_t i = 0; i < d; ++i) {
            if (!r[i].is_zero()) {
                int64_t j = m - (qd - qi);
                if (j >= start) val = val - r[i] * w[(size_t)((j - start) / qm1)];
            }
            qi *= gf->q();
        }
        w[(size_t)idx] = val;
    }
    for (int64_t idx = 0; idx < count; ++idx)
        if (!w[(size_t)idx].is_zero()) out.add_term(start + idx * qm1, w[(size_t)idx]);
    return out;
}

USeries u_scale(const Poly& a, int64_t prec) {
    const auto& gf = a.field();
    if (a.is_zero()) throw value_error("u-scale at zero");
    return uscale_mul(USeries::one(gf), a, prec);
}

USeries compose_uscale(const USeries& f, const Poly& a, int64_t out_prec) {
    const auto& gf = f.field();
    int64_t d = a.degree();
    int64_t qd = 1;
    for (int64_t i = 0; i < d; ++i) qd *= gf->q();
    int64_t prec = std::min(out_prec, prec_mul(f.prec(), qd));
    USeries out(gf, f.weight(), f.type(), prec);
    out = out.with_level(f.level());
    USeries vj = USeries::one(gf);
    int64_t cur = 0;
    for (const auto& [j, c] : f.terms()) {
        if (j > (prec - 1) / qd) break;
        while (cur < j) {
            vj = uscale_mul(vj, a, prec);
            ++cur;
        }
        for (const auto& [m, b] : vj.terms()) {
            if (m >= prec) break;
            out.add_term(m, c * b);
        }
    }
    return out;
}

}  // namespace dmf
