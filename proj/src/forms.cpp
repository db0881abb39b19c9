#include "dmf/forms.hpp"

namespace dmf {

namespace {

// iterate all monic a with q^deg(a) < prec
template <class Fn>
void for_each_monic(const FieldPtr& gf, int64_t prec, Fn&& fn) {
    uint32_t q = gf->q();
    int64_t qd = 1;
    for (int64_t d = 0; qd < prec; ++d) {
        uint64_t count = 1;
        for (int64_t i = 0; i < d; ++i) count *= q;
        for (uint64_t code = 0; code < count; ++code) {
            std::vector<uint32_t> c(d + 1, 0);
            uint64_t t = code;
            for (int64_t i = 0; i < d; ++i) {
                c[i] = (uint32_t)(t % q);
                t /= q;
            }
            c[d] = 1;
            fn(Poly(gf, std::move(c)), qd);
        }
        if (qd > prec / q) break;
        qd *= q;
    }
}

Poly bracket(const FieldPtr& gf, uint32_t i) {  // T^(q^i) - T
    Poly t = Poly::variable(gf);
    return t.frobenius(i) - t;
}

Poly l_poly(const FieldPtr& gf, uint32_t d) {  // L_d = [d]...[1]
    Poly l = Poly::constant(gf, 1);
    for (uint32_t i = 1; i <= d; ++i) l = l * bracket(gf, i);
    return l;
}

}  // namespace

int64_t GeneratorId::weight(uint32_t q) const {
    if (name == "g1") return q - 1;
    if (name == "gd") {
        int64_t w = 1;
        for (uint32_t i = 0; i < d; ++i) w *= q;
        return w - 1;
    }
    if (name == "h") return q + 1;
    if (name == "Delta") return (int64_t)q * q - 1;
    if (name == "E" || name == "E_P") return 2;
    if (name == "Delta_T" || name == "Delta_W") return q - 1;
    throw value_error("unknown generator: " + name);
}

int GeneratorId::type(uint32_t q) const {
    if (name == "h" || name == "E" || name == "E_P") return 1 % (int)(q - 1);
    return 0;
}

Poly GeneratorId::level(const FieldPtr& gf) const {
    if (name == "E_P") return P;
    if (name == "Delta_T" || name == "Delta_W") return Poly::variable(gf);
    return Poly::constant(gf, 1);
}

std::string GeneratorId::key() const {
    if (name == "gd") return "gd:" + std::to_string(d);
    if (name == "E_P") return "E_P:" + P.str();
    return name;
}

template <class F>
USeries FormContext::cached(const std::string& key, int64_t prec, F&& build) {
    auto it = series_cache_.find(key);
    if (it != series_cache_.end() && it->second.prec() >= prec)
        return it->second.truncated(prec);
    USeries s = build(prec);
    series_cache_[key] = s;
    return s.truncated(prec);
}

USeries FormContext::build_E(int64_t prec) {
    return cached("E", prec, [&](int64_t n) {
        USeries e(gf_, 2, 1 % ((int)gf_->q() - 1), n);
        for_each_monic(gf_, n, [&](const Poly& a, int64_t) {
            USeries ua = u_scale(a, n).scaled(Scalar(a));
            for (const auto& [i, v] : ua.terms()) e.add_term(i, v);
        });
        return e;
    });
}

USeries FormContext::build_E_P(const Poly& P, int64_t prec) {
    if (!P.is_monic() || !poly_is_irreducible(P)) throw value_error("E_P needs a monic prime");
    return cached("E_P:" + P.str(), prec, [&](int64_t n) {
        USeries e(gf_, 2, 1 % ((int)gf_->q() - 1), n);
        for_each_monic(gf_, n, [&](const Poly& a, int64_t) {
            if (poly_divides(P, a)) return;
            USeries ua = u_scale(a, n).scaled(Scalar(a));
            for (const auto& [i, v] : ua.terms()) e.add_term(i, v);
        });
        return e.with_level(P);
    });
}

USeries FormContext::eis_sum(int64_t k, int64_t prec) {
    return cached("eis_sum:" + std::to_string(k), prec, [&](int64_t n) {
        const GossTable& tab = goss_period(k);
        USeries gser(gf_, 0, (int)(k % ((int64_t)gf_->q() - 1)), kExactPrec);
        for (int64_t m = 0; m <= tab.g(k).degree(); ++m)
            gser.add_term(m, tab.g(k).coeff(m));
        USeries acc(gf_, k, gser.type(), n);
        for_each_monic(gf_, n, [&](const Poly& a, int64_t) {
            USeries term = compose_uscale(gser, a, n);
            for (const auto& [i, v] : term.terms()) acc.add_term(i, v);
        });
        return acc;
    });
}

USeries FormContext::build_eisenstein_normalized(int64_t k, int64_t prec, const Scalar& constant) {
    int64_t qm1 = (int64_t)gf_->q() - 1;
    if (k <= 0 || k % qm1 != 0) throw value_error("eisenstein weight must be a positive multiple of q-1");
    USeries e = (-eis_sum(k, prec)).with_tags(k, 0);
    e.add_term(0, constant);
    return e;
}

USeries FormContext::build_gd(uint32_t d, int64_t prec) {
    if (d < 1) throw value_error("gd needs d >= 1");
    return cached("gd:" + std::to_string(d), prec, [&](int64_t n) {
        int64_t k = 1;
        for (uint32_t i = 0; i < d; ++i) k *= gf_->q();
        k -= 1;
        // g_d = 1 - (-1)^(d+1) L_d * eis_sum(k); the constant is pinned to 1
        Poly ld = l_poly(gf_, d);
        Scalar scale = Scalar(d % 2 == 1 ? -ld : ld);
        USeries g = eis_sum(k, n).scaled(scale).with_tags(k, 0);
        g.add_term(0, Scalar::one(gf_));
        return g;
    });
}

USeries FormContext::build_Delta(int64_t prec) {
    return cached("Delta", prec, [&](int64_t n) {
        uint32_t q = gf_->q();
        Poly l1 = l_poly(gf_, 1);
        Poly t = Poly::variable(gf_);
        Poly bracket2 = t.frobenius(2) - t;  // T^(q^2) - T
        Scalar c1 = Scalar(Poly::constant(gf_, 1), l1);
        // cusp pinning: (T^(q^2) - T) c2 + L_1^q c1^(q+1) = 0, i.e. c2 = -1/L_2
        Scalar c2 = -(Scalar(l1.pow(q)) * c1.pow((int64_t)q + 1)) / Scalar(bracket2);
        USeries e1 = build_eisenstein_normalized(q - 1, n, c1);
        USeries e2 = build_eisenstein_normalized((int64_t)q * q - 1, n, c2);
        USeries delta =
            e2.scaled(Scalar(bracket2)) + (e1.frobenius_pow(1) * e1).scaled(Scalar(l1.pow(q)));
        if (!delta.coeff(0).is_zero()) throw error("internal: Delta constant term nonzero");
        return delta;
    });
}

USeries FormContext::build_Delta_T(int64_t prec) {
    return cached("Delta_T", prec, [&](int64_t n) {
        Poly t = Poly::variable(gf_);
        Scalar inv_l1 = Scalar(Poly::constant(gf_, 1), l_poly(gf_, 1));
        USeries g1 = build_g1(n);
        USeries g1t = compose_uscale(g1, t, n);
        return ((g1t - g1).scaled(inv_l1)).with_level(t);
    });
}

USeries FormContext::build_Delta_W(int64_t prec) {
    return cached("Delta_W", prec, [&](int64_t n) {
        Poly t = Poly::variable(gf_);
        Scalar inv_l1 = Scalar(Poly::constant(gf_, 1), l_poly(gf_, 1));
        USeries g1 = build_g1(n);
        USeries g1t = compose_uscale(g1, t, n);
        USeries w = g1t.scaled(Scalar(t.frobenius(1))) - g1.scaled(Scalar(t));
        return w.scaled(inv_l1).with_level(t);
    });
}

USeries FormContext::build_h(int64_t prec) {
    return cached("h", prec, [&](int64_t n) {
        USeries et = build_E_P(Poly::variable(gf_), n);
        USeries dw = build_Delta_W(n);
        // h = -Delta_W * E_T; the product is GL_2(A)-modular, so level 1
        return (-(dw * et)).with_level(Poly::constant(gf_, 1));
    });
}

USeries FormContext::monomial(int64_t a, int64_t b, int64_t c, int64_t prec) {
    if (a < 0 || b < 0 || c < 0) throw value_error("negative exponent");
    std::string key = "mono:" + std::to_string(a) + ":" + std::to_string(b) + ":" + std::to_string(c);
    return cached(key, prec, [&](int64_t n) {
        auto powd = [&](const std::string& base, const USeries& s, int64_t e) {
            if (e == 0) return USeries::one(gf_);
            return cached("pow:" + base + ":" + std::to_string(e), n,
                          [&](int64_t m) { return s.truncated(m).pow((uint64_t)e); });
        };
        USeries acc = USeries::one(gf_);
        if (a) acc = acc * powd("g1", build_g1(n), a);
        if (b) acc = acc * powd("Delta", build_Delta(n), b);
        if (c) acc = acc * powd("h", build_h(n), c);
        return acc.truncated(n);
    });
}

USeries FormContext::generator(const GeneratorId& id, int64_t prec) {
    if (id.name == "g1") return build_g1(prec);
    if (id.name == "gd") return build_gd(id.d, prec);
    if (id.name == "h") return build_h(prec);
    if (id.name == "Delta") return build_Delta(prec);
    if (id.name == "E") return build_E(prec);
    if (id.name == "E_P") return build_E_P(id.P, prec);
    if (id.name == "Delta_T") return build_Delta_T(prec);
    if (id.name == "Delta_W") return build_Delta_W(prec);
    throw value_error("unknown generator: " + id.name);
}

const GossTable& FormContext::goss_period(int64_t kmax) {
    auto it = goss_cache_.find("period");
    if (it != goss_cache_.end() && it->second.kmax() >= kmax) return it->second;
    GossTable tab = goss_table(gf_, period_alpha(gf_, kmax), kmax);
    tab.tag = LatticeTag::period;
    return goss_cache_["period"] = std::move(tab);
}

const GossTable& FormContext::goss_torsion(const Poly& P, int64_t kmax) {
    std::string key = "torsion:" + P.str();
    auto it = goss_cache_.find(key);
    if (it != goss_cache_.end() && it->second.kmax() >= kmax) return it->second;
    GossTable tab = goss_table(gf_, torsion_alpha(P), kmax);
    tab.tag = LatticeTag::torsion;
    tab.conductor = P;
    return goss_cache_[key] = std::move(tab);
}

}  // namespace dmf
