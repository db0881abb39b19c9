#include "dmf/level.hpp"

#include <sstream>

namespace dmf {

FormExpr::FormExpr(FieldPtr gf, int64_t weight, int type, Poly ambient)
    : gf_(std::move(gf)), weight_(weight), type_(type), ambient_(std::move(ambient)) {}

FormExpr FormExpr::single(const FieldPtr& gf, const std::string& handle, int64_t weight, int type,
                          const Poly& ambient) {
    FormExpr e(gf, weight, type, ambient);
    e.add(handle, Scalar::one(gf));
    return e;
}

void FormExpr::add(const std::string& handle, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = c_.find(handle);
    if (it == c_.end()) {
        c_.emplace(handle, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) c_.erase(it);
    }
}

FormExpr FormExpr::operator+(const FormExpr& o) const {
    if (weight_ != o.weight_ || type_ != o.type_)
        throw grading_error("weight/type mismatch in expression addition");
    FormExpr out = *this;
    out.ambient_ = poly_lcm(ambient_, o.ambient_);
    for (const auto& [h, c] : o.c_) out.add(h, c);
    return out;
}

FormExpr FormExpr::operator-(const FormExpr& o) const { return *this + (-o); }

FormExpr FormExpr::operator-() const {
    FormExpr out = *this;
    for (auto& [h, c] : out.c_) c = -c;
    return out;
}

FormExpr FormExpr::scaled(const Scalar& s) const {
    FormExpr out(gf_, weight_, type_, ambient_);
    if (s.is_zero()) return out;
    out.c_ = c_;
    for (auto& [h, c] : out.c_) c = c * s;
    return out;
}

FormExpr FormExpr::with_ambient(Poly ambient) const {
    FormExpr out = *this;
    out.ambient_ = std::move(ambient);
    return out;
}

std::string FormExpr::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [h, c] : c_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")*" << h;
    }
    return os.str();
}

const RegistryEntry& FormRegistry::entry(const std::string& handle) const {
    auto it = entries_.find(handle);
    if (it == entries_.end()) throw value_error("unknown handle: " + handle);
    return it->second;
}

std::string FormRegistry::intern(RegistryEntry e) {
    std::string h = e.handle;
    if (entries_.find(h) == entries_.end()) entries_.emplace(h, std::move(e));
    return h;
}

std::string FormRegistry::add_generator(const GeneratorId& id) {
    if (!id.modular()) throw value_error("only modular forms may be registered: " + id.name);
    RegistryEntry e;
    e.kind = RegistryEntry::Kind::generator;
    e.gen = id;
    e.handle = id.key();
    e.weight = id.weight(gf_->q());
    e.type = id.type(gf_->q());
    e.level = id.level(gf_);
    if (id.name == "h") e.t_eigen_exp = 1;
    if (id.name == "Delta") e.t_eigen_exp = (int64_t)gf_->q() - 1;
    if (id.name == "E_P") {
        e.t_eigen_exp = 1;  // T_{P'} E_P = P' E_P for primes P' != P
        e.u_eigen_exp = 1;  // U_P E_P = P E_P
        FormExpr img(gf_, e.weight, e.type, e.level);
        img.add(e.handle, -Scalar::one(gf_));
        e.w_table[e.level.str() + "^1"] = img;  // E_P | W_P = -E_P
    }
    return intern(std::move(e));
}

std::string FormRegistry::add_monomial(int64_t a, int64_t b, int64_t c) {
    if (a < 0 || b < 0 || c < 0) throw value_error("negative exponent");
    RegistryEntry e;
    e.kind = RegistryEntry::Kind::monomial;
    e.ma = a;
    e.mb = b;
    e.mc = c;
    e.handle = "g1^" + std::to_string(a) + "*Delta^" + std::to_string(b) + "*h^" + std::to_string(c);
    int64_t q = gf_->q();
    e.weight = a * (q - 1) + b * (q * q - 1) + c * (q + 1);
    e.type = (int)(c % (q - 1));
    e.level = Poly::constant(gf_, 1);
    // the T_p action on h^c alone is scalar (by P^c) for 1 <= c <= q-2
    if (a == 0 && b == 0 && c >= 1 && c <= q - 2) e.t_eigen_exp = c;
    if (a == 0 && b == 1 && c == 0) e.t_eigen_exp = q - 1;  // Delta
    if (a == 0 && b == 0 && c == 1) e.t_eigen_exp = 1;      // h
    return intern(std::move(e));
}

std::string FormRegistry::add_product(const std::string& f, const std::string& g) {
    const auto& ef = entry(f);
    const auto& eg = entry(g);
    if (ef.kind == RegistryEntry::Kind::monomial && eg.kind == RegistryEntry::Kind::monomial)
        return add_monomial(ef.ma + eg.ma, ef.mb + eg.mb, ef.mc + eg.mc);
    RegistryEntry e;
    e.kind = RegistryEntry::Kind::product;
    e.base = std::min(f, g);
    e.other = std::max(f, g);
    e.handle = "(" + e.base + ")*(" + e.other + ")";
    e.weight = ef.weight + eg.weight;
    e.type = (int)((ef.type + eg.type) % ((int64_t)gf_->q() - 1));
    e.level = poly_lcm(ef.level, eg.level);
    return intern(std::move(e));
}

std::string FormRegistry::add_frob_power(const std::string& f, uint32_t n) {
    if (n == 0) return f;
    const auto& ef = entry(f);
    if (ef.kind == RegistryEntry::Kind::frob_power) return add_frob_power(ef.base, ef.frob_n + n);
    int64_t qn = 1;
    for (uint32_t i = 0; i < n; ++i) qn *= gf_->q();
    RegistryEntry e;
    e.kind = RegistryEntry::Kind::frob_power;
    e.base = f;
    e.frob_n = n;
    e.handle = "(" + f + ")^[q^" + std::to_string(n) + "]";
    e.weight = ef.weight * qn;
    e.type = ef.type;  // q^n = 1 mod (q-1)
    e.level = ef.level;
    if (ef.t_eigen_exp) e.t_eigen_exp = *ef.t_eigen_exp * qn;
    if (ef.u_eigen_exp) e.u_eigen_exp = *ef.u_eigen_exp * qn;  // U_P(f^(q^n)) = (U_P f)^(q^n)
    return intern(std::move(e));
}

std::string FormRegistry::delta_handle(const std::string& base, const PrimeP& P) {
    const auto& eb = entry(base);
    // canonicalize nested degeneracy chains by prime (the maps commute)
    if (eb.kind == RegistryEntry::Kind::delta_image && P.P.str() > eb.delta_prime.str()) {
        PrimeP Q = PrimeP::make(eb.delta_prime);
        return delta_handle(delta_handle(eb.base, P), Q);
    }
    RegistryEntry e;
    e.kind = RegistryEntry::Kind::delta_image;
    e.base = base;
    e.delta_prime = P.P;
    e.handle = "d[" + P.P.str() + "](" + base + ")";
    e.weight = eb.weight;
    e.type = eb.type;
    e.level = (eb.level * P.P).monic();
    return intern(std::move(e));
}

std::pair<FormExpr, FormExpr> FormRegistry::register_delta_images(const std::string& phi,
                                                                  const PrimeP& P) {
    const auto& e = entry(phi);
    if (!e.modular) throw value_error("cannot raise the level of a non-modular series");
    if (poly_divides(P.P, e.level)) throw level_error("prime already divides the level of " + phi);
    Poly ambient = (e.level * P.P).monic();
    std::string dp = delta_handle(phi, P);
    FormExpr d1 = expr(phi, ambient);
    FormExpr dpe = expr(dp, ambient);
    return {d1, dpe};
}

void FormRegistry::set_w_action(const std::string& handle, const Poly& prime, uint32_t alpha,
                                const FormExpr& image) {
    auto it = entries_.find(handle);
    if (it == entries_.end()) throw value_error("unknown handle: " + handle);
    if (image.weight() != it->second.weight || image.type() != it->second.type)
        throw grading_error("W-action image must preserve weight and type");
    it->second.w_table[prime.str() + "^" + std::to_string(alpha)] = image;
}

void FormRegistry::set_t_eigen(const std::string& handle, int64_t exp) {
    auto it = entries_.find(handle);
    if (it == entries_.end()) throw value_error("unknown handle: " + handle);
    it->second.t_eigen_exp = exp;
}

void FormRegistry::set_u_eigen_own_prime(const std::string& handle) {
    auto it = entries_.find(handle);
    if (it == entries_.end()) throw value_error("unknown handle: " + handle);
    it->second.u_eigen_exp = 1;
}

FormExpr FormRegistry::expr(const std::string& handle, const Poly& ambient) const {
    const auto& e = entry(handle);
    if (!poly_divides(e.level, ambient))
        throw level_error("ambient level must be a multiple of the handle level");
    return FormExpr::single(gf_, handle, e.weight, e.type, ambient);
}

FormExpr FormRegistry::expr(const std::string& handle) const {
    const auto& e = entry(handle);
    return FormExpr::single(gf_, handle, e.weight, e.type, e.level);
}

USeries FormRegistry::series(const std::string& handle, int64_t prec) {
    auto it = series_cache_.find(handle);
    if (it != series_cache_.end() && it->second.prec() >= prec) return it->second.truncated(prec);
    const auto& e = entry(handle);
    USeries s;
    switch (e.kind) {
        case RegistryEntry::Kind::generator:
            s = forms_.generator(e.gen, prec);
            break;
        case RegistryEntry::Kind::monomial:
            s = forms_.monomial(e.ma, e.mb, e.mc, prec);
            break;
        case RegistryEntry::Kind::delta_image: {
            PrimeP P = PrimeP::make(e.delta_prime);
            int64_t inner = (prec + P.qd - 1) / P.qd;
            s = op_delta_P(series(e.base, inner), P, prec);
            break;
        }
        case RegistryEntry::Kind::product:
            s = (series(e.base, prec) * series(e.other, prec)).truncated(prec);
            break;
        case RegistryEntry::Kind::frob_power: {
            int64_t qn = 1;
            for (uint32_t i = 0; i < e.frob_n; ++i) qn *= gf_->q();
            int64_t inner = (prec + qn - 1) / qn;
            s = series(e.base, inner).frobenius_pow(e.frob_n).truncated(prec);
            break;
        }
    }
    s = s.with_level(e.level);
    series_cache_[handle] = s;
    return s;
}

USeries FormRegistry::series(const FormExpr& e, int64_t prec) {
    USeries acc(gf_, e.weight(), e.type(), prec);
    acc = acc.with_level(e.ambient());
    for (const auto& [h, c] : e.coords()) {
        USeries s = series(h, prec).scaled(c);
        for (const auto& [i, v] : s.terms()) acc.add_term(i, v);
        acc.set_prec(std::min(acc.prec(), s.prec()));
    }
    return acc;
}

FormExpr FormRegistry::w_action_handle(const std::string& handle, const Poly& prime,
                                       uint32_t alpha) {
    const auto& e = entry(handle);
    std::string key = prime.str() + "^" + std::to_string(alpha);
    auto it = e.w_table.find(key);
    if (it != e.w_table.end()) return it->second;

    if (e.kind == RegistryEntry::Kind::delta_image) {
        if (alpha == 1 && e.delta_prime == prime) {
            // (delta_P phi)|W_P = P^(2l-k) phi
            Scalar s = Scalar(prime).pow(2 * (int64_t)e.type - e.weight);
            return expr(e.base).scaled(s);
        }
        if (e.delta_prime != prime) {
            // W at another prime passes through delta_Q
            PrimeP Q = PrimeP::make(e.delta_prime);
            return delta_image(w_action_handle(e.base, prime, alpha), Q);
        }
    }
    if (e.kind == RegistryEntry::Kind::frob_power) {
        // the slash uses the canonical type lift, so (f|W)^(q^n) and f^(q^n)|W
        // differ by det(W)^(l(q^n-1)) = P^(alpha l (q^n-1))
        int64_t qn = 1;
        for (uint32_t i = 0; i < e.frob_n; ++i) qn *= gf_->q();
        int64_t lbase = entry(e.base).type;
        Scalar corr = Scalar(prime).pow(-(int64_t)alpha * lbase * (qn - 1));
        return expr_frobenius(w_action_handle(e.base, prime, alpha), e.frob_n).scaled(corr);
    }
    if (e.kind == RegistryEntry::Kind::product) {
        // (f g)|W = (f|W)(g|W) whenever both factors carry actions
        return expr_mul(w_action_handle(e.base, prime, alpha),
                        w_action_handle(e.other, prime, alpha));
    }
    if (alpha == 1 && !poly_divides(prime, e.level)) {
        // handle lives at a level coprime to the prime: delta_1 image rule
        PrimeP P = PrimeP::make(prime);
        return expr(delta_handle(handle, P));
    }
    throw unknown_action_error("no W-action for " + handle + " at " + key);
}

FormExpr FormRegistry::w_action(const FormExpr& e, const Poly& prime, uint32_t alpha) {
    if (alpha == 0) return e;
    FormExpr out(gf_, e.weight(), e.type(), e.ambient());
    for (const auto& [h, c] : e.coords())
        out = out + w_action_handle(h, prime, alpha).scaled(c).with_ambient(e.ambient());
    return out;
}

FormExpr FormRegistry::delta_image(const FormExpr& e, const PrimeP& P) {
    FormExpr out(gf_, e.weight(), e.type(), poly_lcm(e.ambient(), P.P));
    for (const auto& [h, c] : e.coords()) out.add(delta_handle(h, P), c);
    return out;
}

FormExpr FormRegistry::u_action_handle(const std::string& handle, const PrimeP& P) {
    const auto& e = entry(handle);
    FormExpr zero(gf_, e.weight, e.type, e.level);
    if (e.kind == RegistryEntry::Kind::delta_image) {
        if (e.delta_prime == P.P) return zero;  // U_P delta_P = 0 in characteristic p
        PrimeP Q = PrimeP::make(e.delta_prime);
        return delta_image(u_action_handle(e.base, P), Q);
    }
    if (poly_divides(P.P, e.level)) {
        if (e.u_eigen_exp && e.level == P.P)
            return expr(handle).scaled(Scalar(P.P).pow(*e.u_eigen_exp));
        throw unknown_action_error("no symbolic U-action for " + handle + " at " + P.P.str());
    }
    if (e.t_eigen_exp) {
        // U_P f = T_P f - P^(k-l) delta_P f
        FormExpr out = expr(handle).scaled(Scalar(P.P).pow(*e.t_eigen_exp));
        Scalar pk = Scalar(P.P).pow(e.weight - e.type);
        out = out.with_ambient(poly_lcm(e.level, P.P));
        out.add(delta_handle(handle, P), -pk);
        return out;
    }
    throw unknown_action_error("no symbolic U-action for " + handle + " at " + P.P.str());
}

FormExpr FormRegistry::u_action(const FormExpr& e, const PrimeP& P) {
    FormExpr out(gf_, e.weight(), e.type(), e.ambient());
    for (const auto& [h, c] : e.coords())
        out = out + u_action_handle(h, P).scaled(c).with_ambient(e.ambient());
    return out;
}

FormExpr FormRegistry::t_action(const FormExpr& e, const PrimeP& P) {
    FormExpr out(gf_, e.weight(), e.type(), e.ambient());
    for (const auto& [h, c] : e.coords()) {
        const auto& ent = entry(h);
        if (poly_divides(P.P, ent.level))
            throw level_error("T_p requires p coprime to the level of " + h);
        if (ent.kind == RegistryEntry::Kind::delta_image) {
            // T_p commutes with delta_Q across coprime primes
            PrimeP Q = PrimeP::make(ent.delta_prime);
            out = out + delta_image(t_action(expr(ent.base), P), Q).scaled(c).with_ambient(
                            e.ambient());
            continue;
        }
        if (!ent.t_eigen_exp)
            throw unknown_action_error("no symbolic T-action for " + h);
        out.add(h, c * Scalar(P.P).pow(*ent.t_eigen_exp));
    }
    return out;
}

FormExpr FormRegistry::expr_mul(const FormExpr& a, const FormExpr& b) {
    int qm1 = (int)gf_->q() - 1;
    FormExpr out(gf_, a.weight() + b.weight(), (int)((a.type() + b.type()) % qm1),
                 poly_lcm(a.ambient(), b.ambient()));
    for (const auto& [ha, ca] : a.coords())
        for (const auto& [hb, cb] : b.coords()) out.add(add_product(ha, hb), ca * cb);
    return out;
}

FormExpr FormRegistry::expr_frobenius(const FormExpr& e, uint32_t n) {
    if (n == 0) return e;
    int64_t qn = 1;
    for (uint32_t i = 0; i < n; ++i) qn *= gf_->q();
    FormExpr out(gf_, e.weight() * qn, e.type(), e.ambient());
    for (const auto& [h, c] : e.coords()) {
        const auto& ent = entry(h);
        if (ent.kind == RegistryEntry::Kind::delta_image) {
            // (delta_P phi)^(q^n) = P^(l(q^n - 1)) delta_P(phi^(q^n))
            PrimeP P = PrimeP::make(ent.delta_prime);
            FormExpr basef = expr_frobenius(expr(ent.base), n);
            Scalar s = Scalar(P.P).pow((int64_t)ent.type * (qn - 1));
            out = out + delta_image(basef, P).scaled(c.frobenius(n) * s).with_ambient(e.ambient());
        } else if (ent.kind == RegistryEntry::Kind::product) {
            FormExpr prod = expr_mul(expr_frobenius(expr(ent.base), n),
                                     expr_frobenius(expr(ent.other), n));
            out = out + prod.scaled(c.frobenius(n)).with_ambient(e.ambient());
        } else {
            out.add(add_frob_power(h, n), c.frobenius(n));
        }
    }
    return out;
}

TraceResult FormRegistry::trace(const FormExpr& e, const PrimeP& p, int64_t series_prec) {
    if (!poly_divides(p.P, e.ambient()))
        throw level_error("trace prime must divide the ambient level");
    Poly m = poly_divmod(e.ambient(), p.P).first.monic();
    if (poly_divides(p.P, m)) throw level_error("trace requires p || n");
    FormExpr we = w_action(e, p.P, 1);
    Scalar pml = Scalar(p.P).pow(-(int64_t)e.type());
    TraceResult out;
    try {
        FormExpr ue = u_action(we, p);
        out.symbolic = true;
        out.expr = (e + ue.scaled(pml)).with_ambient(m);
        return out;
    } catch (const unknown_action_error&) {
        // series fallback
    }
    USeries wes = series(we, prec_mul(series_prec, p.qd));
    out.symbolic = false;
    out.series = (series(e, series_prec) + op_U(wes, p, series_prec).scaled(pml)).with_level(m);
    return out;
}

TraceResult FormRegistry::trace_prime(const FormExpr& e, const PrimeP& p, int64_t series_prec) {
    return trace(w_action(e, p.P, 1), p, series_prec);
}

TraceResult FormRegistry::trace_high_alpha(const FormExpr& e, const PrimeP& p, uint32_t alpha) {
    if (alpha < 2) throw value_error("use trace() for alpha = 1");
    // Tr = P^(-l-(alpha-1)(2l-k)) U_p(e|W_{p^alpha}) | W_{p^(alpha-1)}
    Poly palpha = p.P.pow(alpha);
    if (!poly_divides(palpha, e.ambient()) ||
        poly_divides(p.P, poly_divmod(e.ambient(), palpha).first))
        throw level_error("trace_high_alpha requires p^alpha || n");
    FormExpr we = w_action(e, p.P, alpha);
    FormExpr ue = u_action(we, p);
    Poly m = poly_divmod(e.ambient(), p.P).first.monic();
    FormExpr wm = w_action(ue.with_ambient(m), p.P, alpha - 1);
    int64_t l = e.type(), k = e.weight();
    Scalar scale = Scalar(p.P).pow(-l - (int64_t)(alpha - 1) * (2 * l - k));
    TraceResult out;
    out.symbolic = true;
    out.expr = wm.scaled(scale).with_ambient(m);
    return out;
}

MembershipResult FormRegistry::is_p_new(const FormExpr& e, const PrimeP& p, int64_t series_prec) {
    MembershipResult res;
    TraceResult tr = trace(e, p, series_prec);
    TraceResult trp = trace_prime(e, p, series_prec);
    if (tr.is_exact_zero() && trp.is_exact_zero()) {
        res.verdict = Membership::yes_exact;
        return res;
    }
    int64_t certified = kExactPrec;
    for (const TraceResult* t : {&tr, &trp}) {
        USeries s = t->symbolic ? series(t->expr, series_prec) : t->series;
        certified = std::min(certified, s.prec());
        if (!s.is_zero_to_prec()) {
            res.verdict = Membership::no;
            res.witness_prime = p.P;
            res.witness_index = s.order();
            res.detail = (t == &tr ? "trace" : "twisted trace");
            return res;
        }
    }
    res.verdict = Membership::yes_to_precision;
    res.certified_prec = certified;
    return res;
}

MembershipResult FormRegistry::is_in_new(const FormExpr& e, const std::vector<PrimeP>& primes,
                                         int64_t series_prec) {
    MembershipResult res;
    res.verdict = Membership::yes_exact;
    int64_t certified = kExactPrec;
    for (const auto& p : primes) {
        MembershipResult r = is_p_new(e, p, series_prec);
        if (r.verdict == Membership::no) return r;
        if (r.verdict == Membership::yes_to_precision) {
            res.verdict = Membership::yes_to_precision;
            certified = std::min(certified, r.certified_prec);
        }
    }
    if (res.verdict == Membership::yes_to_precision) res.certified_prec = certified;
    return res;
}

MembershipResult FormRegistry::is_in_old(const FormExpr& e, const std::vector<PrimeP>& primes) {
    // sufficient syntactic test: every handle in the support is a delta_1 or
    // delta_P image of a form from level n/p for some p | n
    MembershipResult res;
    for (const auto& [h, c] : e.coords()) {
        const auto& ent = entry(h);
        bool old_somewhere = false;
        for (const auto& p : primes) {
            Poly m = poly_divmod(e.ambient(), p.P).first.monic();
            if (ent.kind == RegistryEntry::Kind::delta_image && ent.delta_prime == p.P &&
                poly_divides(entry(ent.base).level, m)) {
                old_somewhere = true;  // delta_P image from level m
                break;
            }
            if (poly_divides(ent.level, m)) {
                old_somewhere = true;  // delta_1 image from level m
                break;
            }
        }
        if (!old_somewhere) {
            res.verdict = Membership::no;
            res.detail = "handle " + h + " is not an evident degeneracy image";
            return res;
        }
    }
    res.verdict = Membership::yes_exact;
    return res;
}

}  // namespace dmf
