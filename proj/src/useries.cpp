#include "dmf/useries.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace dmf {

int64_t prec_add(int64_t a, int64_t b) {
    if (a >= kExactPrec || b >= kExactPrec) return kExactPrec;
    return std::min(a + b, kExactPrec);
}

int64_t prec_mul(int64_t a, int64_t b) {
    if (a >= kExactPrec || b >= kExactPrec) return kExactPrec;
    if (a > 0 && b > kExactPrec / a) return kExactPrec;
    return a * b;
}

USeries::USeries(FieldPtr gf, int64_t weight, int type, int64_t prec)
    : gf_(std::move(gf)), weight_(weight), type_(type), prec_(prec), level_(Poly::constant(gf_, 1)) {
    int qm1 = (int)gf_->q() - 1;
    if (type_ < 0 || type_ >= qm1) throw grading_error("type out of canonical range");
    prec_ = Precision(prec).n;
}

USeries USeries::zero(const FieldPtr& gf, int64_t weight, int type, int64_t prec) {
    return USeries(gf, weight, type, prec);
}

USeries USeries::one(const FieldPtr& gf) {
    USeries f(gf, 0, 0, kExactPrec);
    f.add_term(0, Scalar::one(gf));
    return f;
}

USeries USeries::monomial(const FieldPtr& gf, int64_t weight, int type, int64_t index,
                          const Scalar& c, int64_t prec) {
    USeries f(gf, weight, type, prec);
    f.add_term(index, c);
    return f;
}

USeries USeries::u(const FieldPtr& gf, int64_t prec) {
    return monomial(gf, 0, 1 % ((int)gf->q() - 1), 1, Scalar::one(gf), prec);
}

int64_t USeries::order() const { return c_.empty() ? prec_ : c_.begin()->first; }

Scalar USeries::coeff(int64_t i) const {
    if (i >= prec_)
        throw precision_error("coefficient " + std::to_string(i) + " beyond certified precision " +
                              std::to_string(prec_));
    auto it = c_.find(i);
    return it == c_.end() ? Scalar::zero(gf_) : it->second;
}

void USeries::add_term(int64_t i, const Scalar& v) {
    if (v.is_zero()) return;
    if (i < 0) throw value_error("negative series index");
    int qm1 = (int)gf_->q() - 1;
    if ((int)(i % qm1) != type_ % qm1)
        throw grading_error("index " + std::to_string(i) + " incompatible with type " +
                            std::to_string(type_));
    if (i >= prec_) return;  // beyond certification, discard
    auto it = c_.find(i);
    if (it == c_.end()) {
        c_.emplace(i, v);
    } else {
        it->second = it->second + v;
        if (it->second.is_zero()) c_.erase(it);
    }
}

void USeries::set_prec(int64_t p) {
    prec_ = Precision(p).n;
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->first >= prec_)
            it = c_.erase(it);
        else
            ++it;
    }
}

USeries USeries::with_level(Poly lv) const {
    USeries f = *this;
    f.level_ = std::move(lv);
    return f;
}

USeries USeries::with_tags(int64_t weight, int type) const {
    USeries f = *this;
    f.weight_ = weight;
    f.type_ = type;
    int qm1 = (int)gf_->q() - 1;
    for (const auto& [i, v] : c_)
        if ((int)(i % qm1) != type % qm1) throw grading_error("retag violates grading");
    return f;
}

USeries USeries::truncated(int64_t new_prec) const {
    USeries f = *this;
    f.set_prec(std::min(prec_, new_prec));
    return f;
}

USeries USeries::operator+(const USeries& o) const {
    require_same_field(*gf_, *o.gf_);
    if (weight_ != o.weight_ || type_ != o.type_)
        throw grading_error("weight/type mismatch in series addition");
    USeries out(gf_, weight_, type_, std::min(prec_, o.prec_));
    out.level_ = poly_lcm(level_, o.level_);
    for (const auto& [i, v] : c_) out.add_term(i, v);
    for (const auto& [i, v] : o.c_) out.add_term(i, v);
    return out;
}

USeries USeries::operator-(const USeries& o) const { return *this + (-o); }

USeries USeries::operator-() const {
    USeries out = *this;
    for (auto& [i, v] : out.c_) v = -v;
    return out;
}

USeries USeries::operator*(const USeries& o) const {
    require_same_field(*gf_, *o.gf_);
    int qm1 = (int)gf_->q() - 1;
    USeries out(gf_, weight_ + o.weight_, (int)((type_ + o.type_) % qm1),
                std::min(prec_add(prec_, o.order()), prec_add(o.prec_, order())));
    out.level_ = poly_lcm(level_, o.level_);
    for (const auto& [i, a] : c_) {
        if (i >= out.prec_) break;
        for (const auto& [j, b] : o.c_) {
            if (i + j >= out.prec_) break;
            out.add_term(i + j, a * b);
        }
    }
    return out;
}

USeries USeries::scaled(const Scalar& s) const {
    USeries out(gf_, weight_, type_, prec_);
    out.level_ = level_;
    if (s.is_zero()) return out;
    out.c_ = c_;
    for (auto& [i, v] : out.c_) v = v * s;
    return out;
}

USeries USeries::pow(uint64_t e) const {
    if (e == 0) return USeries::one(gf_);
    USeries acc = *this;
    // square-and-multiply, msb first
    int bits = 63;
    while (bits > 0 && !((e >> bits) & 1)) --bits;
    for (int k = bits - 1; k >= 0; --k) {
        acc = acc * acc;
        if ((e >> k) & 1) acc = acc * *this;
    }
    return acc;
}

USeries USeries::frobenius_pow(uint32_t n) const {
    if (n == 0) return *this;
    int64_t step = 1;
    for (uint32_t i = 0; i < n; ++i) {
        if (step > kExactPrec / gf_->q()) throw resource_error("frobenius power too large");
        step *= gf_->q();
    }
    // q^n = 1 mod (q-1), so the type class is unchanged
    USeries out(gf_, weight_ * step, type_, prec_mul(prec_, step));
    out.level_ = level_;
    for (const auto& [i, v] : c_) out.add_term(i * step, v.frobenius(n));
    return out;
}

USeries USeries::inverted_unit() const {
    if (order() != 0 || c_.empty()) throw arithmetic_error("series is not a unit");
    if (type_ != 0) throw grading_error("unit series must have type 0");
    Scalar a0 = c_.begin()->second;
    Scalar a0_inv = a0.inverse();
    int qm1 = (int)gf_->q() - 1;
    if (prec_ >= kExactPrec) {
        if (c_.size() == 1) {  // exact constant
            USeries out(gf_, -weight_, 0, kExactPrec);
            out.add_term(0, a0_inv);
            return out;
        }
        throw precision_error("inverse of an exact series is not finitely supported; truncate first");
    }
    USeries out(gf_, -weight_, 0, prec_);
    // b_m = -a0^{-1} * sum_{0<j<=m} a_j b_{m-j}
    std::map<int64_t, Scalar> b;
    b[0] = a0_inv;
    for (int64_t m = qm1; m < prec_; m += qm1) {
        Scalar s = Scalar::zero(gf_);
        for (const auto& [j, aj] : c_) {
            if (j == 0) continue;
            if (j > m) break;
            auto it = b.find(m - j);
            if (it != b.end()) s = s + aj * it->second;
        }
        if (!s.is_zero()) b[m] = -(a0_inv * s);
    }
    for (auto& [i, v] : b) out.add_term(i, v);
    return out;
}

std::string USeries::str(int64_t max_terms) const {
    std::ostringstream os;
    int64_t shown = 0;
    for (const auto& [i, v] : c_) {
        if (shown++ >= max_terms) {
            os << " + ...";
            break;
        }
        if (shown > 1) os << " + ";
        os << "(" << v.str() << ")*u^" << i;
    }
    if (shown == 0) os << "0";
    os << " + O(u^" << (prec_ >= kExactPrec ? std::string("inf") : std::to_string(prec_)) << ")";
    return os.str();
}

USeries series_compose(const USeries& f, const USeries& s, int64_t out_prec) {
    require_same_field(*f.field(), *s.field());
    const auto& gf = f.field();
    int64_t d = s.order();
    if (d < 1) throw value_error("substituted series must have positive order");
    int qm1 = (int)gf->q() - 1;
    // error from f's tail: prec_f * ord_s; from s's own precision: the lowest
    // positive support index j0 of f contributes s^j0 known to prec_s + (j0-1)*ord_s
    int64_t prec = prec_mul(f.prec(), d);
    for (const auto& [j, a] : f.terms()) {
        if (j == 0) continue;
        prec = std::min(prec, prec_add(s.prec(), (j - 1) * d));
        break;
    }
    prec = std::min(prec, out_prec);
    USeries out(gf, f.weight(), (int)((f.type() * (int64_t)s.type()) % qm1), prec);
    USeries spow = USeries::one(gf);
    int64_t cur = 0;
    for (const auto& [j, a] : f.terms()) {
        if (j > (prec - 1) / d) break;  // s^j has order >= j*d
        while (cur < j) {
            spow = spow * s;
            if (spow.prec() > prec) spow.set_prec(prec);
            ++cur;
        }
        for (const auto& [m, b] : spow.terms()) {
            if (m >= prec) break;
            out.add_term(m, a * b);
        }
    }
    return out;
}

SeriesEq series_equal(const USeries& a, const USeries& b) {
    SeriesEq r;
    r.checked_prec = std::min(a.prec(), b.prec());
    if (a.weight() != b.weight() || a.type() != b.type()) {
        r.equal = false;
        r.witness = -1;
        return r;
    }
    auto ia = a.terms().begin(), ib = b.terms().begin();
    while (true) {
        while (ia != a.terms().end() && ia->first >= r.checked_prec) ia = a.terms().end();
        while (ib != b.terms().end() && ib->first >= r.checked_prec) ib = b.terms().end();
        if (ia == a.terms().end() && ib == b.terms().end()) break;
        int64_t va = ia == a.terms().end() ? kExactPrec : ia->first;
        int64_t vb = ib == b.terms().end() ? kExactPrec : ib->first;
        if (va < vb) {
            r.equal = false;
            r.witness = va;
            return r;
        }
        if (vb < va) {
            r.equal = false;
            r.witness = vb;
            return r;
        }
        if (ia->second != ib->second) {
            r.equal = false;
            r.witness = va;
            return r;
        }
        ++ia;
        ++ib;
    }
    r.equal = true;
    return r;
}

void series_write(std::ostream& os, const USeries& f) {
    const auto& gf = f.field();
    os << "dmfseries 1\n";
    os << "p " << gf->p() << "\n";
    os << "r " << gf->r() << "\n";
    if (gf->r() > 1) {
        os << "modulus";
        for (uint32_t c : gf->modulus()) os << " " << c;
        os << "\n";
    }
    os << "q " << gf->q() << "\n";
    os << "weight " << f.weight() << "\n";
    os << "type " << f.type() << "\n";
    os << "order " << f.order() << "\n";
    os << "prec " << f.prec() << "\n";
    for (const auto& [i, v] : f.terms()) os << i << "\t" << v.str() << "\n";
}

USeries series_read(std::istream& is) {
    std::string tag;
    int version = 0;
    is >> tag >> version;
    if (tag != "dmfseries" || version != 1) throw value_error("bad series cache header");
    uint32_t p = 0, r = 0, q = 0;
    int64_t weight = 0, prec = 0, order = 0;
    int type = 0;
    std::vector<uint32_t> modulus;
    std::string key;
    while (is >> key) {
        if (key == "p") is >> p;
        else if (key == "r") is >> r;
        else if (key == "modulus") {
            modulus.resize(r + 1);
            for (auto& c : modulus) is >> c;
        } else if (key == "q") is >> q;
        else if (key == "weight") is >> weight;
        else if (key == "type") is >> type;
        else if (key == "order") is >> order;
        else if (key == "prec") {
            is >> prec;
            break;
        } else
            throw value_error("bad series cache key: " + key);
    }
    FieldSpec spec;
    spec.p = p;
    spec.r = r;
    spec.modulus = modulus;
    auto gf = GF::make(spec);
    if (gf->q() != q) throw value_error("series cache q mismatch");
    USeries f(gf, weight, type, prec);
    std::string line;
    std::getline(is, line);  // eat end of header line
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos) throw value_error("bad series cache line: " + line);
        int64_t idx = std::stoll(line.substr(0, tab));
        f.add_term(idx, scalar_parse(gf, line.substr(tab + 1)));
    }
    return f;
}

Poly poly_lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.field());
    Poly g = poly_gcd(a, b);
    return poly_divmod(a * b, g).first.monic();
}

}  // namespace dmf
