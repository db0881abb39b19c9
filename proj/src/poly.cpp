#include "dmf/poly.hpp"

#include <cctype>
#include <sstream>

namespace dmf {

namespace {

void check_degree(const GF& gf, int64_t deg) {
    if (deg > gf.degree_limit())
        throw resource_error("polynomial degree " + std::to_string(deg) + " exceeds ceiling " +
                             std::to_string(gf.degree_limit()));
}

// schoolbook convolution mod p with delayed reduction; p < 2^16 and the
// degree ceiling keep the uint64 accumulators exact
void mul_prime_field(const uint32_t* a, size_t na, const uint32_t* b, size_t nb, uint32_t p,
                     std::vector<uint32_t>& out) {
    std::vector<uint64_t> acc(na + nb - 1, 0);
    for (size_t i = 0; i < na; ++i) {
        uint64_t ai = a[i];
        if (!ai) continue;
        uint64_t* dst = acc.data() + i;
        for (size_t j = 0; j < nb; ++j) dst[j] += ai * b[j];
    }
    out.resize(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) out[i] = (uint32_t)(acc[i] % p);
}

}  // namespace

Poly::Poly(FieldPtr gf, std::vector<uint32_t> coeffs) : gf_(std::move(gf)), c_(std::move(coeffs)) {
    trim();
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(const FieldPtr& gf, uint32_t c) {
    Poly f(gf);
    if (c) f.c_ = {c};
    return f;
}

Poly Poly::from_int(const FieldPtr& gf, int64_t v) { return constant(gf, gf->from_int(v)); }

Poly Poly::variable(const FieldPtr& gf) {
    Poly f(gf);
    f.c_ = {0, 1};
    return f;
}

Poly Poly::monomial(const FieldPtr& gf, uint32_t c, int64_t deg) {
    Poly f(gf);
    if (c) {
        check_degree(*gf, deg);
        f.c_.assign(deg + 1, 0);
        f.c_[deg] = c;
    }
    return f;
}

Poly Poly::operator+(const Poly& o) const {
    require_same_field(*gf_, *o.gf_);
    Poly out(gf_);
    out.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = gf_->add(coeff(i), o.coeff(i));
    out.trim();
    return out;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    Poly out(gf_);
    out.c_.resize(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) out.c_[i] = gf_->neg(c_[i]);
    return out;
}

Poly Poly::operator*(const Poly& o) const {
    require_same_field(*gf_, *o.gf_);
    if (is_zero() || o.is_zero()) return Poly(gf_);
    check_degree(*gf_, degree() + o.degree());
    Poly out(gf_);
    if (gf_->r() == 1) {
        mul_prime_field(c_.data(), c_.size(), o.c_.data(), o.c_.size(), gf_->p(), out.c_);
    } else {
        out.c_.assign(c_.size() + o.c_.size() - 1, 0);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (!c_[i]) continue;
            for (size_t j = 0; j < o.c_.size(); ++j)
                out.c_[i + j] = gf_->add(out.c_[i + j], gf_->mul(c_[i], o.c_[j]));
        }
    }
    out.trim();
    return out;
}

Poly Poly::scaled(uint32_t s) const {
    if (!s) return Poly(gf_);
    Poly out(gf_);
    out.c_.resize(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) out.c_[i] = gf_->mul(c_[i], s);
    return out;
}

Poly Poly::shifted(int64_t k) const {
    if (is_zero() || k == 0) return *this;
    check_degree(*gf_, degree() + k);
    Poly out(gf_);
    out.c_.assign(c_.size() + k, 0);
    std::copy(c_.begin(), c_.end(), out.c_.begin() + k);
    return out;
}

Poly Poly::pow(uint64_t e) const {
    Poly acc = Poly::constant(gf_, 1);
    Poly base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        if (e >>= 1) base = base * base;
    }
    return acc;
}

Poly Poly::monic() const {
    if (is_zero() || is_monic()) return *this;
    return scaled(gf_->inv(lead()));
}

Poly Poly::derivative() const {
    Poly out(gf_);
    if (c_.size() <= 1) return out;
    out.c_.resize(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
        out.c_[i - 1] = gf_->mul(c_[i], gf_->from_int((int64_t)i));
    out.trim();
    return out;
}

Poly Poly::frobenius(uint32_t n) const {
    if (n == 0 || is_zero()) return *this;
    int64_t step = 1;
    for (uint32_t i = 0; i < n; ++i) step *= gf_->q();
    check_degree(*gf_, degree() * step);
    Poly out(gf_);
    out.c_.assign((size_t)(degree() * step + 1), 0);
    for (size_t i = 0; i < c_.size(); ++i) out.c_[i * step] = c_[i];  // a^q = a in F_q
    return out;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (!c_[i]) continue;
        if (!first) os << "+";
        first = false;
        std::string cs = gf_->elem_str(c_[i]);
        bool composite = cs.find('+') != std::string::npos;
        if (i == 0) {
            os << (composite ? "(" + cs + ")" : cs);
        } else {
            if (cs != "1") os << (composite ? "(" + cs + ")" : cs) << "*";
            os << "T";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw arithmetic_error("division by zero polynomial");
    require_same_field(*a.field(), *b.field());
    const auto& gf = a.field();
    if (a.degree() < b.degree()) return {Poly(gf), a};
    std::vector<uint32_t> rem = a.coeffs();
    std::vector<uint32_t> quo(a.degree() - b.degree() + 1, 0);
    uint32_t blead_inv = gf->inv(b.lead());
    const auto& bc = b.coeffs();
    for (size_t i = rem.size(); i >= bc.size(); --i) {
        uint32_t t = gf->mul(rem[i - 1], blead_inv);
        if (t) {
            size_t off = i - bc.size();
            quo[off] = t;
            for (size_t j = 0; j < bc.size(); ++j)
                rem[off + j] = gf->sub(rem[off + j], gf->mul(t, bc[j]));
        }
    }
    return {Poly(gf, std::move(quo)), Poly(gf, std::move(rem))};
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = poly_divmod(x, y).second;
        x = y;
        y = r;
    }
    return x.monic();
}

bool poly_divides(const Poly& d, const Poly& a) {
    if (d.is_zero()) return a.is_zero();
    return poly_divmod(a, d).second.is_zero();
}

Poly poly_parse(const FieldPtr& gf, const std::string& text) {
    // terms separated by top-level +/-; each term is
    //   [element ['*']] ['T' ['^' digits]]
    // with composite elements parenthesized, e.g. "(w+1)*T^2+w*T+2"
    std::string s;
    for (char ch : text)
        if (!isspace((unsigned char)ch)) s += ch;
    if (s.empty()) throw value_error("empty polynomial text");

    Poly acc(gf);
    size_t i = 0;
    bool any = false;
    while (i < s.size()) {
        bool negate = false;
        if (s[i] == '+') {
            ++i;
        } else if (s[i] == '-') {
            negate = true;
            ++i;
        }
        // scan the term: up to the next +/- outside parentheses
        size_t start = i;
        int depth = 0;
        while (i < s.size()) {
            if (s[i] == '(') ++depth;
            if (s[i] == ')') --depth;
            if (depth == 0 && (s[i] == '+' || s[i] == '-')) break;
            ++i;
        }
        std::string term = s.substr(start, i - start);
        if (term.empty()) throw value_error("cannot parse polynomial: " + text);

        size_t tpos = term.find('T');
        std::string coef_text = (tpos == std::string::npos) ? term : term.substr(0, tpos);
        if (!coef_text.empty() && coef_text.back() == '*') coef_text.pop_back();
        if (!coef_text.empty() && coef_text.front() == '(' && coef_text.back() == ')')
            coef_text = coef_text.substr(1, coef_text.size() - 2);
        uint32_t coef = coef_text.empty() ? 1 : gf->parse_elem(coef_text);

        int64_t deg = 0;
        if (tpos != std::string::npos) {
            deg = 1;
            std::string rest = term.substr(tpos + 1);
            if (!rest.empty()) {
                if (rest[0] != '^') throw value_error("cannot parse polynomial: " + text);
                deg = 0;
                for (size_t k = 1; k < rest.size(); ++k) {
                    if (!isdigit((unsigned char)rest[k]))
                        throw value_error("cannot parse polynomial: " + text);
                    deg = deg * 10 + (rest[k] - '0');
                }
                if (rest.size() < 2) throw value_error("cannot parse polynomial: " + text);
            }
        }
        if (negate) coef = gf->neg(coef);
        acc = acc + Poly::monomial(gf, coef, deg);
        any = true;
    }
    if (!any) throw value_error("empty polynomial text");
    return acc;
}

}  // namespace dmf
