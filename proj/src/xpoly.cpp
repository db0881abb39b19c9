#include "dmf/xpoly.hpp"

#include <sstream>

namespace dmf {

XPoly::XPoly(FieldPtr gf, std::vector<Scalar> coeffs) : gf_(std::move(gf)), c_(std::move(coeffs)) {
    trim();
}

void XPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

XPoly XPoly::x(const FieldPtr& gf) {
    XPoly f(gf);
    f.c_ = {Scalar::zero(gf), Scalar::one(gf)};
    return f;
}

XPoly XPoly::constant(const Scalar& c) {
    XPoly f(c.field());
    if (!c.is_zero()) f.c_ = {c};
    return f;
}

XPoly XPoly::monomial(const Scalar& c, int64_t deg) {
    XPoly f(c.field());
    if (!c.is_zero()) {
        f.c_.assign(deg + 1, Scalar::zero(c.field()));
        f.c_[deg] = c;
    }
    return f;
}

Scalar XPoly::coeff(int64_t i) const {
    if (i < 0 || i >= (int64_t)c_.size()) return Scalar::zero(gf_);
    return c_[i];
}

Scalar XPoly::lead() const { return c_.empty() ? Scalar::zero(gf_) : c_.back(); }

XPoly XPoly::operator+(const XPoly& o) const {
    XPoly out(gf_);
    out.c_.resize(std::max(c_.size(), o.c_.size()), Scalar::zero(gf_));
    for (size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = coeff(i) + o.coeff(i);
    out.trim();
    return out;
}

XPoly XPoly::operator-(const XPoly& o) const { return *this + (-o); }

XPoly XPoly::operator-() const {
    XPoly out = *this;
    for (auto& v : out.c_) v = -v;
    return out;
}

XPoly XPoly::operator*(const XPoly& o) const {
    if (is_zero() || o.is_zero()) return XPoly(gf_);
    XPoly out(gf_);
    out.c_.assign(c_.size() + o.c_.size() - 1, Scalar::zero(gf_));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            if (!o.c_[j].is_zero()) out.c_[i + j] = out.c_[i + j] + c_[i] * o.c_[j];
    }
    out.trim();
    return out;
}

XPoly XPoly::scaled(const Scalar& s) const {
    if (s.is_zero()) return XPoly(gf_);
    XPoly out = *this;
    for (auto& v : out.c_) v = v * s;
    return out;
}

XPoly XPoly::shifted_x(int64_t k) const {
    if (is_zero() || k == 0) return *this;
    XPoly out(gf_);
    out.c_.assign(c_.size() + k, Scalar::zero(gf_));
    for (size_t i = 0; i < c_.size(); ++i) out.c_[i + k] = c_[i];
    return out;
}

XPoly XPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(lead().inverse());
}

XPoly XPoly::derivative() const {
    XPoly out(gf_);
    if (c_.size() <= 1) return out;
    out.c_.assign(c_.size() - 1, Scalar::zero(gf_));
    for (size_t i = 1; i < c_.size(); ++i)
        out.c_[i - 1] = c_[i] * Scalar::from_int(gf_, (int64_t)i);
    out.trim();
    return out;
}

Scalar XPoly::eval(const Scalar& x) const {
    Scalar acc = Scalar::zero(gf_);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

std::string XPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!first) os << "+";
        first = false;
        std::string cs = c_[i].str();
        bool plain = cs.find('+') == std::string::npos && cs.find('/') == std::string::npos &&
                     cs.find('*') == std::string::npos && cs.find('T') == std::string::npos;
        if (i == 0) {
            os << (plain ? cs : "(" + cs + ")");
        } else {
            if (cs != "1") os << (plain ? cs : "(" + cs + ")") << "*";
            os << "X";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::pair<XPoly, XPoly> xpoly_divmod(const XPoly& a, const XPoly& b) {
    if (b.is_zero()) throw arithmetic_error("division by zero polynomial");
    const auto& gf = a.field();
    if (a.degree() < b.degree()) return {XPoly(gf), a};
    std::vector<Scalar> rem = a.coeffs();
    std::vector<Scalar> quo(a.degree() - b.degree() + 1, Scalar::zero(gf));
    Scalar lead_inv = b.lead().inverse();
    const auto& bc = b.coeffs();
    for (size_t i = rem.size(); i >= bc.size(); --i) {
        Scalar t = rem[i - 1] * lead_inv;
        if (!t.is_zero()) {
            size_t off = i - bc.size();
            quo[off] = t;
            for (size_t j = 0; j < bc.size(); ++j) rem[off + j] = rem[off + j] - t * bc[j];
        }
    }
    return {XPoly(gf, std::move(quo)), XPoly(gf, std::move(rem))};
}

XPoly xpoly_gcd(const XPoly& a, const XPoly& b) {
    XPoly x = a, y = b;
    while (!y.is_zero()) {
        XPoly r = xpoly_divmod(x, y).second;
        x = y;
        y = r;
    }
    return x.monic();
}

}  // namespace dmf
