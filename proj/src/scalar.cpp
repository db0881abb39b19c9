#include "dmf/scalar.hpp"

#include <limits>

namespace dmf {

Scalar::Scalar(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field(), 1)) {}

Scalar::Scalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw arithmetic_error("zero denominator");
    require_same_field(*num_.field(), *den_.field());
    reduce();
}

void Scalar::reduce() {
    if (num_.is_zero()) {
        den_ = Poly::constant(den_.field(), 1);
        return;
    }
    if (!den_.is_one()) {
        Poly g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = poly_divmod(num_, g).first;
            den_ = poly_divmod(den_, g).first;
        }
        uint32_t lead = den_.lead();
        if (lead != 1) {
            uint32_t inv = den_.field()->inv(lead);
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }
}

int64_t Scalar::degree() const {
    if (is_zero()) return std::numeric_limits<int64_t>::min();
    return num_.degree() - den_.degree();
}

Scalar Scalar::operator+(const Scalar& o) const {
    if (den_.is_one() && o.den_.is_one()) return Scalar(num_ + o.num_);
    Scalar out;
    out.num_ = num_ * o.den_ + o.num_ * den_;
    out.den_ = den_ * o.den_;
    out.reduce();
    return out;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
    Scalar out;
    out.num_ = -num_;
    out.den_ = den_;
    return out;
}

Scalar Scalar::operator*(const Scalar& o) const {
    if (den_.is_one() && o.den_.is_one()) return Scalar(num_ * o.num_);
    Scalar out;
    out.num_ = num_ * o.num_;
    out.den_ = den_ * o.den_;
    out.reduce();
    return out;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::inverse() const {
    if (is_zero()) throw arithmetic_error("inverse of zero scalar");
    Scalar out;
    out.num_ = den_;
    out.den_ = num_;
    uint32_t lead = out.den_.lead();
    if (lead != 1) {
        uint32_t inv = out.den_.field()->inv(lead);
        out.num_ = out.num_.scaled(inv);
        out.den_ = out.den_.scaled(inv);
    }
    return out;
}

Scalar Scalar::pow(int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar acc = Scalar::one(field());
    Scalar base = *this;
    uint64_t k = (uint64_t)e;
    while (k) {
        if (k & 1) acc = acc * base;
        if (k >>= 1) base = base * base;
    }
    return acc;
}

Scalar Scalar::frobenius(uint32_t n) const {
    Scalar out;
    out.num_ = num_.frobenius(n);
    out.den_ = den_.frobenius(n);  // stays monic: lead coefficient fixed by x^q = x
    return out;
}

std::string Scalar::str() const {
    if (den_.is_one()) return num_.str();
    return num_.str() + "/" + den_.str();
}

Scalar poly_eval(const Poly& f, const Scalar& x) {
    const auto& gf = f.field();
    Scalar acc = Scalar::zero(gf);
    for (size_t i = f.coeffs().size(); i-- > 0;)
        acc = acc * x + Scalar(Poly::constant(gf, f.coeffs()[i]));
    return acc;
}

Scalar scalar_parse(const FieldPtr& gf, const std::string& text) {
    size_t slash = text.find('/');
    if (slash == std::string::npos) return Scalar(poly_parse(gf, text));
    return Scalar(poly_parse(gf, text.substr(0, slash)), poly_parse(gf, text.substr(slash + 1)));
}

}  // namespace dmf
