#pragma once

#include <string>
#include <vector>

#include "dmf/scalar.hpp"

namespace dmf {

// Polynomial in X with Scalar (= F_q(T)) coefficients, ascending, trimmed.
class XPoly {
public:
    XPoly() = default;
    explicit XPoly(FieldPtr gf) : gf_(std::move(gf)) {}
    XPoly(FieldPtr gf, std::vector<Scalar> coeffs);

    static XPoly x(const FieldPtr& gf);
    static XPoly constant(const Scalar& c);
    static XPoly monomial(const Scalar& c, int64_t deg);

    const FieldPtr& field() const { return gf_; }
    const std::vector<Scalar>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int64_t degree() const { return (int64_t)c_.size() - 1; }
    Scalar coeff(int64_t i) const;
    Scalar lead() const;

    XPoly operator+(const XPoly& o) const;
    XPoly operator-(const XPoly& o) const;
    XPoly operator-() const;
    XPoly operator*(const XPoly& o) const;
    bool operator==(const XPoly& o) const { return c_ == o.c_; }
    bool operator!=(const XPoly& o) const { return !(*this == o); }

    XPoly scaled(const Scalar& s) const;
    XPoly shifted_x(int64_t k) const;  // multiply by X^k
    XPoly monic() const;
    XPoly derivative() const;
    Scalar eval(const Scalar& x) const;

    std::string str() const;  // "X^4+(1/T)*X^2"

private:
    FieldPtr gf_;
    std::vector<Scalar> c_;

    void trim();
};

std::pair<XPoly, XPoly> xpoly_divmod(const XPoly& a, const XPoly& b);
XPoly xpoly_gcd(const XPoly& a, const XPoly& b);  // monic (or zero)

}  // namespace dmf
