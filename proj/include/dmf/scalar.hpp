#pragma once

#include <string>

#include "dmf/poly.hpp"

namespace dmf {

// Element of K = F_q(T), stored reduced with monic denominator, so equality
// is representation equality. Zero is 0/1.
class Scalar {
public:
    Scalar() = default;
    explicit Scalar(Poly num);                    // num/1
    Scalar(Poly num, Poly den);                   // reduces

    static Scalar zero(const FieldPtr& gf) { return Scalar(Poly(gf)); }
    static Scalar one(const FieldPtr& gf) { return Scalar(Poly::constant(gf, 1)); }
    static Scalar from_int(const FieldPtr& gf, int64_t v) { return Scalar(Poly::from_int(gf, v)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const FieldPtr& field() const { return num_.field(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_integral() const { return den_.is_one(); }

    // deg num - deg den; the zero scalar has no degree (returns INT64_MIN)
    int64_t degree() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar inverse() const;
    Scalar pow(int64_t e) const;                  // negative e inverts
    Scalar frobenius(uint32_t n) const;           // x^(q^n)

    bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string str() const;                      // "num/den", "/1" omitted

private:
    Poly num_, den_;

    void reduce();
};

Scalar scalar_parse(const FieldPtr& gf, const std::string& text);

}  // namespace dmf
