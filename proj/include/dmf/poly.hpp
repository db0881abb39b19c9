#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dmf/field.hpp"

namespace dmf {

// Dense polynomial in T over F_q, coefficients ascending, always trimmed
// (no trailing zeros; the zero polynomial has an empty coefficient vector).
// Values are immutable in spirit: every operation returns a fresh Poly.
class Poly {
public:
    Poly() = default;
    explicit Poly(FieldPtr gf) : gf_(std::move(gf)) {}
    Poly(FieldPtr gf, std::vector<uint32_t> coeffs);

    static Poly zero(const FieldPtr& gf) { return Poly(gf); }
    static Poly constant(const FieldPtr& gf, uint32_t c);
    static Poly from_int(const FieldPtr& gf, int64_t v);
    static Poly variable(const FieldPtr& gf);               // T
    static Poly monomial(const FieldPtr& gf, uint32_t c, int64_t deg);

    const FieldPtr& field() const { return gf_; }
    const std::vector<uint32_t>& coeffs() const { return c_; }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const { return c_.size() <= 1; }
    int64_t degree() const { return (int64_t)c_.size() - 1; }  // -1 for zero
    uint32_t coeff(int64_t i) const { return (i >= 0 && i < (int64_t)c_.size()) ? c_[i] : 0; }
    uint32_t lead() const { return c_.empty() ? 0 : c_.back(); }
    bool is_monic() const { return lead() == 1; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return c_ != o.c_; }

    Poly scaled(uint32_t s) const;          // multiply by a field element
    Poly shifted(int64_t k) const;          // multiply by T^k (k >= 0)
    Poly pow(uint64_t e) const;
    Poly monic() const;                     // unit-normalize, zero stays zero
    Poly derivative() const;

    // f(T)^(q^n) = sum a_i T^(i q^n)
    Poly frobenius(uint32_t n) const;

    std::string str() const;

    // strict weak order for use as map key (field assumed shared)
    bool operator<(const Poly& o) const { return c_ < o.c_; }

private:
    FieldPtr gf_;
    std::vector<uint32_t> c_;

    void trim();
};

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);  // b != 0
Poly poly_gcd(const Poly& a, const Poly& b);                      // monic (or zero)
bool poly_divides(const Poly& d, const Poly& a);

Poly poly_parse(const FieldPtr& gf, const std::string& text);

// forward declaration lives in scalar.hpp; definition in scalar.cpp
class Scalar;
Scalar poly_eval(const Poly& f, const Scalar& x);

}  // namespace dmf
