#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

#include "dmf/scalar.hpp"

namespace dmf {

// exclusive coefficient bound; kExactPrec marks exactly-known series
inline constexpr int64_t kExactPrec = int64_t(1) << 60;

struct Precision {
    int64_t n = 1;

    Precision(int64_t v = 1) : n(v) {
        if (n < 1) throw value_error("precision must be >= 1");
    }
};

int64_t prec_add(int64_t a, int64_t b);  // saturating at kExactPrec
int64_t prec_mul(int64_t a, int64_t b);

// Truncated u-expansion sum a_i u^i with Scalar coefficients, graded by type:
// every stored index is congruent to the type mod (q-1). Coefficients are
// certified for i < prec(). Weight and type are bookkeeping tags; level is a
// monic polynomial tag used by the Hecke layer. Values are immutable once
// assembled (every operation returns a fresh series) and safe to share
// across threads.
class USeries {
public:
    USeries() = default;
    USeries(FieldPtr gf, int64_t weight, int type, int64_t prec);

    static USeries zero(const FieldPtr& gf, int64_t weight, int type, int64_t prec);
    static USeries one(const FieldPtr& gf);  // exact constant 1, weight 0, type 0
    static USeries monomial(const FieldPtr& gf, int64_t weight, int type, int64_t index,
                            const Scalar& c, int64_t prec = kExactPrec);
    static USeries u(const FieldPtr& gf, int64_t prec = kExactPrec);  // weight 0, type 1

    const FieldPtr& field() const { return gf_; }
    int64_t weight() const { return weight_; }
    int type() const { return type_; }
    int64_t prec() const { return prec_; }
    const Poly& level() const { return level_; }
    const std::map<int64_t, Scalar>& terms() const { return c_; }

    // least index with possibly nonzero coefficient (prec() if none stored)
    int64_t order() const;

    bool is_zero_to_prec() const { return c_.empty(); }

    // throws precision_error for i >= prec()
    Scalar coeff(int64_t i) const;

    void add_term(int64_t i, const Scalar& c);  // accumulates; enforces grading
    void set_prec(int64_t p);
    USeries with_level(Poly lv) const;
    USeries with_tags(int64_t weight, int type) const;
    USeries truncated(int64_t new_prec) const;

    USeries operator+(const USeries& o) const;  // equal weight and type required
    USeries operator-(const USeries& o) const;
    USeries operator-() const;
    USeries operator*(const USeries& o) const;
    USeries scaled(const Scalar& s) const;

    USeries pow(uint64_t e) const;
    USeries frobenius_pow(uint32_t n) const;     // f^(q^n) via coefficient Frobenius
    USeries inverted_unit() const;               // order 0, unit constant term

    std::string str(int64_t max_terms = 12) const;

private:
    FieldPtr gf_;
    int64_t weight_ = 0;
    int type_ = 0;
    int64_t prec_ = 1;
    Poly level_;
    std::map<int64_t, Scalar> c_;
};

// substitute s for u: sum a_f(j) s^j; requires order(s) >= 1; result weight is
// f's weight, type is f.type * s.type mod (q-1); out_prec optionally truncates
// below the propagated bound
USeries series_compose(const USeries& f, const USeries& s, int64_t out_prec = kExactPrec);

struct SeriesEq {
    bool equal = false;
    int64_t checked_prec = 0;   // comparison certified for indices < this
    int64_t witness = -1;       // first differing index when !equal
};
SeriesEq series_equal(const USeries& a, const USeries& b);

// versioned text cache, bit-exact round trip
void series_write(std::ostream& os, const USeries& f);
USeries series_read(std::istream& is);

Poly poly_lcm(const Poly& a, const Poly& b);

}  // namespace dmf
