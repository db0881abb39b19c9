#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dmf/errors.hpp"

namespace dmf {

struct FieldSpec {
    uint32_t p = 3;                 // odd prime
    uint32_t r = 1;                 // q = p^r
    std::vector<uint32_t> modulus;  // ascending F_p coefficients of a monic degree-r
                                    // irreducible; empty picks the lexicographically
                                    // smallest one (ignored when r = 1)
    int64_t degree_limit = 100000;  // guard for silent degree blowup
};

class GF;
using FieldPtr = std::shared_ptr<const GF>;

// Arithmetic context for F_q, q = p^r. Elements are codes in 0..q-1, the
// little-endian base-p packing of their F_p digit vector. Immutable after
// construction; safe to share across threads.
class GF {
public:
    static FieldPtr make(const FieldSpec& spec);
    static FieldPtr make(uint32_t p, uint32_t r = 1);

    uint32_t p() const { return p_; }
    uint32_t r() const { return r_; }
    uint32_t q() const { return q_; }
    int64_t degree_limit() const { return degree_limit_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t sub(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t inv(uint32_t a) const;
    uint32_t pow(uint32_t a, uint64_t e) const;

    // image of an integer under Z -> F_p <= F_q
    uint32_t from_int(int64_t v) const;

    std::string elem_str(uint32_t a) const;      // "2", "w", "w^2+2*w"
    bool elem_is_scalar(uint32_t a) const;       // lies in the prime field image
    uint32_t parse_elem(const std::string& s) const;

    bool same(const GF& other) const;

private:
    GF() = default;

    uint32_t p_ = 0, r_ = 0, q_ = 0;
    int64_t degree_limit_ = 100000;
    std::vector<uint32_t> modulus_;
    // exp/log tables w.r.t. a fixed generator of F_q^* (built for r > 1)
    std::vector<uint32_t> exp_, log_;

    uint32_t mul_ext(uint32_t a, uint32_t b) const;
};

// throws value_error on field mismatch
void require_same_field(const GF& a, const GF& b);

}  // namespace dmf
