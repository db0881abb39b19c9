#include "dmf/field.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace dmf {

namespace {

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; (uint64_t)d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// digits of code, ascending
std::vector<uint32_t> code_digits(uint32_t code, uint32_t p, uint32_t r) {
    std::vector<uint32_t> d(r, 0);
    for (uint32_t i = 0; i < r; ++i) {
        d[i] = code % p;
        code /= p;
    }
    return d;
}

uint32_t digits_code(const std::vector<uint32_t>& d, uint32_t p) {
    uint32_t c = 0;
    for (size_t i = d.size(); i-- > 0;) c = c * p + d[i];
    return c;
}

// multiply two F_p[w] polynomials given as digit vectors, reduce mod the
// monic modulus (ascending, length r+1)
std::vector<uint32_t> polymod_mul(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                                  const std::vector<uint32_t>& mod, uint32_t p) {
    std::vector<uint32_t> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    size_t r = mod.size() - 1;
    for (size_t i = c.size(); i-- > r;) {
        uint32_t t = c[i];
        if (!t) continue;
        c[i] = 0;
        for (size_t j = 0; j < r; ++j) {
            uint32_t sub = (t * mod[j]) % p;
            c[i - r + j] = (c[i - r + j] + p - sub) % p;
        }
    }
    c.resize(r);
    return c;
}

bool is_irreducible_mod_p(const std::vector<uint32_t>& f, uint32_t p) {
    // trial division by every monic polynomial of degree 1..deg/2
    size_t deg = f.size() - 1;
    for (size_t d = 1; 2 * d <= deg; ++d) {
        uint64_t count = 1;
        for (size_t i = 0; i < d; ++i) count *= p;
        for (uint64_t code = 0; code < count; ++code) {
            std::vector<uint32_t> g(d + 1, 0);
            uint64_t c = code;
            for (size_t i = 0; i < d; ++i) {
                g[i] = (uint32_t)(c % p);
                c /= p;
            }
            g[d] = 1;
            // remainder of f mod g over F_p
            std::vector<uint32_t> rem = f;
            while (rem.size() >= g.size()) {
                uint32_t lead = rem.back();
                if (lead) {
                    size_t off = rem.size() - g.size();
                    for (size_t i = 0; i < g.size(); ++i)
                        rem[off + i] = (rem[off + i] + p - (lead * g[i]) % p) % p;
                }
                while (!rem.empty() && rem.back() == 0) rem.pop_back();
                if (rem.size() < g.size()) break;
            }
            if (rem.empty()) return false;
        }
    }
    return true;
}

std::vector<uint32_t> default_modulus(uint32_t p, uint32_t r) {
    // smallest irreducible of degree r in lexicographic order of
    // (c_0, c_1, ..., c_{r-1})
    uint64_t count = 1;
    for (uint32_t i = 0; i < r; ++i) count *= p;
    for (uint64_t code = 0; code < count; ++code) {
        std::vector<uint32_t> f(r + 1, 0);
        uint64_t c = code;
        // lexicographic in c_{r-1}..c_0 ordering: enumerate high digits last
        for (uint32_t i = r; i-- > 0;) {
            f[i] = (uint32_t)(c % p);
            c /= p;
        }
        f[r] = 1;
        if (is_irreducible_mod_p(f, p)) return f;
    }
    throw value_error("no irreducible modulus found");
}

}  // namespace

FieldPtr GF::make(uint32_t p, uint32_t r) {
    FieldSpec s;
    s.p = p;
    s.r = r;
    return make(s);
}

FieldPtr GF::make(const FieldSpec& spec) {
    if (spec.p == 2 || !is_prime_u32(spec.p)) throw value_error("p must be an odd prime");
    if (spec.r < 1) throw value_error("r must be positive");
    uint64_t q = 1;
    for (uint32_t i = 0; i < spec.r; ++i) {
        q *= spec.p;
        if (q > (1u << 20)) throw value_error("q too large");
    }
    auto gf = std::shared_ptr<GF>(new GF());
    gf->p_ = spec.p;
    gf->r_ = spec.r;
    gf->q_ = (uint32_t)q;
    gf->degree_limit_ = spec.degree_limit;
    if (spec.r == 1) {
        gf->modulus_ = {0, 1};  // w - 0, unused
        return gf;
    }
    if (spec.modulus.empty()) {
        gf->modulus_ = default_modulus(spec.p, spec.r);
    } else {
        if (spec.modulus.size() != spec.r + 1 || spec.modulus.back() != 1)
            throw value_error("modulus must be monic of degree r");
        for (uint32_t c : spec.modulus)
            if (c >= spec.p) throw value_error("modulus coefficients must lie in 0..p-1");
        if (!is_irreducible_mod_p(spec.modulus, spec.p))
            throw value_error("modulus is reducible over F_p");
        gf->modulus_ = spec.modulus;
    }
    // exp/log tables from a generator of F_q^*
    gf->exp_.assign(gf->q_ - 1, 0);
    gf->log_.assign(gf->q_, 0);
    // factor q-1
    std::vector<uint32_t> prime_factors;
    uint32_t m = gf->q_ - 1;
    for (uint32_t d = 2; (uint64_t)d * d <= m; ++d)
        if (m % d == 0) {
            prime_factors.push_back(d);
            while (m % d == 0) m /= d;
        }
    if (m > 1) prime_factors.push_back(m);
    uint32_t gen = 0;
    for (uint32_t cand = 1; cand < gf->q_; ++cand) {
        bool ok = true;
        for (uint32_t f : prime_factors) {
            // cand^((q-1)/f) == 1 ?
            uint64_t e = (gf->q_ - 1) / f;
            std::vector<uint32_t> acc(gf->r_, 0);
            acc[0] = 1;
            std::vector<uint32_t> base = code_digits(cand, gf->p_, gf->r_);
            while (e) {
                if (e & 1) acc = polymod_mul(acc, base, gf->modulus_, gf->p_);
                base = polymod_mul(base, base, gf->modulus_, gf->p_);
                e >>= 1;
            }
            if (digits_code(acc, gf->p_) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            gen = cand;
            break;
        }
    }
    std::vector<uint32_t> acc(gf->r_, 0);
    acc[0] = 1;
    std::vector<uint32_t> gdig = code_digits(gen, gf->p_, gf->r_);
    for (uint32_t i = 0; i < gf->q_ - 1; ++i) {
        uint32_t code = digits_code(acc, gf->p_);
        gf->exp_[i] = code;
        gf->log_[code] = i;
        acc = polymod_mul(acc, gdig, gf->modulus_, gf->p_);
    }
    return gf;
}

uint32_t GF::add(uint32_t a, uint32_t b) const {
    if (r_ == 1) {
        uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    uint32_t out = 0, mul = 1;
    for (uint32_t i = 0; i < r_; ++i) {
        uint32_t da = a % p_, db = b % p_;
        a /= p_;
        b /= p_;
        uint32_t s = da + db;
        if (s >= p_) s -= p_;
        out += s * mul;
        mul *= p_;
    }
    return out;
}

uint32_t GF::neg(uint32_t a) const {
    if (r_ == 1) return a ? p_ - a : 0;
    uint32_t out = 0, mul = 1;
    for (uint32_t i = 0; i < r_; ++i) {
        uint32_t d = a % p_;
        a /= p_;
        out += (d ? p_ - d : 0) * mul;
        mul *= p_;
    }
    return out;
}

uint32_t GF::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t GF::mul_ext(uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
}

uint32_t GF::mul(uint32_t a, uint32_t b) const {
    if (r_ == 1) return (a * b) % p_;
    return mul_ext(a, b);
}

uint32_t GF::inv(uint32_t a) const {
    if (a == 0) throw arithmetic_error("inverse of zero");
    if (r_ == 1) return pow(a, p_ - 2);
    uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
}

uint32_t GF::pow(uint32_t a, uint64_t e) const {
    uint32_t acc = 1;
    while (e) {
        if (e & 1) acc = mul(acc, a);
        a = mul(a, a);
        e >>= 1;
    }
    return acc;
}

uint32_t GF::from_int(int64_t v) const {
    int64_t m = v % (int64_t)p_;
    if (m < 0) m += p_;
    return (uint32_t)m;
}

bool GF::elem_is_scalar(uint32_t a) const { return a < p_; }

std::string GF::elem_str(uint32_t a) const {
    if (a < p_) return std::to_string(a);
    std::ostringstream os;
    bool first = true;
    std::vector<uint32_t> dig = code_digits(a, p_, r_);
    for (uint32_t i = r_; i-- > 0;) {
        uint32_t d = dig[i];
        if (!d) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << d;
        } else {
            if (d != 1) os << d << "*";
            os << "w";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) return "0";
    return os.str();
}

uint32_t GF::parse_elem(const std::string& s) const {
    // digits only (prime subfield) or w-polynomial "2*w^2+w+1"
    uint32_t acc = 0;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < s.size() && s[i] == ' ') ++i;
    };
    skip_ws();
    bool any = false;
    while (i < s.size()) {
        skip_ws();
        uint32_t sign = 1;
        if (s[i] == '+') {
            ++i;
        } else if (s[i] == '-') {
            sign = 0;
            ++i;
        }
        skip_ws();
        uint64_t coef = 1;
        bool saw_num = false;
        if (i < s.size() && isdigit((unsigned char)s[i])) {
            coef = 0;
            saw_num = true;
            while (i < s.size() && isdigit((unsigned char)s[i])) coef = coef * 10 + (s[i++] - '0');
        }
        skip_ws();
        if (i < s.size() && s[i] == '*') {
            ++i;
            skip_ws();
        }
        uint32_t deg = 0;
        if (i < s.size() && s[i] == 'w') {
            ++i;
            deg = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                deg = 0;
                while (i < s.size() && isdigit((unsigned char)s[i])) deg = deg * 10 + (s[i++] - '0');
            }
        } else if (!saw_num) {
            throw value_error("cannot parse field element: " + s);
        }
        if (deg >= r_) throw value_error("element degree exceeds field");
        uint32_t c = (uint32_t)(coef % p_);
        if (!sign) c = c ? p_ - c : 0;
        uint32_t code = c;
        for (uint32_t k = 0; k < deg; ++k) code *= p_;
        acc = add(acc, code);
        any = true;
        skip_ws();
        if (i < s.size() && s[i] != '+' && s[i] != '-') throw value_error("cannot parse field element: " + s);
    }
    if (!any) throw value_error("empty field element");
    return acc;
}

bool GF::same(const GF& o) const { return p_ == o.p_ && r_ == o.r_ && modulus_ == o.modulus_; }

void require_same_field(const GF& a, const GF& b) {
    if (!a.same(b)) throw value_error("field mismatch");
}

}  // namespace dmf
