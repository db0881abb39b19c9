#include "dmf/hecke.hpp"

namespace dmf {

PrimeP PrimeP::make(const Poly& P) {
    if (!P.is_monic()) throw value_error("prime must be monic");
    if (!poly_is_irreducible(P)) throw value_error("polynomial is not irreducible: " + P.str());
    PrimeP out;
    out.P = P;
    out.d = P.degree();
    out.qd = 1;
    for (int64_t i = 0; i < out.d; ++i) out.qd *= P.field()->q();
    AdditivePoly r = carlitz_poly(P);
    for (int64_t j = 0; j <= out.d; ++j) out.rho.push_back(r.coeff(j));
    return out;
}

USeries op_delta_P(const USeries& f, const PrimeP& P, int64_t out_prec) {
    USeries out = compose_uscale(f, P.P, out_prec);
    Scalar pl = Scalar(P.P).pow(f.type());
    out = out.scaled(pl);
    return out.with_level((f.level() * P.P).monic());
}

USeries op_U(const USeries& f, const PrimeP& P, int64_t out_prec) {
    const auto& gf = f.field();
    if (out_prec < 1) throw value_error("output precision must be >= 1");
    if (f.prec() < prec_mul(out_prec, P.qd))
        throw precision_error("U_p needs input certified to " +
                              std::to_string(prec_mul(out_prec, P.qd)) + ", have " +
                              std::to_string(f.prec()));
    int64_t qm1 = (int64_t)gf->q() - 1;
    USeries out(gf, f.weight(), f.type(), out_prec);
    out = out.with_level(f.level());

    // cleared Goss rows Ghat_i(X) = G_{i,Lambda_P}(P X) with coefficients in A:
    //   Ghat_1 = P X,  Ghat_i = X * sum_j rho_j Ghat_{i - q^j}  (Ghat_{<=0} = 0),
    // kept truncated below X^out_prec; window holds the last q^d rows
    int64_t imax = std::min(f.prec() - 1, (out_prec - 1) * P.qd);
    if (imax < 1) return out;
    size_t win = (size_t)P.qd;
    std::vector<std::vector<Poly>> rows(win, std::vector<Poly>((size_t)out_prec, Poly(gf)));
    std::vector<Scalar> acc((size_t)out_prec, Scalar::zero(gf));
    const auto& terms = f.terms();
    for (int64_t i = 1; i <= imax; ++i) {
        auto& row = rows[(size_t)(i % win)];
        if (i == 1) {
            for (auto& c : row) c = Poly(gf);
            if (out_prec > 1) row[1] = P.P;
        } else {
            // Ghat_i is supported on m = i mod (q-1); row i shares its slot with
            // row i - q^d, whose live entries sit one class lower at m-1, so a
            // descending sweep can read them before anything is overwritten.
            int64_t m0 = i % qm1;
            if (m0 == 0) m0 = qm1;
            if (m0 <= out_prec - 1) {
                for (int64_t m = out_prec - 1 - ((out_prec - 1 - m0) % qm1); m >= m0; m -= qm1) {
                    Poly v(gf);
                    int64_t qj = 1;
                    for (size_t j = 0; j < P.rho.size(); ++j) {
                        int64_t back = i - qj;
                        if (back >= 1 && !P.rho[j].is_zero()) {
                            const Poly& prev = rows[(size_t)(back % win)][(size_t)(m - 1)];
                            if (!prev.is_zero()) v = v + P.rho[j] * prev;
                        }
                        qj *= gf->q();
                    }
                    row[(size_t)m] = v;
                }
            }
        }
        auto it = terms.find(i);
        if (it != terms.end()) {
            const Scalar& a = it->second;
            int64_t m0 = i % qm1;
            if (m0 == 0) m0 = qm1;
            for (int64_t m = m0; m < out_prec; m += qm1) {
                const Poly& g = row[(size_t)m];
                if (!g.is_zero()) acc[(size_t)m] = acc[(size_t)m] + a * Scalar(g);
            }
        }
    }
    for (int64_t m = 0; m < out_prec; ++m)
        if (!acc[(size_t)m].is_zero()) out.add_term(m, acc[(size_t)m]);
    return out;
}

USeries op_T(const USeries& f, const PrimeP& P, int64_t out_prec) {
    if (poly_divides(P.P, f.level()))
        throw level_error("T_p requires p coprime to the level, P = " + P.P.str());
    USeries upart = op_U(f, P, out_prec);
    Scalar pk = Scalar(P.P).pow(f.weight());
    USeries scale_part = compose_uscale(f, P.P, out_prec).scaled(pk);
    return upart + scale_part;
}

uint32_t binom_mod_p(uint64_t n, uint64_t k, uint32_t p) {
    if (k > n) return 0;
    uint64_t acc = 1;
    while (k || n) {
        uint64_t nd = n % p, kd = k % p;
        if (kd > nd) return 0;
        // C(nd, kd) mod p, nd < p small
        uint64_t num = 1, den = 1;
        for (uint64_t i = 0; i < kd; ++i) {
            num = (num * ((nd - i) % p)) % p;
            den = (den * ((i + 1) % p)) % p;
        }
        // den invertible mod p
        uint64_t dinv = 1;
        for (uint32_t e = p - 2; e; e >>= 1) {
            if (e & 1) dinv = (dinv * den) % p;
            den = (den * den) % p;
        }
        acc = (acc * num) % p * dinv % p;
        n /= p;
        k /= p;
    }
    return (uint32_t)acc;
}

Scalar op_T_low_coeff_oracle(const USeries& f, const PrimeP& P, int64_t t) {
    const auto& gf = f.field();
    if (P.d != 1) throw value_error("coefficient oracle is stated for deg P = 1 only");
    if (t < 1) throw value_error("oracle index must be >= 1");
    int64_t qm1 = (int64_t)gf->q() - 1;
    if ((t - f.type()) % qm1 != 0) throw grading_error("oracle index outside the type class");
    Scalar sum = Scalar::zero(gf);
    Scalar Ps = Scalar(P.P);
    for (int64_t j = 0; j < t; ++j) {
        uint32_t c = binom_mod_p((uint64_t)(t - 1), (uint64_t)j, gf->p());
        if (!c) continue;
        Scalar a = f.coeff(t + j * qm1);
        if (a.is_zero()) continue;
        sum = sum + Scalar(Poly::constant(gf, gf->from_int(c))) * Ps.pow(t - j) * a;
    }
    return sum;
}

USeries op_frobenius_twist(const USeries& f, uint32_t n) { return f.frobenius_pow(n); }

SeriesEq hecke_frobenius_check(const USeries& f, const PrimeP& P, uint32_t n, int64_t out_prec) {
    int64_t qn = 1;
    for (uint32_t i = 0; i < n; ++i) qn *= f.field()->q();
    USeries lhs = op_T(f.frobenius_pow(n), P, out_prec);
    int64_t inner = (out_prec + qn - 1) / qn;
    USeries rhs = op_T(f, P, inner).frobenius_pow(n);
    return series_equal(lhs, rhs);
}

}  // namespace dmf
