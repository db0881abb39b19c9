#pragma once

#include "dmf/carlitz.hpp"

namespace dmf {

// A monic prime of A with the data the Hecke operators need.
struct PrimeP {
    Poly P;
    int64_t d = 0;           // deg P
    int64_t qd = 1;          // q^d
    std::vector<Poly> rho;   // coefficients of rho_P; rho[0] = P, rho[d] = 1

    static PrimeP make(const Poly& P);
    const FieldPtr& field() const { return P.field(); }
};

// delta_P f = P^l * f(Pz); order multiplies by q^d, level by P
USeries op_delta_P(const USeries& f, const PrimeP& P, int64_t out_prec);

// U_p f = sum_{i>=1} a_f(i) * G_{i,Lambda_P}(P u), truncated at out_prec.
// Requires f certified to at least out_prec * q^d.
USeries op_U(const USeries& f, const PrimeP& P, int64_t out_prec);

// T_p f = P^k f(Pz) + U-part, for P coprime to the level tag of f
USeries op_T(const USeries& f, const PrimeP& P, int64_t out_prec);

// C(n, k) mod p by base-p digits
uint32_t binom_mod_p(uint64_t n, uint64_t k, uint32_t p);

// closed form for the t-th coefficient of T_p f when deg P = 1:
//   sum_{0 <= j < t} C(t-1, j) P^(t-j) a_f(t + j(q-1))
// stated only for t in {l, l+(q-1)} (type l >= 1) and {q-1} (type 0, cusp)
Scalar op_T_low_coeff_oracle(const USeries& f, const PrimeP& P, int64_t t);

// f^(q^n) (coefficient Frobenius plus index dilation)
USeries op_frobenius_twist(const USeries& f, uint32_t n);

// checks T_p(f^(q^n)) = (T_p f)^(q^n) on the overlapping certified range
SeriesEq hecke_frobenius_check(const USeries& f, const PrimeP& P, uint32_t n, int64_t out_prec);

}  // namespace dmf
