#pragma once

#include "dmf/useries.hpp"
#include "dmf/xpoly.hpp"

namespace dmf {

// F_q-linear polynomial sum c_i X^(q^i), coefficients in A = F_q[T]
class AdditivePoly {
public:
    AdditivePoly() = default;
    explicit AdditivePoly(FieldPtr gf) : gf_(std::move(gf)) {}
    AdditivePoly(FieldPtr gf, std::vector<Poly> coeffs);

    const FieldPtr& field() const { return gf_; }
    const std::vector<Poly>& coeffs() const { return c_; }
    int64_t tau_degree() const { return (int64_t)c_.size() - 1; }  // -1 for zero
    Poly coeff(int64_t i) const;

    AdditivePoly operator+(const AdditivePoly& o) const;
    AdditivePoly compose(const AdditivePoly& o) const;  // substitution
    bool operator==(const AdditivePoly& o) const { return c_ == o.c_; }

    std::string str() const;  // "T*X+X^3"

private:
    FieldPtr gf_;
    std::vector<Poly> c_;

    void trim();
};

// Carlitz module value rho_a, generated by rho_T = T*X + X^q; a != 0
AdditivePoly carlitz_poly(const Poly& a);

// D_0 = 1, D_i = (T^(q^i) - T) * D_{i-1}^q
Poly d_sequence(const FieldPtr& gf, uint32_t i);

// exponential coefficients 1/D_j of the period lattice, enough for Goss
// polynomials up to kmax
std::vector<Scalar> period_alpha(const FieldPtr& gf, int64_t kmax);

// exponential coefficients of the P-torsion lattice: alpha_j =
// coeff(rho_P, X^(q^j)) / P; requires P monic irreducible
std::vector<Scalar> torsion_alpha(const Poly& P);

bool poly_is_irreducible(const Poly& f);

enum class LatticeTag { period, torsion };

struct GossTable {
    LatticeTag tag = LatticeTag::period;
    Poly conductor;              // the torsion prime, zero polynomial otherwise
    std::vector<Scalar> alpha;   // alpha_0 = 1, ...
    std::vector<XPoly> polys;    // polys[i-1] = G_i

    int64_t kmax() const { return (int64_t)polys.size(); }
    const XPoly& g(int64_t i) const;
};

// G_1 = X; G_i = X*(G_{i-1} + alpha_1 G_{i-q} + alpha_2 G_{i-q^2} + ...) for
// i >= 2, with G_j = 0 for j <= 0. Missing alpha entries count as zero.
GossTable goss_table(const FieldPtr& gf, const std::vector<Scalar>& alpha, int64_t kmax);

// G evaluated on a series of positive order, truncated
USeries goss_eval(const XPoly& g, const USeries& s, int64_t out_prec);

// u(az) = 1 / rho_a(1/u) as a u-series of order q^deg(a); a monic
USeries u_scale(const Poly& a, int64_t prec);

// v * u(az) without forming u(az): coefficient recurrence through the sparse
// functional polynomial of rho_a; v's coefficients must be certified below
// out_prec - q^deg(a) (the result is certified to min(out_prec, that + q^d))
USeries uscale_mul(const USeries& v, const Poly& a, int64_t out_prec);

// sum over the support of f of a_f(j) * u(az)^j, truncated at out_prec
USeries compose_uscale(const USeries& f, const Poly& a, int64_t out_prec);

}  // namespace dmf
