#pragma once

#include "dmf/forms.hpp"
#include "dmf/hecke.hpp"
#include "dmf/xpoly.hpp"

namespace dmf {

// Monomial basis of M_{k,l}(GL_2(A)) (or its cusp subspace): exponent pairs
// (a, b) with a(q-1) + b(q^2-1) + l(q+1) = k, listed by increasing b, so the
// u-orders b(q-1)+l are strictly increasing.
struct MonomialBasis {
    int64_t k = 0;
    int l = 0;
    bool cusp = false;
    std::vector<std::pair<int64_t, int64_t>> exps;
    std::vector<int64_t> orders;

    int64_t dim() const { return (int64_t)exps.size(); }
};

MonomialBasis enumerate_basis(uint32_t q, int64_t k, int l, bool cusp);

// dim of the full space by the closed formula; 0 when k is incompatible
int64_t dimension_formula(uint32_t q, int64_t k, int l);

using Matrix = std::vector<std::vector<Scalar>>;

struct HeckeReport {
    uint32_t q = 3;
    Poly P;
    int64_t k = 0;
    int l = 0;
    bool cusp = true;
    MonomialBasis basis;
    Matrix mat;  // mat[i][j]: coefficient of basis i in T_p(basis j)
    XPoly char_poly;
    XPoly min_poly;
    bool kernel_trivial = true;
    bool no_pm_pk2 = true;
    bool diagonalizable = true;
    bool bijective = true;
    int64_t certified_prec = 0;
};

// T_p matrix on the monomial basis via back-substitution on the strictly
// increasing u-orders; throws if the residual after projection is nonzero
HeckeReport hecke_matrix(FormContext& ctx, const PrimeP& P, int64_t k, int l, bool cusp = true);

XPoly char_poly_division_free(const Matrix& m, const FieldPtr& gf);
XPoly min_poly_krylov(const Matrix& m, const FieldPtr& gf);
Scalar matrix_det(Matrix m, const FieldPtr& gf);

// fills the four verdicts from char/min polynomials and the matrix
void conjecture_checks(HeckeReport& r);

}  // namespace dmf
