#include "dmf/spectral.hpp"

#include <bit>

namespace dmf {

MonomialBasis enumerate_basis(uint32_t q, int64_t k, int l, bool cusp) {
    MonomialBasis out;
    out.k = k;
    out.l = l;
    out.cusp = cusp;
    int64_t qm1 = (int64_t)q - 1;
    if (l < 0 || l > qm1 - 1) throw value_error("type out of canonical range");
    if (k < 0 || ((k - 2 * l) % qm1 != 0)) return out;
    for (int64_t b = 0;; ++b) {
        int64_t rem = k - l * (q + 1) - b * ((int64_t)q * q - 1);
        if (rem < 0) break;
        if (rem % qm1 != 0) continue;  // cannot happen when k = 2l mod (q-1)
        if (cusp && b == 0 && l == 0) continue;
        out.exps.emplace_back(rem / qm1, b);
        out.orders.push_back(b * qm1 + l);
    }
    return out;
}

int64_t dimension_formula(uint32_t q, int64_t k, int l) {
    int64_t qm1 = (int64_t)q - 1;
    if (k < 0 || (k - 2 * l) % qm1 != 0) return 0;
    if (k < l * (q + 1)) return 0;
    return (k - l * (q + 1)) / ((int64_t)q * q - 1) + 1;
}

HeckeReport hecke_matrix(FormContext& ctx, const PrimeP& P, int64_t k, int l, bool cusp) {
    const auto& gf = ctx.field();
    HeckeReport r;
    r.q = gf->q();
    r.P = P.P;
    r.k = k;
    r.l = l;
    r.cusp = cusp;
    r.basis = enumerate_basis(r.q, k, l, cusp);
    int64_t n = r.basis.dim();
    r.mat.assign(n, std::vector<Scalar>(n, Scalar::zero(gf)));
    if (n == 0) {
        r.char_poly = XPoly::constant(Scalar::one(gf));
        r.min_poly = XPoly::constant(Scalar::one(gf));
        r.certified_prec = 0;
        conjecture_checks(r);
        return r;
    }
    int64_t out_prec = r.basis.orders.back() + n + 1;
    int64_t in_prec = out_prec * P.qd;
    std::vector<USeries> basis_series;
    for (auto [a, b] : r.basis.exps) basis_series.push_back(ctx.monomial(a, b, l, in_prec));
    for (int64_t j = 0; j < n; ++j) {
        USeries img = op_T(basis_series[j], P, out_prec);
        for (int64_t i = 0; i < n; ++i) {
            int64_t ord = r.basis.orders[i];
            Scalar lead = Scalar::from_int(gf, ((r.basis.exps[i].second + l) % 2 == 0) ? 1 : -1);
            Scalar c = img.coeff(ord) / lead;
            r.mat[i][j] = c;
            if (!c.is_zero()) img = img - basis_series[i].truncated(out_prec).scaled(c);
        }
        if (!img.is_zero_to_prec())
            throw error("hecke matrix residual nonzero at u^" + std::to_string(img.order()) +
                        " for basis column " + std::to_string(j));
    }
    r.certified_prec = out_prec;
    r.char_poly = char_poly_division_free(r.mat, gf);
    r.min_poly = min_poly_krylov(r.mat, gf);
    conjecture_checks(r);
    return r;
}

XPoly char_poly_division_free(const Matrix& m, const FieldPtr& gf) {
    // det(X I - M) by subset dynamic programming over column sets: the minor
    // on rows 0..|S|-1 and columns S expands along its last row
    size_t n = m.size();
    XPoly one = XPoly::constant(Scalar::one(gf));
    if (n == 0) return one;
    if (n > 20) throw resource_error("matrix too large for subset expansion");
    std::vector<XPoly> d((size_t)1 << n, XPoly(gf));
    d[0] = one;
    for (uint32_t s = 1; s < ((uint32_t)1 << n); ++s) {
        size_t row = (size_t)std::popcount(s) - 1;
        XPoly acc(gf);
        for (size_t j = 0, seen = 0; j < n; ++j) {
            if (!(s & (1u << j))) continue;
            // entry of X I - M at (row, j)
            XPoly entry = XPoly::constant(-m[row][j]);
            if (row == j) entry = entry + XPoly::x(gf);
            uint32_t rest = s & ~(1u << j);
            XPoly term = entry * d[rest];
            acc = (((row + seen) % 2 == 0) ? acc + term : acc - term);
            ++seen;
        }
        d[s] = acc;
    }
    return d[((uint32_t)1 << n) - 1];
}

namespace {

// smallest monic annihilator of v under M via Gaussian elimination on the
// Krylov sequence
XPoly vector_annihilator(const Matrix& m, std::vector<Scalar> v, const FieldPtr& gf) {
    size_t n = m.size();
    // reduced rows with their polynomial witnesses
    std::vector<std::vector<Scalar>> rows;      // echelon rows
    std::vector<std::vector<Scalar>> combos;    // polynomial coefficients per row
    std::vector<size_t> pivots;
    std::vector<Scalar> cur = std::move(v);
    for (size_t step = 0; step <= n; ++step) {
        std::vector<Scalar> red = cur;
        std::vector<Scalar> wit(step + 1, Scalar::zero(gf));
        wit[step] = Scalar::one(gf);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (red[pivots[r]].is_zero()) continue;
            Scalar f = red[pivots[r]];
            for (size_t i = 0; i < n; ++i) red[i] = red[i] - rows[r][i] * f;
            for (size_t i = 0; i < combos[r].size(); ++i)
                wit[i] = wit[i] - combos[r][i] * f;
        }
        size_t piv = n;
        for (size_t i = 0; i < n; ++i)
            if (!red[i].is_zero()) {
                piv = i;
                break;
            }
        if (piv == n) return XPoly(gf, std::move(wit)).monic();
        Scalar inv = red[piv].inverse();
        for (size_t i = 0; i < n; ++i) red[i] = red[i] * inv;
        for (auto& w : wit) w = w * inv;
        rows.push_back(std::move(red));
        combos.push_back(std::move(wit));
        pivots.push_back(piv);
        // advance Krylov vector
        std::vector<Scalar> next(n, Scalar::zero(gf));
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j)
                if (!m[i][j].is_zero() && !cur[j].is_zero()) next[i] = next[i] + m[i][j] * cur[j];
        }
        cur = std::move(next);
    }
    throw error("internal: krylov sequence did not terminate");
}

XPoly xpoly_lcm(const XPoly& a, const XPoly& b) {
    if (a.is_zero() || b.is_zero()) return XPoly(a.field());
    XPoly g = xpoly_gcd(a, b);
    return xpoly_divmod(a * b, g).first.monic();
}

}  // namespace

XPoly min_poly_krylov(const Matrix& m, const FieldPtr& gf) {
    size_t n = m.size();
    if (n == 0) return XPoly::constant(Scalar::one(gf));
    XPoly acc = XPoly::constant(Scalar::one(gf));
    for (size_t i = 0; i < n; ++i) {
        std::vector<Scalar> e(n, Scalar::zero(gf));
        e[i] = Scalar::one(gf);
        acc = xpoly_lcm(acc, vector_annihilator(m, std::move(e), gf));
        if (acc.degree() == (int64_t)n) break;
    }
    return acc;
}

Scalar matrix_det(Matrix m, const FieldPtr& gf) {
    size_t n = m.size();
    Scalar det = Scalar::one(gf);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = n;
        for (size_t r = col; r < n; ++r)
            if (!m[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv == n) return Scalar::zero(gf);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det = det * m[col][col];
        Scalar inv = m[col][col].inverse();
        for (size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            Scalar f = m[r][col] * inv;
            for (size_t c = col; c < n; ++c) m[r][c] = m[r][c] - f * m[col][c];
        }
    }
    return det;
}

void conjecture_checks(HeckeReport& r) {
    const auto& gf = r.char_poly.field();
    size_t n = r.mat.size();
    if (n == 0) {
        r.kernel_trivial = r.no_pm_pk2 = r.diagonalizable = r.bijective = true;
        return;
    }
    Scalar ps = Scalar(r.P);
    r.kernel_trivial = !r.char_poly.eval(Scalar::zero(gf)).is_zero();
    if (r.k % 2 != 0) {
        r.no_pm_pk2 = true;  // P^(k/2) is not in K
    } else {
        Scalar pk2 = ps.pow(r.k / 2);
        r.no_pm_pk2 =
            !r.char_poly.eval(pk2).is_zero() && !r.char_poly.eval(-pk2).is_zero();
    }
    XPoly md = r.min_poly.derivative();
    r.diagonalizable = !md.is_zero() && xpoly_gcd(r.min_poly, md).degree() == 0;
    // Id - P^(-k) M^2
    Scalar pmk = ps.pow(-r.k);
    Matrix m2(n, std::vector<Scalar>(n, Scalar::zero(gf)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Scalar s = Scalar::zero(gf);
            for (size_t t = 0; t < n; ++t)
                if (!r.mat[i][t].is_zero() && !r.mat[t][j].is_zero())
                    s = s + r.mat[i][t] * r.mat[t][j];
            m2[i][j] = -(pmk * s);
            if (i == j) m2[i][j] = m2[i][j] + Scalar::one(gf);
        }
    r.bijective = !matrix_det(std::move(m2), gf).is_zero();
}

}  // namespace dmf
