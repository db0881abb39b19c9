#include <doctest.h>

#include "dmf/forms.hpp"

using namespace dmf;

namespace {

Scalar sc(const FieldPtr& gf, int64_t v) { return Scalar::from_int(gf, v); }

Poly l1(const FieldPtr& gf) {
    Poly t = Poly::variable(gf);
    return t.frobenius(1) - t;
}

}  // namespace

TEST_SUITE_BEGIN("forms");

TEST_CASE("E: first coefficients for q=3") {
    auto gf = GF::make(3);
    FormContext ctx(gf);
    USeries e = ctx.build_E(12);
    CHECK(e.weight() == 2);
    CHECK(e.type() == 1);
    CHECK(e.coeff(1).is_one());
    CHECK(e.coeff(3).is_zero());   // sum of the three monic linears vanishes
    CHECK(e.coeff(5) == sc(gf, 1));  // -(sum of squares) = 1 in F_3
}

TEST_CASE("E_P: first coefficients and the two construction routes") {
    auto gf = GF::make(3);
    FormContext ctx(gf);
    Poly t = Poly::variable(gf);
    USeries et = ctx.build_E_P(t, 30);
    CHECK(et.coeff(1).is_one());
    CHECK(et.coeff(3) == -Scalar(t));
    CHECK(et.level() == t);
    // E_P = E - P * E(Pz)
    USeries e = ctx.build_E(30);
    USeries route2 = e - compose_uscale(e, t, 30).scaled(Scalar(t));
    CHECK(series_equal(et, route2).equal);
}

TEST_CASE("composing E with u_T starts at u^q") {
    auto gf = GF::make(3);
    FormContext ctx(gf);
    USeries out = compose_uscale(ctx.build_E(12), Poly::variable(gf), 12);
    CHECK(out.order() == 3);
    CHECK(out.coeff(3).is_one());
}

TEST_CASE("g1 is a unit whose inverse multiplies back to one") {
    auto gf = GF::make(3);
    FormContext ctx(gf);
    USeries g = ctx.build_g1(25);
    CHECK(series_equal(g * g.inverted_unit(), USeries::one(gf)).equal);
}

TEST_CASE("g1 matches its printed expansion (q=3)") {
    auto gf = GF::make(3);
    FormContext ctx(gf);
    USeries g = ctx.build_g1(17);
    Scalar L1 = Scalar(l1(gf));
    CHECK(g.weight() == 2);
    CHECK(g.coeff(0).is_one());
    CHECK(g.coeff(2) == -L1);
    for (int64_t i = 4; i <= 12; i += 2) CHECK(g.coeff(i).is_zero());
    CHECK(g.coeff(14) == -L1);  // (q-1)(q^2-q+1) = 14
}

TEST_CASE("adding the tagged monomial cancels the u^(q-1) coefficient of g1") {
    auto gf = GF::make(3);
    FormContext ctx(gf);
    USeries g = ctx.build_g1(16);
    USeries mono = USeries::monomial(gf, 2, 0, 2, Scalar(l1(gf)));
    USeries sum = g + mono;
    CHECK(sum.coeff(2).is_zero());
    CHECK(sum.coeff(0).is_one());
    CHECK(sum.coeff(14) == -Scalar(l1(gf)));
}

TEST_CASE("eisenstein builder at weight q-1 reproduces g1") {
    auto gf = GF::make(3);
    FormContext ctx(gf);
    Scalar c(Poly::constant(gf, 1), l1(gf));
    USeries e = ctx.build_eisenstein_normalized(2, 20, c);
    CHECK(series_equal(e.scaled(Scalar(l1(gf))), ctx.build_g1(20)).equal);
    CHECK_THROWS_AS(ctx.build_eisenstein_normalized(3, 10, c), value_error);
}

TEST_CASE("Delta matches its printed expansion (q=3)") {
    auto gf = GF::make(3);
    FormContext ctx(gf);
    USeries d = ctx.build_Delta(15);
    Scalar L1 = Scalar(l1(gf));
    CHECK(d.weight() == 8);
    CHECK(d.type() == 0);
    CHECK(d.coeff(0).is_zero());
    CHECK(d.coeff(2) == sc(gf, -1));      // -u^(q-1)
    CHECK(d.coeff(6) == sc(gf, 1));       // +u^(q(q-1))
    CHECK(d.coeff(8) == -L1);             // -(T^q-T) u^((q+1)(q-1))
    CHECK(d.coeff(4).is_zero());
    for (int64_t i = 10; i <= 12; i += 2) CHECK(d.coeff(i).is_zero());  // below u^14
    CHECK(d.order() == 2);
}

TEST_CASE("Delta_T and Delta_W") {
    auto gf = GF::make(3);
    FormContext ctx(gf);
    USeries dt = ctx.build_Delta_T(20);
    USeries dw = ctx.build_Delta_W(20);
    CHECK(dt.weight() == 2);
    CHECK(dw.coeff(0).is_one());
    CHECK(dt.coeff(0).is_zero());
    CHECK(dt.coeff(2).is_one());
    // the defining quotients give Delta_W - T^q Delta_T = g1 exactly
    Poly tq = Poly::variable(gf).frobenius(1);
    CHECK(series_equal(dw - dt.scaled(Scalar(tq)),
                       ctx.build_g1(20).with_level(Poly::variable(gf))).equal);
    // and Delta_W - T Delta_T = g1(Tz)
    USeries g1t = compose_uscale(ctx.build_g1(20), Poly::variable(gf), 20);
    CHECK(series_equal(dw - dt.scaled(Scalar(Poly::variable(gf))),
                       g1t.with_level(Poly::variable(gf))).equal);
}

TEST_CASE("h matches its printed expansion (q=3)") {
    auto gf = GF::make(3);
    FormContext ctx(gf);
    USeries h = ctx.build_h(12);
    Scalar L1 = Scalar(l1(gf));
    CHECK(h.weight() == 4);
    CHECK(h.type() == 1);
    CHECK(h.level().is_one());
    CHECK(h.coeff(1) == sc(gf, -1));   // -u
    CHECK(h.coeff(3).is_zero());
    CHECK(h.coeff(5) == sc(gf, -1));   // -u^(1+(q-1)^2)
    CHECK(h.coeff(7) == L1);           // +(T^q-T) u^(1+q(q-1))
    CHECK(h.coeff(9) == sc(gf, -1));   // -u^(1+(2q-2)(q-1))
}

TEST_CASE("h^l expansion formula") {
    // h^l = (-1)^l u^l + (-1)^l l u^((q-1)^2+l) + (-1)^(l-1) l (T^q-T) u^(q(q-1)+l) + O(...)
    for (uint32_t q : {3u, 5u}) {
        auto gf = GF::make(q);
        FormContext ctx(gf);
        int64_t qm1 = q - 1;
        for (int64_t l = 1; l <= qm1 - 1; ++l) {
            int64_t bound = (l + q) * qm1 + l;
            USeries hl = ctx.build_h(bound + 1).pow(l).truncated(bound);
            Scalar L1 = Scalar(l1(gf));
            Scalar sgn = sc(gf, l % 2 == 0 ? 1 : -1);
            CHECK(hl.coeff(l) == sgn);
            CHECK(hl.coeff(qm1 * qm1 + l) == sgn * sc(gf, l));
            CHECK(hl.coeff(q * qm1 + l) == -sgn * sc(gf, l) * L1);
            for (int64_t i = l + qm1; i < bound; i += qm1) {
                if (i == qm1 * qm1 + l || i == q * qm1 + l) continue;
                CHECK(hl.coeff(i).is_zero());
            }
        }
    }
}

TEST_CASE("g1^x h^l expansion formula") {
    // g1^x h^l = (-1)^l sum_i (-1)^i C(x,i) (T^q-T)^i u^(i(q-1)+l) + O(u^((q-1)^2+l))
    auto gf = GF::make(3);
    FormContext ctx(gf);
    uint32_t q = 3;
    int64_t qm1 = q - 1;
    auto binom = [&](int64_t n, int64_t k) {
        // small Pascal values mod p
        if (k < 0 || k > n) return Scalar::zero(gf);
        int64_t c = 1;
        for (int64_t i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
        return sc(gf, c);
    };
    for (int64_t x = 0; x <= 4; ++x) {
        for (int64_t l = 1; l <= (int64_t)q - 2; ++l) {
            int64_t bound = qm1 * qm1 + l;
            USeries f = (ctx.build_g1(bound).pow(x) * ctx.build_h(bound).pow(l)).truncated(bound);
            Scalar L1 = Scalar(l1(gf));
            Scalar sgn = sc(gf, l % 2 == 0 ? 1 : -1);
            for (int64_t i = 0; i * qm1 + l < bound; ++i) {
                Scalar expect = sgn * sc(gf, i % 2 == 0 ? 1 : -1) * binom(x, i) * L1.pow(i);
                CHECK(f.coeff(i * qm1 + l) == expect);
            }
        }
    }
}

TEST_CASE("Delta h^l expansion formula") {
    // Delta h^l = (-1)^(l+1) u^(q-1+l) + (-1)^l (1-l) u^(q(q-1)+l)
    //           + (-1)^l (l-1)(T^q-T) u^(q^2-1+l) + O(u^((l+q)(q-1)+l))
    for (uint32_t q : {3u, 5u}) {
        auto gf = GF::make(q);
        FormContext ctx(gf);
        int64_t qm1 = q - 1;
        for (int64_t l = 1; l <= std::min<int64_t>(qm1 - 1, 2); ++l) {
            int64_t bound = (l + q) * qm1 + l;
            USeries f = (ctx.build_Delta(bound) * ctx.build_h(bound).pow(l)).truncated(bound);
            Scalar L1 = Scalar(l1(gf));
            Scalar sgn = sc(gf, l % 2 == 0 ? 1 : -1);
            CHECK(f.coeff(qm1 + l) == -sgn);
            CHECK(f.coeff(q * qm1 + l) == sgn * sc(gf, 1 - l));
            int64_t third = (int64_t)q * q - 1 + l;
            if (third < bound) CHECK(f.coeff(third) == sgn * sc(gf, l - 1) * L1);
            for (int64_t i = qm1 + l; i < bound; i += qm1)
                if (i != qm1 + l && i != q * qm1 + l && i != third)
                    CHECK(f.coeff(i).is_zero());
        }
    }
}

TEST_CASE("all generator coefficients are integral") {
    for (uint32_t q : {3u, 5u}) {
        auto gf = GF::make(q);
        FormContext ctx(gf);
        for (const USeries& s : {ctx.build_g1(40), ctx.build_h(40), ctx.build_Delta(40),
                                 ctx.build_E(40), ctx.build_Delta_T(40), ctx.build_Delta_W(40)}) {
            for (const auto& [i, v] : s.terms()) CHECK(v.is_integral());
        }
    }
}

TEST_CASE("diagnostic: h^(q-1) = -Delta under these normalizations") {
    for (uint32_t q : {3u, 5u}) {
        auto gf = GF::make(q);
        FormContext ctx(gf);
        USeries hq = ctx.build_h(30).pow(q - 1).truncated(30);
        CHECK(series_equal(hq, -ctx.build_Delta(30)).equal);
    }
}

TEST_CASE("gd constant term convention") {
    auto gf = GF::make(3);
    FormContext ctx(gf);
    USeries g2 = ctx.build_gd(2, 12);
    CHECK(g2.weight() == 8);
    CHECK(g2.coeff(0).is_one());
    CHECK(g2.type() == 0);
}

TEST_SUITE_END();
