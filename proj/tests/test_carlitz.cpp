#include <doctest.h>

#include <random>

#include "dmf/carlitz.hpp"

using namespace dmf;

TEST_SUITE_BEGIN("carlitz");

TEST_CASE("carlitz module generator and small values") {
    auto gf = GF::make(3);
    Poly t = Poly::variable(gf);
    CHECK(carlitz_poly(t).str() == "X^3+T*X");
    CHECK(carlitz_poly(Poly::constant(gf, 1)).str() == "X");
    // rho_{T^2} = T^2 X + (T^q + T) X^q + X^(q^2)
    AdditivePoly r2 = carlitz_poly(t * t);
    CHECK(r2.coeff(0) == t * t);
    CHECK(r2.coeff(1) == t.frobenius(1) + t);
    CHECK(r2.coeff(2) == Poly::constant(gf, 1));
    CHECK(r2.tau_degree() == 2);
}

TEST_CASE("carlitz module is a ring homomorphism") {
    auto gf = GF::make(3);
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<uint32_t> cd(0, 2);
    auto rand_poly = [&](int64_t maxdeg) {
        std::vector<uint32_t> c(maxdeg + 1);
        for (auto& x : c) x = cd(rng);
        return Poly(gf, std::move(c));
    };
    for (int it = 0; it < 25; ++it) {
        Poly a = rand_poly(3), b = rand_poly(3);
        if (a.is_zero() || b.is_zero()) continue;
        CHECK(carlitz_poly(a).compose(carlitz_poly(b)) == carlitz_poly(a * b));
        CHECK(carlitz_poly(b).compose(carlitz_poly(a)) == carlitz_poly(a * b));
        if (!(a + b).is_zero())
            CHECK(carlitz_poly(a) + carlitz_poly(b) == carlitz_poly(a + b));
    }
    CHECK_THROWS_AS(carlitz_poly(Poly(gf)), value_error);
}

TEST_CASE("carlitz factorials") {
    auto gf = GF::make(3);
    Poly t = Poly::variable(gf);
    CHECK(d_sequence(gf, 0).is_one());
    CHECK(d_sequence(gf, 1) == t.frobenius(1) - t);
    CHECK(d_sequence(gf, 2) == (t.frobenius(2) - t) * (t.frobenius(1) - t).pow(3));
}

TEST_CASE("torsion lattice exponential coefficients") {
    auto gf = GF::make(3);
    Poly t = Poly::variable(gf);
    auto a_t = torsion_alpha(t);
    REQUIRE(a_t.size() == 2);
    CHECK(a_t[0].is_one());
    CHECK(a_t[1] == Scalar(Poly::constant(gf, 1), t));
    auto a_t1 = torsion_alpha(t + Poly::from_int(gf, 1));
    REQUIRE(a_t1.size() == 2);
    CHECK(a_t1[1] == Scalar(Poly::constant(gf, 1), t + Poly::from_int(gf, 1)));
    Poly p2 = poly_parse(gf, "T^2+1");
    auto a_p2 = torsion_alpha(p2);
    REQUIRE(a_p2.size() == 3);
    CHECK(a_p2[0].is_one());
    CHECK(a_p2[2] == Scalar(Poly::constant(gf, 1), p2));
    // e_{Lambda_P} = rho_P / P has linear coefficient 1
    CHECK(a_p2[0] == Scalar::one(gf));
    CHECK_THROWS_AS(torsion_alpha(poly_parse(gf, "T^2+2*T+1")), value_error);
    CHECK_THROWS_AS(torsion_alpha(poly_parse(gf, "2*T+1")), value_error);
}

TEST_CASE("goss polynomials: base cases and one recurrence step") {
    auto gf = GF::make(3);
    Poly t = Poly::variable(gf);
    GossTable tab = goss_table(gf, torsion_alpha(t), 9);
    CHECK(tab.g(1).str() == "X");
    CHECK(tab.g(2).str() == "X^2");
    CHECK(tab.g(3).str() == "X^3");
    // G_4 = X(G_3 + (1/T) G_1)
    CHECK(tab.g(4).str() == "X^4+(1/T)*X^2");
    CHECK(tab.g(4) == XPoly::monomial(Scalar::one(gf), 4) +
                          XPoly::monomial(Scalar(Poly::constant(gf, 1), t), 2));
}

TEST_CASE("goss polynomials are isobaric") {
    // every monomial c X^m in G_i satisfies m + (weight carried by the alpha
    // factors) = i; tracked by running the recurrence over a weighted field
    auto gf = GF::make(3);
    Poly t = Poly::variable(gf);
    for (auto alpha : {torsion_alpha(t), period_alpha(gf, 40)}) {
        GossTable tab = goss_table(gf, alpha, 40);
        int64_t qm1 = gf->q() - 1;
        for (int64_t i = 1; i <= 40; ++i)
            for (int64_t m = 0; m <= tab.g(i).degree(); ++m)
                if (!tab.g(i).coeff(m).is_zero()) CHECK((i - m) % qm1 == 0);
    }
}

TEST_CASE("toy lattice identity at small k") {
    // lattice F_q, exponential z - z^q: sum over lambda of (z-lambda)^(-k)
    // equals G_k evaluated at 1/(z - z^q), exactly in F_q(z)
    for (uint32_t q : {3u, 5u}) {
        auto gf = GF::make(q);
        std::vector<Scalar> alpha{Scalar::one(gf), -Scalar::one(gf)};
        int64_t kmax = 2 * q;
        GossTable tab = goss_table(gf, alpha, kmax);
        Poly z = Poly::variable(gf);
        Poly zq_z = z.frobenius(1) - z;  // z^q - z
        Scalar x = Scalar(Poly::constant(gf, 1), -zq_z);  // 1/(z - z^q)
        for (int64_t k = 1; k <= kmax; ++k) {
            Scalar lhs = Scalar::zero(gf);
            for (uint32_t lam = 0; lam < q; ++lam) {
                Poly den = (z - Poly::constant(gf, lam)).pow((uint64_t)k);
                lhs = lhs + Scalar(Poly::constant(gf, 1), den);
            }
            CHECK(lhs == tab.g(k).eval(x));
        }
    }
}

TEST_CASE("u_scale basics") {
    auto gf = GF::make(3);
    Poly t = Poly::variable(gf);
    USeries u1 = u_scale(Poly::constant(gf, 1), 10);
    CHECK(series_equal(u1, USeries::u(gf, 10)).equal);
    // u(Tz) = u^3 - T u^5 + T^2 u^7 - ...
    USeries ut = u_scale(t, 12);
    CHECK(ut.order() == 3);
    CHECK(ut.coeff(3).is_one());
    CHECK(ut.coeff(5) == -Scalar(t));
    CHECK(ut.coeff(7) == Scalar(t * t));
    CHECK(ut.coeff(9) == -Scalar(t * t * t));
    CHECK(ut.type() == 1);
    // leading exponent q^d
    USeries up2 = u_scale(poly_parse(gf, "T^2+1"), 12);
    CHECK(up2.order() == 9);
    CHECK(up2.coeff(9).is_one());
    CHECK_THROWS_AS(u_scale(poly_parse(gf, "2*T"), 10), value_error);
}

TEST_CASE("u_scale matches explicit unit inversion") {
    auto gf = GF::make(3);
    Poly t = Poly::variable(gf);
    // u(Tz) = u^q / (1 + T u^(q-1)) computed through the generic series ops
    USeries unit(gf, 0, 0, 20);
    unit.add_term(0, Scalar::one(gf));
    unit.add_term(2, Scalar(t));
    USeries expect = unit.inverted_unit() * USeries::monomial(gf, 0, 1, 3, Scalar::one(gf), 20);
    CHECK(series_equal(u_scale(t, 20), expect).equal);
}

TEST_CASE("u_scale multiplicativity via composition") {
    auto gf = GF::make(3);
    Poly t = Poly::variable(gf);
    Poly t1 = t + Poly::from_int(gf, 1);
    USeries lhs = u_scale((t * t1).monic(), 30);
    USeries rhs = series_compose(u_scale(t, 30), u_scale(t1, 30), 30);
    CHECK(series_equal(lhs, rhs).equal);
}

TEST_CASE("uscale_mul agrees with direct multiplication") {
    auto gf = GF::make(3);
    Poly t = Poly::variable(gf);
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<uint32_t> cd(0, 2);
    USeries v(gf, 0, 1, 15);
    for (int64_t i = 1; i < 15; i += 2) v.add_term(i, Scalar::from_int(gf, cd(rng)));
    USeries direct = v * u_scale(t, 18);
    USeries fast = uscale_mul(v, t, direct.prec());
    CHECK(series_equal(direct, fast).equal);
}

TEST_CASE("goss_eval") {
    auto gf = GF::make(3);
    Poly t = Poly::variable(gf);
    USeries pu = USeries::u(gf, 30).scaled(Scalar(t));  // T*u
    CHECK(series_equal(goss_eval(XPoly::x(gf), pu, 30), pu).equal);
    // G = X^4 + (1/T) X^2 at T u: T^4 u^4 + T u^2
    XPoly g = XPoly::monomial(Scalar::one(gf), 4) +
              XPoly::monomial(Scalar(Poly::constant(gf, 1), t), 2);
    USeries out = goss_eval(g, pu, 30);
    CHECK(out.coeff(4) == Scalar(t).pow(4));
    CHECK(out.coeff(2) == Scalar(t));
    // G_k(u) = u^k for k <= q
    GossTable tab = goss_table(gf, torsion_alpha(t), 3);
    for (int64_t k = 1; k <= 3; ++k) {
        USeries e = goss_eval(tab.g(k), USeries::u(gf, 20), 20);
        CHECK(e.order() == k);
        CHECK(e.coeff(k).is_one());
        CHECK(e.terms().size() == 1);
    }
}

TEST_SUITE_END();
