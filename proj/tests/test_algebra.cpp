#include <doctest.h>

#include <random>

#include "dmf/carlitz.hpp"
#include "dmf/poly.hpp"
#include "dmf/scalar.hpp"

using namespace dmf;

namespace {

Poly random_poly(const FieldPtr& gf, std::mt19937_64& rng, int64_t max_deg) {
    std::uniform_int_distribution<int64_t> degd(-1, max_deg);
    int64_t deg = degd(rng);
    if (deg < 0) return Poly(gf);
    std::vector<uint32_t> c(deg + 1);
    std::uniform_int_distribution<uint32_t> cd(0, gf->q() - 1);
    for (auto& x : c) x = cd(rng);
    c[deg] = 1 + cd(rng) % (gf->q() - 1);
    return Poly(gf, std::move(c));
}

}  // namespace

TEST_SUITE_BEGIN("algebra");

TEST_CASE("field axioms on random samples") {
    for (auto spec : {std::pair<uint32_t, uint32_t>{3, 1}, {5, 1}, {3, 2}, {7, 1}}) {
        auto gf = GF::make(spec.first, spec.second);
        std::mt19937_64 rng(42);
        std::uniform_int_distribution<uint32_t> d(0, gf->q() - 1);
        for (int it = 0; it < 200; ++it) {
            uint32_t a = d(rng), b = d(rng), c = d(rng);
            CHECK(gf->add(a, gf->add(b, c)) == gf->add(gf->add(a, b), c));
            CHECK(gf->mul(a, gf->mul(b, c)) == gf->mul(gf->mul(a, b), c));
            CHECK(gf->mul(a, gf->add(b, c)) == gf->add(gf->mul(a, b), gf->mul(a, c)));
            CHECK(gf->add(a, gf->neg(a)) == 0);
            if (a) CHECK(gf->mul(a, gf->inv(a)) == 1);
            // x^q = x
            CHECK(gf->pow(a, gf->q()) == a);
            // freshman's dream
            CHECK(gf->pow(gf->add(a, b), gf->p()) ==
                  gf->add(gf->pow(a, gf->p()), gf->pow(b, gf->p())));
        }
    }
}

TEST_CASE("default modulus is irreducible and deterministic") {
    auto gf1 = GF::make(3, 2);
    auto gf2 = GF::make(3, 2);
    CHECK(gf1->modulus() == gf2->modulus());
    CHECK(gf1->q() == 9);
    // w^2 + 1 is the lexicographically smallest irreducible over F_3
    CHECK(gf1->modulus() == std::vector<uint32_t>{1, 0, 1});
}

TEST_CASE("char-3 reduction: T^q - T") {
    auto gf = GF::make(3);
    Poly t = Poly::variable(gf);
    Poly r = t.frobenius(1) - t;
    CHECK(r.str() == "T^3+2*T");
}

TEST_CASE("L_2 as a product, cross-checked degree") {
    auto gf = GF::make(3);
    Poly t = Poly::variable(gf);
    Poly b1 = t.frobenius(1) - t;
    Poly b2 = t.frobenius(2) - t;
    Poly l2 = b1 * b2;
    CHECK(l2.degree() == 3 + 9);
    // schoolbook cross-check
    Poly acc(gf);
    for (int64_t i = 0; i <= b1.degree(); ++i)
        for (int64_t j = 0; j <= b2.degree(); ++j) {
            uint32_t c = gf->mul(b1.coeff(i), b2.coeff(j));
            acc = acc + Poly::monomial(gf, c, i + j);
        }
    CHECK(acc == l2);
}

TEST_CASE("divmod invariant on random polynomials") {
    auto gf = GF::make(5);
    std::mt19937_64 rng(7);
    for (int it = 0; it < 200; ++it) {
        Poly a = random_poly(gf, rng, 12);
        Poly b = random_poly(gf, rng, 6);
        if (b.is_zero()) continue;
        auto [q, r] = poly_divmod(a, b);
        CHECK(a == q * b + r);
        CHECK(r.degree() < b.degree());
    }
    CHECK_THROWS_AS(poly_divmod(random_poly(gf, rng, 3), Poly(gf)), arithmetic_error);
}

TEST_CASE("gcd is monic; gcd with zero") {
    auto gf = GF::make(3);
    Poly t = Poly::variable(gf);
    Poly f = (t + Poly::from_int(gf, 1)) * (t + Poly::from_int(gf, 2)).scaled(2);
    CHECK(poly_gcd(f, Poly(gf)) == f.monic());
    std::mt19937_64 rng(3);
    for (int it = 0; it < 100; ++it) {
        Poly a = random_poly(gf, rng, 8), b = random_poly(gf, rng, 8);
        Poly g = poly_gcd(a, b);
        if (g.is_zero()) {
            CHECK(a.is_zero());
            CHECK(b.is_zero());
            continue;
        }
        CHECK(g.is_monic());
        CHECK(poly_divides(g, a));
        CHECK(poly_divides(g, b));
    }
}

TEST_CASE("scalar arithmetic is exact") {
    auto gf = GF::make(3);
    std::mt19937_64 rng(11);
    for (int it = 0; it < 100; ++it) {
        Poly a = random_poly(gf, rng, 6), b = random_poly(gf, rng, 6);
        if (a.is_zero() || b.is_zero()) continue;
        Scalar x(a, b), y(b, a);
        CHECK((x * y).is_one());
        CHECK(x.den().is_monic());
        CHECK(poly_gcd(x.num(), x.den()).degree() <= 0);
        // (x+y)^p = x^p + y^p
        Scalar s = x + y;
        CHECK(s.pow(gf->p()) == x.pow(gf->p()) + y.pow(gf->p()));
    }
}

TEST_CASE("frobenius on scalars") {
    auto gf = GF::make(3);
    Poly t = Poly::variable(gf);
    Scalar x(t);
    CHECK(x.frobenius(1).str() == "T^3");
    Scalar c = Scalar::from_int(gf, 2);
    CHECK(c.frobenius(5) == c);
    Scalar inv(Poly::constant(gf, 1), t + Poly::from_int(gf, 1));
    CHECK(inv.frobenius(1).str() == "1/T^3+1");
    CHECK(inv.frobenius(1) == Scalar(Poly::constant(gf, 1), t.frobenius(1) + Poly::from_int(gf, 1)));
}

TEST_CASE("polynomial evaluation at a scalar") {
    auto gf = GF::make(3);
    Poly f = poly_parse(gf, "T^2+2*T+1");
    Scalar x(Poly::constant(gf, 1), Poly::variable(gf));  // 1/T
    // (1/T)^2 + 2/T + 1 = (1 + 2T + T^2)/T^2
    CHECK(poly_eval(f, x) == Scalar(poly_parse(gf, "T^2+2*T+1"), poly_parse(gf, "T^2")));
    CHECK(poly_eval(f, Scalar::from_int(gf, 2)) == Scalar::from_int(gf, 0));
}

TEST_CASE("degree ceiling guard") {
    FieldSpec spec;
    spec.p = 3;
    spec.degree_limit = 50;
    auto gf = GF::make(spec);
    Poly big = Poly::monomial(gf, 1, 30);
    CHECK_THROWS_AS(big * big, resource_error);
    CHECK_THROWS_AS(Poly::monomial(gf, 1, 51), resource_error);
}

TEST_CASE("canonical text round trip") {
    auto gf = GF::make(3);
    Poly f = poly_parse(gf, "T^3+2*T+1");
    CHECK(f.str() == "T^3+2*T+1");
    CHECK(poly_parse(gf, f.str()) == f);
    CHECK(poly_parse(gf, "T^2 - 1") == poly_parse(gf, "T^2+2"));
    Scalar s = scalar_parse(gf, "T+1/T^2+2*T");
    CHECK(s.num() == poly_parse(gf, "T+1"));
    CHECK(s.den() == poly_parse(gf, "T^2+2*T"));
    CHECK(scalar_parse(gf, s.str()) == s);
    CHECK(scalar_parse(gf, "T^2").str() == "T^2");

    auto gf9 = GF::make(3, 2);
    Poly g = poly_parse(gf9, "(w+1)*T^2+w*T+2");
    CHECK(g.str() == "(w+1)*T^2+w*T+2");
    CHECK(poly_parse(gf9, g.str()) == g);
}

TEST_CASE("irreducibility test") {
    auto gf = GF::make(3);
    CHECK(poly_is_irreducible(poly_parse(gf, "T")));
    CHECK(poly_is_irreducible(poly_parse(gf, "T+1")));
    CHECK(poly_is_irreducible(poly_parse(gf, "T^2+1")));
    CHECK_FALSE(poly_is_irreducible(poly_parse(gf, "T^2+2*T+1")));
    CHECK_FALSE(poly_is_irreducible(poly_parse(gf, "T^2")));
    CHECK(poly_is_irreducible(poly_parse(gf, "T^3+2*T+1")));
    CHECK_FALSE(poly_is_irreducible(poly_parse(gf, "T^3+2*T")));
}

TEST_SUITE_END();
