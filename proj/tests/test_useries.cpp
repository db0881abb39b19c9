#include <doctest.h>

#include <random>
#include <sstream>

#include "dmf/useries.hpp"

using namespace dmf;

namespace {

USeries random_series(const FieldPtr& gf, std::mt19937_64& rng, int64_t weight, int type,
                      int64_t prec) {
    USeries f(gf, weight, type, prec);
    int64_t qm1 = gf->q() - 1;
    std::uniform_int_distribution<uint32_t> cd(0, gf->q() - 1);
    std::uniform_int_distribution<int> keep(0, 2);
    int64_t start = type == 0 ? 0 : type;
    for (int64_t i = start; i < prec; i += qm1) {
        if (keep(rng) == 0) continue;
        std::vector<uint32_t> num{cd(rng), cd(rng)};
        f.add_term(i, Scalar(Poly(gf, num)));
    }
    return f;
}

}  // namespace

TEST_SUITE_BEGIN("useries");

TEST_CASE("additive identity and cancellation") {
    auto gf = GF::make(3);
    std::mt19937_64 rng(1);
    USeries f = random_series(gf, rng, 4, 1, 40);
    USeries z = USeries::zero(gf, 4, 1, 40);
    CHECK(series_equal(f + z, f).equal);
    CHECK((f - f).is_zero_to_prec());
    CHECK_THROWS_AS(f + USeries::zero(gf, 6, 1, 40), grading_error);
}

TEST_CASE("ring laws at matched precision") {
    auto gf = GF::make(3);
    std::mt19937_64 rng(2);
    for (int it = 0; it < 10; ++it) {
        USeries a = random_series(gf, rng, 0, 1, 25);
        USeries b = random_series(gf, rng, 0, 1, 25);
        USeries c = random_series(gf, rng, 0, 1, 25);
        CHECK(series_equal((a * b) * c, a * (b * c)).equal);
        CHECK(series_equal(a * (b + c), a * b + a * c).equal);
        CHECK(series_equal(a * b, b * a).equal);
    }
}

TEST_CASE("grading is preserved by every operation") {
    auto gf = GF::make(5);
    std::mt19937_64 rng(3);
    USeries a = random_series(gf, rng, 2, 1, 30);
    USeries b = random_series(gf, rng, 2, 3, 30);
    USeries p = a * b;
    int64_t qm1 = gf->q() - 1;
    CHECK(p.type() == 0);  // 1 + 3 = 4 = 0 mod 4
    for (const auto& [i, v] : p.terms()) CHECK(i % qm1 == p.type());
    USeries fp = a.frobenius_pow(1);
    for (const auto& [i, v] : fp.terms()) CHECK(i % qm1 == fp.type());
    CHECK(fp.type() == a.type());
}

TEST_CASE("multiplication precision rule") {
    auto gf = GF::make(3);
    // f known to 10 with order 2, g known to 7 with order 3
    USeries f = USeries::monomial(gf, 0, 0, 2, Scalar::one(gf), 10);
    USeries g = USeries::monomial(gf, 0, 1, 3, Scalar::one(gf), 7);
    USeries p = f * g;
    CHECK(p.prec() == std::min<int64_t>(10 + 3, 7 + 2));
    CHECK(p.coeff(5).is_one());
}

TEST_CASE("series powers and frobenius powers agree") {
    auto gf = GF::make(3);
    std::mt19937_64 rng(4);
    USeries f = random_series(gf, rng, 0, 1, 12);
    USeries lhs = f.frobenius_pow(1);
    USeries rhs = f.pow(3);
    auto eq = series_equal(lhs, rhs);
    CHECK(eq.equal);
    CHECK(eq.checked_prec == rhs.prec());
    CHECK(series_equal(f.pow(0), USeries::one(gf)).equal);
}

TEST_CASE("h-squared style leading term") {
    auto gf = GF::make(3);
    // a series starting -u: its square starts +u^2
    USeries h = USeries::monomial(gf, 4, 1, 1, -Scalar::one(gf), 20);
    h.add_term(5, -Scalar::one(gf));
    USeries h2 = h * h;
    CHECK(h2.coeff(2).is_one());
    CHECK(h2.weight() == 8);
    CHECK(h2.type() == 0);
}

TEST_CASE("unit inversion") {
    auto gf = GF::make(3);
    CHECK(series_equal(USeries::one(gf).inverted_unit(), USeries::one(gf)).equal);
    // 1 + T u^2 has geometric inverse 1 - T u^2 + T^2 u^4 - ...
    Poly t = Poly::variable(gf);
    USeries f(gf, 0, 0, 11);
    f.add_term(0, Scalar::one(gf));
    f.add_term(2, Scalar(t));
    USeries inv = f.inverted_unit();
    Scalar expect = Scalar::one(gf);
    for (int64_t i = 0; i <= 10; i += 2) {
        CHECK(inv.coeff(i) == expect);
        expect = -(expect * Scalar(t));
    }
    CHECK(series_equal(f * inv, USeries::one(gf)).equal);
    std::mt19937_64 rng(5);
    USeries g = random_series(gf, rng, 0, 0, 25);
    g.add_term(0, Scalar::one(gf) - g.coeff(0));  // force unit constant
    CHECK(series_equal(g * g.inverted_unit(), USeries::one(gf)).equal);
    CHECK_THROWS_AS(USeries::u(gf, 5).inverted_unit(), arithmetic_error);
}

TEST_CASE("compose: identity and monomial substitution") {
    auto gf = GF::make(3);
    std::mt19937_64 rng(6);
    USeries f = random_series(gf, rng, 2, 1, 20);
    CHECK(series_equal(series_compose(f, USeries::u(gf)), f).equal);
    USeries u2 = USeries::monomial(gf, 0, 0, 2, Scalar::one(gf));
    USeries uq = USeries::monomial(gf, 0, 1, 3, Scalar::one(gf));
    USeries out = series_compose(u2, uq);
    CHECK(out.coeff(6).is_one());
    CHECK(out.order() == 6);
    CHECK_THROWS_AS(series_compose(f, USeries::one(gf)), value_error);
}

TEST_CASE("precision soundness under recomputation") {
    auto gf = GF::make(3);
    std::mt19937_64 rng(7);
    // same pipeline at two precisions agrees on the lower certified range
    for (int it = 0; it < 5; ++it) {
        std::mt19937_64 rng_lo(100 + it), rng_hi(100 + it);
        USeries alo = random_series(gf, rng_lo, 0, 1, 15), ahi = random_series(gf, rng_hi, 0, 1, 30);
        USeries plo = alo * alo, phi = ahi * ahi;
        auto eq = series_equal(plo, phi);
        CHECK(eq.equal);
        CHECK(eq.checked_prec == plo.prec());
    }
}

TEST_CASE("coefficient access beyond precision fails loudly") {
    auto gf = GF::make(3);
    USeries f = USeries::zero(gf, 0, 0, 10);
    CHECK(f.coeff(9).is_zero());
    CHECK_THROWS_AS(f.coeff(10), precision_error);
}

TEST_CASE("cache file round trip is bit exact") {
    auto gf = GF::make(3);
    std::mt19937_64 rng(8);
    USeries f = random_series(gf, rng, 8, 1, 33);
    std::ostringstream os;
    series_write(os, f);
    std::istringstream is(os.str());
    USeries g = series_read(is);
    CHECK(g.weight() == f.weight());
    CHECK(g.type() == f.type());
    CHECK(g.prec() == f.prec());
    CHECK(series_equal(f, g).equal);
    std::ostringstream os2;
    series_write(os2, g);
    CHECK(os.str() == os2.str());

    auto gf9 = GF::make(3, 2);
    USeries h(gf9, 2, 1, 9);
    h.add_term(1, Scalar(poly_parse(gf9, "(w+1)*T+2")));
    std::ostringstream os3;
    series_write(os3, h);
    std::istringstream is3(os3.str());
    CHECK(series_equal(series_read(is3), h).equal);
}

TEST_SUITE_END();
