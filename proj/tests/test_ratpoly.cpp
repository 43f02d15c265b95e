#include <hessweave/ratpoly.hpp>
#include <hessweave/xfloat.hpp>

#include <catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace hessweave;

static BiPoly mono(int i, int j, long n, long d = 1) {
    return BiPoly::monomial(i, j, Rational(n, d));
}

TEST_CASE("rational parse/format") {
    CHECK(to_fraction_string(Rational(3, 4)) == "3/4");
    CHECK(to_fraction_string(Rational(-6, 8)) == "-3/4");
    CHECK(to_fraction_string(Rational(0)) == "0/1");
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-7/2") == Rational(-7, 2));
    CHECK(parse_rational("5") == Rational(5));
    CHECK(parse_rational("2/4") == Rational(1, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}

TEST_CASE("ceil_log2 exact") {
    CHECK(ceil_log2(Rational(1)) == 0);
    CHECK(ceil_log2(Rational(2)) == 1);
    CHECK(ceil_log2(Rational(3)) == 2);
    CHECK(ceil_log2(Rational(1, 2)) == -1);
    CHECK(ceil_log2(Rational(5, 3)) == 1);
    CHECK(ceil_log2(Rational(1, 8)) == -3);
    CHECK(ceil_log2(Rational(1, 7)) == -2);
    CHECK(ceil_log2(Rational(Integer(1) << 100)) == 100);
    CHECK_THROWS_AS(ceil_log2(Rational(0)), std::domain_error);
}

TEST_CASE("xfloat interval arithmetic encloses exact rationals") {
    hwtest::Rng rng(42);
    for (int k = 0; k < 200; ++k) {
        Rational a = rng.rational(-1000, 1000, 7), b = rng.rational(-1000, 1000, 7);
        XInterval ia = xinterval_of_rational(a), ib = xinterval_of_rational(b);
        auto contains = [](const XInterval& iv, const Rational& v) {
            return rational_of_xfloat(iv.lo) <= v && v <= rational_of_xfloat(iv.hi);
        };
        REQUIRE(contains(ia, a));
        REQUIRE(contains(ib, b));
        REQUIRE(contains(xi_add(ia, ib), a + b));
        REQUIRE(contains(xi_sub(ia, ib), a - b));
        REQUIRE(contains(xi_mul(ia, ib), a * b));
    }
}

TEST_CASE("xfloat handles huge dynamic range") {
    // (2^1000 + 1) stays bracketed, and products across 2^2000 never overflow.
    Integer big = (Integer(1) << 1000) + 1;
    XInterval ib = xinterval_of_rational(Rational(big));
    CHECK(rational_of_xfloat(ib.lo) <= Rational(big));
    CHECK(Rational(big) <= rational_of_xfloat(ib.hi));
    XInterval tiny = xinterval_of_rational(Rational(Integer(1), Integer(1) << 1000));
    XInterval prod = xi_mul(ib, tiny);
    CHECK(prod.certified_sign() == 1);
    // certified sign of a clearly negative combination
    XInterval neg = xi_sub(tiny, ib);
    CHECK(neg.certified_sign() == -1);
}

TEST_CASE("arith examples") {
    BiPoly x = mono(1, 0, 1), y = mono(0, 1, 1);
    CHECK((x + y) * (x - y) == mono(2, 0, 1) - mono(0, 2, 1));
    BiPoly p = mono(3, 2, 7, 2) + mono(0, 0, -1);
    CHECK(p + BiPoly{} == p);
    BiPoly lhs = (mono(0, 0, 1) + mono(0, 1, 1)) * (mono(0, 0, 1) + mono(0, 1, 3));
    CHECK(lhs == mono(0, 0, 1) + mono(0, 1, 4) + mono(0, 2, 3));
}

TEST_CASE("partial derivative examples") {
    CHECK(partial(mono(2, 3, 1), Var::X) == mono(1, 3, 2));
    CHECK(partial(mono(2, 0, 1), Var::Y).is_zero());
    // d/dX (X + tXY) = 1 + tY
    ParamPoly p;
    p.add_term({1, 0}, TPoly::constant(Rational(1)));
    p.add_term({1, 1}, TPoly::monomial(1, Rational(1)));
    ParamPoly expect;
    expect.add_term({0, 0}, TPoly::constant(Rational(1)));
    expect.add_term({0, 1}, TPoly::monomial(1, Rational(1)));
    CHECK(partial(p, Var::X) == expect);
}

TEST_CASE("hessian examples") {
    CHECK(hessian(mono(2, 0, 1) + mono(0, 2, 1)) == mono(0, 0, 4));
    CHECK(hessian(mono(1, 1, 1)) == mono(0, 0, -1));
    // Hess(X^2 Y^2 (1+Y)) = -4 X^2 Y^2 (6Y^2 + 8Y + 3)
    BiPoly q = mono(2, 2, 1) + mono(2, 3, 1);
    BiPoly h = hessian(q);
    BiPoly expect = (mono(0, 2, 6) + mono(0, 1, 8) + mono(0, 0, 3)) * mono(2, 2, -4);
    CHECK(h == expect);
    CHECK(eval(h, Rational(1), Rational(1)) == Rational(-68));
    CHECK(eval_sign(h, Rational(1), Rational(1)) == -1);
}

TEST_CASE("eval_sign examples") {
    BiPoly p = mono(2, 0, 1) - mono(0, 2, 1);
    CHECK(eval_sign(p, Rational(1), Rational(1)) == 0);
    CHECK(eval_sign(mono(1, 0, 1) + mono(0, 1, 1), Rational(1), Rational(2)) == 1);
}

TEST_CASE("specialize_t examples") {
    ParamPoly p;  // X + tY
    p.add_term({1, 0}, TPoly::constant(Rational(1)));
    p.add_term({0, 1}, TPoly::monomial(1, Rational(1)));
    CHECK(specialize_t(p, Rational(0)) == mono(1, 0, 1));
    CHECK(specialize_t(p, Rational(1, 2)) == mono(1, 0, 1) + mono(0, 1, 1, 2));
    ParamPoly q;  // t^2 X + t X
    TPoly c = TPoly::monomial(2, Rational(1)) + TPoly::monomial(1, Rational(1));
    q.add_term({1, 0}, c);
    CHECK(specialize_t(q, Rational(1, 4)) == mono(1, 0, 5, 16));
}

TEST_CASE("total_degree examples") {
    CHECK(total_degree(mono(2, 3, 1)) == 5);
    CHECK(total_degree(mono(0, 0, 7)) == 0);
    CHECK_THROWS_AS(total_degree(BiPoly{}), std::domain_error);
    hwtest::Rng rng(7);
    for (int rep = 0; rep < 5; ++rep) {
        BiPoly q = hwtest::random_dense(rng, 4);
        CHECK(total_degree(hessian(q)) == 4);
    }
}

TEST_CASE("hessian affine invariance and scaling") {
    hwtest::Rng rng(11);
    for (int rep = 0; rep < 25; ++rep) {
        BiPoly q = hwtest::random_dense(rng, rng.range(2, 4) == 2 ? 3 : 4);
        Rational a = rng.rational(-5, 5), b = rng.rational(-5, 5), c = rng.rational(-5, 5);
        BiPoly shifted = q + mono(1, 0, 1) * BiPoly::monomial(0, 0, a) +
                         mono(0, 1, 1) * BiPoly::monomial(0, 0, b) + BiPoly::monomial(0, 0, c);
        CHECK(hessian(shifted) == hessian(q));
        Rational lam = rng.nonzero_rational(-5, 5);
        BiPoly scaled;
        for (const auto& [e, cf] : q.terms) scaled.add_term(e, cf * lam);
        CHECK(hessian(scaled) == hessian(q) * BiPoly::monomial(0, 0, lam * lam));
    }
}

TEST_CASE("hessian commutes with specialize_t") {
    hwtest::Rng rng(13);
    for (int rep = 0; rep < 10; ++rep) {
        ParamPoly p;
        for (int k = 0; k < 8; ++k)
            p.add_term({static_cast<int>(rng.range(0, 3)), static_cast<int>(rng.range(0, 3))},
                       TPoly::monomial(rng.range(0, 3), rng.rational(-4, 4)));
        Rational t0 = rng.rational(1, 5, 6);
        CHECK(specialize_t(hessian(p), t0) == hessian(specialize_t(p, t0)));
    }
}

TEST_CASE("arith laws on random triples") {
    hwtest::Rng rng(17);
    for (int rep = 0; rep < 10; ++rep) {
        BiPoly a = hwtest::random_dense(rng, 2), b = hwtest::random_dense(rng, 2),
               c = hwtest::random_dense(rng, 2);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("monomial content helpers") {
    BiPoly h = hessian(mono(2, 2, 1) + mono(2, 3, 1));
    Exponent m = monomial_content(h);
    CHECK(m == Exponent{2, 2});
    BiPoly reduced = divide_monomial(h, m);
    CHECK(reduced == mono(0, 2, -24) + mono(0, 1, -32) + mono(0, 0, -12));
    CHECK(degree_in(reduced, Var::Y) == 2);
    CHECK(coeff_of_power(reduced, Var::Y, 2) == mono(0, 0, -24));
}
