#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "alphaexp/expansion.hpp"
#include "oracles.hpp"

using namespace alphaexp;

namespace {

std::vector<std::uint32_t> as_vector(const DigitPrefix& p)
{
    return p.digits();
}

const AlphaParams two(Rational(2), Arithmetic::rational);
const AlphaParams three_halves(Rational(3, 2), Arithmetic::rational);

}  // namespace

TEST_CASE("text helpers")
{
    CHECK(parse_rational("3/2") == Rational(3, 2));
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational("-3.5") == Rational(-7, 2));
    CHECK(parse_rational("7") == 7);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);

    const auto dv = parse_decimal("0.30");
    CHECK(dv.value == Rational(3, 10));
    CHECK(dv.ulp == Rational(1, 100));

    CHECK(to_decimal(Rational(1, 3), 4, false) == "0.3333");
    CHECK(to_decimal(Rational(1, 3), 4, true) == "0.3334");

    CHECK(parse_arithmetic("float") == Arithmetic::floating);
    CHECK(parse_arithmetic("rational") == Arithmetic::rational);
    CHECK_THROWS_AS(parse_arithmetic("quad"), std::invalid_argument);
}

TEST_CASE("alpha parameters")
{
    const auto p = AlphaParams::parse("3/2");
    CHECK(p.exact() == Rational(3, 2));
    CHECK(p.value() == doctest::Approx(1.5));
    CHECK(p.log_alpha_minus_one() == doctest::Approx(std::log(0.5)));
    CHECK(p.contraction_ratio(2) == doctest::Approx(0.5 / 2.25));
    CHECK_THROWS_AS(AlphaParams::parse("1"), std::domain_error);
    CHECK_THROWS_AS(AlphaParams(0.5), std::domain_error);
    CHECK_THROWS_AS(p.contraction_ratio(0), std::domain_error);
}

TEST_CASE("digit prefix")
{
    const DigitPrefix p{2, 1, 3};
    CHECK(p.digit_sum() == 6);
    CHECK(p.to_string() == "2,1,3");
    CHECK(DigitPrefix::parse("2,1,3") == p);
    CHECK(p.first(2) == DigitPrefix{2, 1});
    CHECK_THROWS_AS(DigitPrefix({1, 0}), std::domain_error);
    CHECK_THROWS_AS(DigitPrefix::parse("1,x"), std::invalid_argument);
}

TEST_CASE("enclosure validation")
{
    CHECK_THROWS_AS(Enclosure(Rational(1, 2), Rational(1, 3)), std::domain_error);
    CHECK_THROWS_AS(Enclosure(Rational(1, 2), Rational(3, 2)), std::domain_error);
    CHECK(Enclosure(Rational(1, 4), Rational(1, 2)).width() == Rational(1, 4));
}

TEST_CASE("digit_of agrees with a brute-force branch scan")
{
    oracle::Gen gen(11);
    for (const auto* params : {&two, &three_halves}) {
        for (int k = 0; k < 300; ++k) {
            const Rational x = gen.rational_unit(30);
            CHECK(digit_of(x, *params) == oracle::digit(x, params->exact()));
        }
    }
}

TEST_CASE("boundary points alpha^-k belong to branch k+1")
{
    for (const auto* params : {&two, &three_halves}) {
        for (unsigned k = 0; k <= 40; ++k) {
            const Rational pk = 1 / oracle::qpow(params->exact(), k);
            CHECK(digit_of(pk, *params) == k + 1);
        }
    }
    CHECK(digit_of(0.25, two) == 3);
    CHECK(digit_of(1.0, two) == 1);
    CHECK_THROWS_AS(digit_of(Rational(0), two), std::domain_error);
    CHECK_THROWS_AS(digit_of(1.5, two), std::domain_error);
}

TEST_CASE("1/2 in base 2 has digits 2,1,1,...")
{
    const auto enc = encode(Enclosure::point(Rational(1, 2)), two, 40);
    REQUIRE(enc.prefix.size() == 40);
    CHECK(enc.certified == 40);
    CHECK(enc.prefix[0] == 2);
    for (std::size_t i = 1; i < 40; ++i) {
        CHECK(enc.prefix[i] == 1);
    }
    // the series oracle reproduces the point up to the cylinder length
    const Rational s = oracle::series(as_vector(enc.prefix), two.exact());
    CHECK(s < Rational(1, 2));
    CHECK(Rational(1, 2) - s <= oracle::cylinder_length(as_vector(enc.prefix), two.exact()));
}

TEST_CASE("encode matches the exact branch-map oracle")
{
    oracle::Gen gen(5);
    for (const auto* params : {&two, &three_halves}) {
        for (int k = 0; k < 50; ++k) {
            const Rational x = gen.rational_unit(40);
            const auto enc = encode(Enclosure::point(x), *params, 60);
            CHECK(as_vector(enc.prefix) == oracle::digits(x, params->exact(), 60));
        }
    }
}

TEST_CASE("decode is the cylinder of the series oracle")
{
    oracle::Gen gen(9);
    for (const auto* params : {&two, &three_halves}) {
        for (int k = 0; k < 100; ++k) {
            const auto d = gen.digits(gen.integer(1, 25), 7);
            const Enclosure cyl = decode(DigitPrefix(d), *params);
            const Rational s = oracle::series(d, params->exact());
            const Rational len = oracle::cylinder_length(d, params->exact());
            CHECK(cyl.lo == s);
            CHECK(cyl.hi == s + len);
            CHECK(exact_cylinder_length(DigitPrefix(d), *params) == len);
            const auto part = reconstruct_partial_exact(DigitPrefix(d), *params);
            CHECK(part.value == s);
            CHECK(part.tail_bound == len);
        }
    }
    CHECK_THROWS_AS(decode(DigitPrefix{}, two), std::domain_error);
}

TEST_CASE("round trip: x lies in the decoded cylinder of its digits")
{
    oracle::Gen gen(21);
    for (const auto* params : {&two, &three_halves}) {
        for (int k = 0; k < 100; ++k) {
            const Rational x = gen.rational_unit();
            const auto enc = encode(Enclosure::point(x), *params, 200);
            const Enclosure cyl = decode(enc.prefix, *params);
            CHECK(cyl.contains(x));
            CHECK(cyl.lo < x);   // cylinders are half-open on the left
        }
    }
}

TEST_CASE("conjugacy: d_{i+1}(x) = d_i(Tx)")
{
    oracle::Gen gen(33);
    for (int k = 0; k < 100; ++k) {
        const Rational x = gen.rational_unit();
        const auto st = step(x, three_halves);
        CHECK(st.digit == digit_of(x, three_halves));
        const auto dx = encode(Enclosure::point(x), three_halves, 30).prefix;
        const auto dtx = encode(Enclosure::point(st.image), three_halves, 29).prefix;
        for (std::size_t i = 0; i + 1 < dx.size() && i < dtx.size(); ++i) {
            CHECK(dx[i + 1] == dtx[i]);
        }
    }
}

TEST_CASE("floating step agrees with the exact step on the digit")
{
    oracle::Gen gen(2);
    const AlphaParams p = two.with_mode(Arithmetic::floating);
    for (int k = 0; k < 200; ++k) {
        const double x = gen.real(1e-6, 1.0);
        const auto fs = step(x, p);
        const auto es = step(Rational(x), two);
        CHECK(fs.digit == es.digit);
        if (fs.certified) {
            CHECK(fs.image == doctest::Approx(es.image.get_d()).epsilon(1e-9));
        }
    }
}

TEST_CASE("inexact backends certify only exact digits")
{
    oracle::Gen gen(17);
    for (Arithmetic mode : {Arithmetic::floating, Arithmetic::extended}) {
        const AlphaParams p = three_halves.with_mode(mode);
        for (int k = 0; k < 30; ++k) {
            const Rational x = gen.rational_unit();
            const auto exact = oracle::digits(x, p.exact(), 400);
            const auto enc = encode(Enclosure::point(x), p, 400);
            CHECK(enc.certified > 0);
            REQUIRE(enc.certified <= enc.prefix.size());
            for (std::size_t i = 0; i < enc.certified; ++i) {
                CHECK(enc.prefix[i] == exact[i]);
            }
        }
    }
}

TEST_CASE("extended precision certifies more than double")
{
    const Rational x(1, 3);
    const auto f = encode(Enclosure::point(x), two.with_mode(Arithmetic::floating), 500);
    const auto e = encode(Enclosure::point(x), AlphaParams(Rational(2), Arithmetic::extended, 512), 500);
    CHECK(f.certified >= 20);
    CHECK(e.certified > f.certified);
}

TEST_CASE("certified count is monotone as the enclosure shrinks")
{
    oracle::Gen gen(4);
    for (int k = 0; k < 40; ++k) {
        const Rational x = gen.rational_unit(30);
        std::size_t prev = 0;
        Rational radius(1, 8);
        for (int j = 0; j < 12; ++j) {
            Rational lo = x - radius;
            Rational hi = x + radius;
            if (lo <= 0) {
                lo = x / 2;
            }
            if (hi > 1) {
                hi = 1;
            }
            const auto enc = encode(Enclosure(lo, hi), three_halves, 200);
            CHECK(enc.certified >= prev);
            prev = enc.certified;
            radius /= 16;
        }
    }
}

TEST_CASE("interval encoding: certified digits are shared by both endpoints")
{
    oracle::Gen gen(8);
    for (int k = 0; k < 60; ++k) {
        Rational a = gen.rational_unit(20);
        Rational b = gen.rational_unit(20);
        if (a > b) {
            std::swap(a, b);
        }
        const auto enc = encode(Enclosure(a, b), two, 100);
        const auto da = oracle::digits(a, two.exact(), 100);
        const auto db = oracle::digits(b, two.exact(), 100);
        for (std::size_t i = 0; i < enc.certified; ++i) {
            CHECK(enc.prefix[i] == da[i]);
            CHECK(enc.prefix[i] == db[i]);
        }
        if (enc.certified > 0) {
            CHECK(decode(enc.prefix.first(enc.certified), two).contains(Enclosure(a, b)));
        }
    }
    CHECK_THROWS_AS(encode(Enclosure(Rational(0), Rational(1, 2)), two, 10), std::domain_error);
}

TEST_CASE("cylinder lengths are consistent with decode widths")
{
    oracle::Gen gen(12);
    for (int k = 0; k < 100; ++k) {
        const DigitPrefix p(gen.digits(gen.integer(1, 30), 9));
        const double exact_log = std::log(exact_cylinder_length(p, three_halves).get_d());
        CHECK(log_cylinder_length(p, three_halves) == doctest::Approx(exact_log).epsilon(1e-12));
        const auto f = decode(p, three_halves.with_mode(Arithmetic::floating));
        const auto q = decode(p, three_halves);
        CHECK(f.contains(q));   // outward rounding
        const auto part = reconstruct_partial(p, three_halves);
        CHECK(part.value == doctest::Approx(q.lo.get_d()).epsilon(1e-12));
    }
}
