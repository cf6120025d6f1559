#include "starlab/literal.hpp"
#include "starlab/random.hpp"
#include "starlab/series.hpp"

#include <doctest.h>

using namespace starlab;

TEST_SUITE("exact-core")
{
    TEST_CASE("scalar arithmetic is exact")
    {
        const Scalar a(Rational(1, 3), Rational(2));
        const Scalar b(Rational(-1, 2), Rational(1, 5));
        CHECK((a * b) / b == a);
        CHECK((a + b) - b == a);
        CHECK(a.conj().conj() == a);
        const Scalar n = a * a.conj();
        CHECK(n.is_real());
        CHECK(sgn(n.re()) > 0);
        CHECK(n.re() == Rational(1, 9) + Rational(4));
        CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
        CHECK(Scalar::ratio(2, 4) == Scalar(Rational(1, 2)));
    }

    TEST_CASE("series ring operations respect truncation")
    {
        CHECK(parse_series("(1 + l)*(1 - l)", 2) == parse_series("1 - l^2", 2));
        CHECK(parse_series("l", 1) * parse_series("l", 1) == parse_series("0", 1));
        CHECK((parse_series("2*l", 2) * parse_series("2*l", 2)).scaled(Scalar(Rational(1, 2))) ==
              parse_series("2*l^2", 2));
        const ScalarSeries x = parse_series("3 - 2*l + 1/7*l^3", 4);
        CHECK(x * inverse(x) == scalar_series(4, Scalar(1)));
    }

    TEST_CASE("mismatched orders are rejected")
    {
        CHECK_THROWS_AS(parse_series("1", 1) + parse_series("1", 2), OrderMismatch);
        CHECK_THROWS_AS(parse_series("1", 1) * parse_series("1", 2), OrderMismatch);
        CHECK_THROWS_AS(parse_series("1", 3).truncated(4), OrderMismatch);
    }

    TEST_CASE("lexicographic order on real series")
    {
        CHECK(compare(parse_series("l", 2), parse_series("0", 2)) == Ordering::greater);
        CHECK(compare(parse_series("1 - 1000*l", 2), parse_series("l", 2)) == Ordering::greater);
        CHECK(compare(parse_series("-l^2", 2), parse_series("0", 2)) == Ordering::less);
        CHECK(compare(parse_series("l", 2), parse_series("l", 2)) == Ordering::equal);
        CHECK(sign(parse_series("0", 3)) == 0);
        CHECK_THROWS_AS(compare(parse_series("i*l", 1), parse_series("0", 1)), ValidationError);
    }

    TEST_CASE("conjugation")
    {
        CHECK(conj(parse_series("i*l", 1)) == parse_series("-i*l", 1));
        CHECK(conj(parse_series("1 + (2+3i)*l", 1)) == parse_series("1 + (2-3i)*l", 1));
        CHECK(is_real(parse_series("1 - 4/3*l", 1)));
        CHECK_FALSE(is_real(parse_series("1 - 4/3i*l", 1)));
        Rng rng(17);
        for (int k = 0; k < 50; ++k) {
            const ScalarSeries x = random_series(rng, 3, false);
            CHECK(conj(conj(x)) == x);
            const ScalarSeries nx = conj(x) * x;
            CHECK(is_real(nx));
            CHECK(compare(nx, x.zero_like()) != Ordering::less);
        }
    }

    TEST_CASE("literal printing and parsing round trip")
    {
        const ScalarSeries x = parse_series("1/2 - 3i*l + (1+1i)*l^2", 2);
        CHECK(to_string(x) == "1/2 - 3i*l + (1+1i)*l^2");
        CHECK(parse_series(to_string(x), 2) == x);
        CHECK(to_string(parse_series("0", 3)) == "0");
        CHECK_THROWS_AS(parse_series("1/0", 1), ParseError);
        CHECK_THROWS_AS(parse_series("1 +", 1), ParseError);
        CHECK_THROWS_AS(parse_series("1/(l)", 1), ParseError);
    }
}
