#include "oracle.hpp"

#include "starlab/literal.hpp"
#include "starlab/random.hpp"
#include "starlab/star.hpp"

#include <doctest.h>

using namespace starlab;

namespace {
const Space C1{Chart::complex, 1};
const Space P1{Chart::phase_space, 1};
SeriesPoly c(const char *s, int order) { return parse_series_poly(s, C1, order); }
SeriesPoly p(const char *s, int order) { return parse_series_poly(s, P1, order); }
} // namespace

TEST_SUITE("star-engine")
{
    TEST_CASE("wick and weyl commutators")
    {
        const auto wick = BidiffGenerator::wick(1);
        const auto wm = BidiffGenerator::weyl_moyal(1);
        for (int n = 1; n <= 6; ++n) {
            CHECK(star_multiply(c("z", n), c("zb", n), wick) - star_multiply(c("zb", n), c("z", n), wick) ==
                  c("2*l", n));
            CHECK(star_multiply(p("q", n), p("p", n), wm) - star_multiply(p("p", n), p("q", n), wm) == p("i*l", n));
        }
        CHECK(star_multiply(p("q", 1), p("p", 1), wm) == p("q*p + i/2*l", 1));
        CHECK(star_multiply(c("z", 0), c("zb", 0), wick) == c("z*zb", 0));
    }

    TEST_CASE("wick monomial products match the closed formula")
    {
        const auto wick = BidiffGenerator::wick(1);
        for (int a = 0; a <= 3; ++a) {
            for (int b = 0; b <= 2; ++b) {
                for (int cc = 0; cc <= 2; ++cc) {
                    for (int d = 0; d <= 3; ++d) {
                        const int order = 3;
                        const SeriesPoly f = series_poly(order, Poly::monomial(C1, {a, b}));
                        const SeriesPoly g = series_poly(order, Poly::monomial(C1, {cc, d}));
                        CHECK(star_multiply(f, g, wick) ==
                              oracle::to_series(oracle::wick_monomials(a, b, cc, d, order), C1, order));
                    }
                }
            }
        }
    }

    TEST_CASE("weyl-moyal monomial products match the bracket expansion")
    {
        const auto wm = BidiffGenerator::weyl_moyal(1);
        for (int a = 0; a <= 3; ++a) {
            for (int b = 0; b <= 3; ++b) {
                for (int cc = 0; cc <= 2; ++cc) {
                    for (int d = 0; d <= 2; ++d) {
                        const int order = 4;
                        const SeriesPoly f = series_poly(order, Poly::monomial(P1, {a, b}));
                        const SeriesPoly g = series_poly(order, Poly::monomial(P1, {cc, d}));
                        CHECK(star_multiply(f, g, wm) ==
                              oracle::to_series(oracle::moyal_monomials(a, b, cc, d, order), P1, order));
                    }
                }
            }
        }
    }

    TEST_CASE("unit and chart checks")
    {
        Rng rng(3);
        for (const auto &gen : {BidiffGenerator::wick(2), BidiffGenerator::weyl_moyal(2)}) {
            for (int k = 0; k < 20; ++k) {
                const SeriesPoly f = random_series_poly(rng, gen.space(), 3, 3);
                const SeriesPoly one = series_poly(3, Poly::constant(gen.space(), Scalar(1)));
                CHECK(star_multiply(f, one, gen) == f);
                CHECK(star_multiply(one, f, gen) == f);
            }
        }
        CHECK_THROWS_AS(star_multiply(p("q", 1), p("p", 1), BidiffGenerator::wick(1)), ChartMismatch);
        CHECK_THROWS_AS(star_multiply(c("z", 1), c("zb", 2), BidiffGenerator::wick(1)), OrderMismatch);
    }

    TEST_CASE("smoothing operators")
    {
        const auto n = SmoothingOperator::n_operator(1);
        CHECK(n.apply(p("q*p", 2)) == p("q*p + l/(2i)", 2));
        CHECK(n.apply(p("p", 2)) == p("p", 2));
        CHECK(SmoothingOperator::laplace_family(Rational(1, 4), 1).apply(p("q^2 + p^2", 2)) == p("q^2 + p^2 + l", 2));
        Rng rng(11);
        for (int k = 0; k < 20; ++k) {
            const SeriesPoly f = random_series_poly(rng, P1, 4, 4);
            CHECK(SmoothingOperator::n_inverse(1).apply(n.apply(f)) == f);
            CHECK(n.then(SmoothingOperator::n_inverse(1)).apply(f) == f);
        }
        CHECK_THROWS_AS(apply_smoothing(c("z", 1), n), ChartMismatch);
        // exp(l d^2/dz dzb) z zb = z zb + l
        CHECK(SmoothingOperator::wick_laplace(Rational(1), 1).apply(c("z*zb", 1)) == c("z*zb + l", 1));
    }

    TEST_CASE("property checks on the built-in products")
    {
        for (const auto &gen : {BidiffGenerator::wick(1), BidiffGenerator::weyl_moyal(1)}) {
            const auto a = assoc_check(gen, sample_triples(gen.space(), 120, 3, 4, 21));
            CHECK(a.pass);
            CHECK(a.samples == 120);
            const auto h = hermitian_check(gen, sample_pairs(gen.space(), 120, 3, 4, 22));
            CHECK(h.pass);
        }
        const auto w2 = BidiffGenerator::wick(2);
        CHECK(assoc_check(w2, sample_triples(w2.space(), 60, 2, 3, 23)).pass);
        CHECK(hermitian_check(w2, sample_pairs(w2.space(), 60, 2, 3, 24)).pass);
    }

    TEST_CASE("one-sided generator breaks the involution at (q, p)")
    {
        const auto g = BidiffGenerator::custom(P1, {BidiffTerm{0, 1, Scalar::i()}});
        const auto r = hermitian_check(g, sample_pairs(P1, 20, 2, 2, 1));
        REQUIRE_FALSE(r.pass);
        CHECK(r.witness[0] == p("q", 2));
        CHECK(r.witness[1] == p("p", 2));
        // (q * p)* = qp - il against p * q = qp
        CHECK(*r.lhs == p("q*p - i*l", 2));
        CHECK(*r.rhs == p("q*p", 2));
    }

    TEST_CASE("exponential products stay associative; the truncated first-order product does not")
    {
        // Both directed terms with mismatched coefficients: still associative,
        // because every constant-coefficient exponential product is.
        const auto g = BidiffGenerator::custom(P1, {BidiffTerm{0, 1, Scalar(2)}, BidiffTerm{1, 0, Scalar(-1)}});
        CHECK(assoc_check(g, sample_triples(P1, 80, 3, 3, 5)).pass);

        const auto r = assoc_check(first_order_product(BidiffGenerator::weyl_moyal(1)),
                                   sample_triples(P1, 80, 3, 2, 5));
        REQUIRE_FALSE(r.pass);
        CHECK(r.witness.size() == 3);
        CHECK(!(*r.lhs == *r.rhs));
        // The failure sits at order l^2.
        CHECK((*r.lhs)[0] == (*r.rhs)[0]);
        CHECK((*r.lhs)[1] == (*r.rhs)[1]);
    }

    TEST_CASE("custom generator validation")
    {
        CHECK_THROWS_AS(BidiffGenerator::custom(P1, {BidiffTerm{0, 2, Scalar(1)}}), ValidationError);
        const auto same = BidiffGenerator::custom(C1, {BidiffTerm{0, 1, Scalar(2)}});
        CHECK(star_multiply(c("z", 2), c("zb", 2), same) == star_multiply(c("z", 2), c("zb", 2), BidiffGenerator::wick(1)));
    }

    TEST_CASE("describe")
    {
        const std::string d = BidiffGenerator::wick(1).describe();
        CHECK(d.find("(2l)^r / r!") != std::string::npos);
        CHECK(BidiffGenerator::by_name("weyl-moyal", 2).space() == Space{Chart::phase_space, 2});
        CHECK_THROWS_AS(BidiffGenerator::by_name("moyal", 1), ValidationError);
    }
}
