#include "oracle.hpp"

#include "starlab/functional.hpp"
#include "starlab/literal.hpp"
#include "starlab/random.hpp"

#include <doctest.h>

using namespace starlab;

namespace {
const Space C1{Chart::complex, 1};
const Space P1{Chart::phase_space, 1};
SeriesPoly c(const char *s, int order) { return parse_series_poly(s, C1, order); }
SeriesPoly p(const char *s, int order) { return parse_series_poly(s, P1, order); }
ScalarSeries s(const char *t, int order) { return parse_series(t, order); }
} // namespace

TEST_SUITE("functional-lab")
{
    TEST_CASE("evaluation")
    {
        CHECK(Functional::delta_origin(C1).evaluate(c("z*zb + 2*l", 1)) == s("2*l", 1));
        CHECK(Functional::smoothed_delta(P1, Rational(1, 4)).evaluate(p("q^2 + p^2 - l", 1)) == s("0", 1));
        CHECK(Functional::gaussian_moment(1).evaluate(p("q^4", 0)) == s("3", 0));
        for (int k = 0; k <= 8; ++k) {
            CHECK(Functional::gaussian_moment(1).evaluate(series_poly(0, Poly::monomial(P1, {k, 0}))) ==
                  scalar_series(0, Scalar(oracle::gaussian_moment(k))));
        }
        // p is set to zero.
        CHECK(Functional::gaussian_moment(1).evaluate(p("q^2*p + 1", 0)) == s("1", 0));
        CHECK_THROWS_AS(Functional::delta_origin(C1).evaluate(p("q", 0)), ChartMismatch);
    }

    TEST_CASE("gram forms on small bases")
    {
        const GramForm w = gram_matrix(Functional::delta_origin(C1), BidiffGenerator::wick(1), 1, 1);
        CHECK(w.entries(0, 0) == s("1", 1));
        CHECK(w.entries(2, 2) == s("2*l", 1));
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                if (!(i == j && i != 1)) {
                    CHECK(w.entries(i, j).is_zero());
                }
            }
        }
        const GramForm m = gram_matrix(Functional::delta_origin(P1), BidiffGenerator::weyl_moyal(1), 1, 1);
        CHECK(m.entries(1, 2) == s("i/2*l", 1));
        CHECK(m.entries(2, 1) == s("-i/2*l", 1));
        CHECK(m.entries(1, 1).is_zero());
        CHECK(m.entries(0, 0) == s("1", 1));
    }

    TEST_CASE("fock norms follow a! (2l)^a")
    {
        const int d = 4;
        const int order = 4;
        const GramForm g = gram_matrix(Functional::delta_origin(C1), BidiffGenerator::wick(1), d, order);
        for (std::size_t i = 0; i < g.basis.size(); ++i) {
            const int a = g.basis[i][1];
            const bool pure_zb = g.basis[i][0] == 0;
            const ScalarSeries expect =
                pure_zb ? lambda_power(order, a, Scalar(oracle::fact(a) * oracle::power(Rational(2), a)))
                        : ScalarSeries(order, Scalar());
            CHECK(g.entries(i, i) == expect);
        }
    }

    TEST_CASE("serial and parallel gram agree")
    {
        Rng rng(8);
        const Functional t = random_table_functional(rng, C1, 3, 2);
        for (const auto &[w, gen] : {std::pair{Functional::delta_origin(P1), BidiffGenerator::weyl_moyal(1)},
                                     std::pair{Functional::smoothed_delta(P1, Rational(1, 3)), BidiffGenerator::weyl_moyal(1)},
                                     std::pair{t, BidiffGenerator::wick(1)}}) {
            const GramForm a = gram_matrix(w, gen, 3, 2);
            const GramForm b = gram_matrix_serial(w, gen, 3, 2);
            CHECK(a.entries == b.entries);
            CHECK(is_hermitian(a.entries));
            CHECK(a.entries(0, 0) == w.evaluate(series_poly(2, Poly::constant(w.space(), Scalar(1)))));
        }
    }

    TEST_CASE("table functionals")
    {
        Functional::Table entries;
        entries[{0, 0}] = {Scalar(1)};
        entries[{1, 0}] = {Scalar(0), Scalar(2)};
        const Functional t = Functional::table(C1, entries);
        CHECK(t.evaluate(c("3 + z", 2)) == s("3 + 2*l", 2));
        try {
            (void)t.evaluate(c("zb", 1));
            FAIL("expected a missing-monomial error");
        } catch (const ValidationError &e) {
            CHECK(std::string(e.what()).find("'zb'") != std::string::npos);
        }
        Rng rng(4);
        const Functional r = random_table_functional(rng, C1, 2, 2);
        CHECK(r.is_real_on(4, 2));
        const GramForm g0 = gram_matrix(r, BidiffGenerator::pointwise(C1), 2, 0);
        const PsdVerdict v = psd_decide(g0.entries);
        CHECK(v.psd);
        CHECK(v.zero_directions.empty());
    }

    TEST_CASE("deformation search")
    {
        const auto wm = BidiffGenerator::weyl_moyal(1);
        const Functional delta = Functional::delta_origin(P1);
        const DeformResult r = deform_functional(delta, wm, 1, 1);
        REQUIRE(r.success);
        CHECK(r.c == Rational(1, 4));
        CHECK(r.functional->name() == "smoothed-delta(1/4)");

        // The order-l block on (q, p) is l [[2c, i/2], [-i/2, 2c]]; it is psd
        // iff 4c^2 >= 1/4. Compare the decision with that determinant on a grid.
        for (int num = 0; num <= 12; ++num) {
            const Rational cc(num, 16);
            const bool expect = 4 * cc * cc >= Rational(1, 4);
            const GramForm g = gram_matrix(delta.deformed(cc), wm, 1, 1);
            CHECK(psd_decide(g.entries).psd == expect);
        }

        const DeformResult capped = deform_functional(delta, wm, 1, 1, Rational(1, 8));
        CHECK_FALSE(capped.success);
        REQUIRE(capped.verdict.witness);
        CHECK(*capped.verdict.witness == SeriesVector{s("0", 1), s("1", 1), s("i", 1)});
        // v*Gv = (4c - 1) l at c = 1/8
        CHECK(*capped.verdict.witness_value == s("-1/2*l", 1));

        const DeformResult wick = deform_functional(Functional::delta_origin(C1), BidiffGenerator::wick(1), 2, 2);
        CHECK(wick.success);
        CHECK(wick.c == Rational(0));

        // Not classically positive: the search refuses.
        Functional::Table neg;
        for (const auto &m : monomial_basis(P1, 2)) {
            neg[m] = {Scalar(total_degree(m) == 2 && m[0] == 2 ? -1 : 0)};
        }
        neg[{0, 0}] = {Scalar(1)};
        CHECK_THROWS_AS(deform_functional(Functional::table(P1, neg), wm, 1, 1), IndefiniteForm);
    }
}
