#include "oracle.hpp"

#include "starlab/gns.hpp"
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

std::vector<std::string> strings(const std::vector<SeriesPoly> &fs)
{
    std::vector<std::string> out;
    for (const auto &f : fs) {
        out.push_back(to_string(f));
    }
    return out;
}
} // namespace

TEST_SUITE("gns-climit")
{
    TEST_CASE("gelfand ideals")
    {
        const auto wick = BidiffGenerator::wick(1);
        const auto wm = BidiffGenerator::weyl_moyal(1);
        const GelfandIdeal fock = gelfand_ideal_basis(Functional::delta_origin(C1), wick, 2, 2);
        CHECK(strings(fock.basis) == std::vector<std::string>{"z", "z^2", "z*zb"});
        CHECK(fock.left_ideal.pass);
        const GelfandIdeal cl = gelfand_ideal_basis(Functional::delta_origin(C1), BidiffGenerator::pointwise(C1), 1, 0);
        CHECK(strings(cl.basis) == std::vector<std::string>{"z", "zb"});
        const GelfandIdeal sm = gelfand_ideal_basis(Functional::smoothed_delta(P1, Rational(1, 4)), wm, 1, 1);
        REQUIRE(sm.basis.size() == 1);
        // Normalised at its pivot: q + ip and -i(q + ip) span the same line.
        const SeriesPoly v = sm.basis[0];
        const bool q_pivot = v == p("q + i*p", 1);
        const bool p_pivot = v == p("p - i*q", 1);
        CHECK((q_pivot || p_pivot));
        CHECK_THROWS_AS(gelfand_ideal_basis(Functional::delta_origin(P1), wm, 1, 1), IndefiniteForm);
    }

    TEST_CASE("bargmann-fock representation")
    {
        const int order = 2;
        const GnsResult g = gns_build(Functional::delta_origin(C1), BidiffGenerator::wick(1), 2, order,
                                      {c("z", order), c("zb", order)});
        CHECK(g.checks.pass());
        const RepPresentation &r = g.rep;
        CHECK(r.top == 3);
        CHECK(r.levels[2].labels == std::vector<std::string>{"1", "zb", "zb^2"});
        for (int a = 0; a <= 2; ++a) {
            // <zb^a, zb^a> = a! (2l)^a
            CHECK(r.levels[2].gram(a, a) ==
                  lambda_power(order, a, Scalar(oracle::fact(a) * oracle::power(Rational(2), a))));
        }
        // pi(zb) psi_1 = psi_zb, pi(z) psi_zb = 2l psi_1.
        const SeriesMatrix &pzb = r.op(1, 0);
        CHECK(pzb(1, 0) == s("1", order));
        CHECK(pzb(0, 0).is_zero());
        const SeriesMatrix &pz = r.op(0, 1);
        CHECK(pz(0, 1) == s("2*l", order));
        CHECK(pz(1, 1).is_zero());
        CHECK(r.cyclic == SeriesVector{s("1", order)});
    }

    TEST_CASE("classical evaluation representation")
    {
        const GnsResult g = gns_build(Functional::delta_origin(C1), BidiffGenerator::pointwise(C1), 2, 1,
                                      {c("z", 1), c("zb", 1), c("3 + z*zb", 1)});
        CHECK(g.checks.pass());
        for (int l = 0; l <= g.rep.top; ++l) {
            CHECK(g.rep.dim(l) == 1);
        }
        CHECK(is_zero(g.rep.op(0, 0)));
        CHECK(is_zero(g.rep.op(1, 0)));
        CHECK(g.rep.op(2, 0)(0, 0) == s("3", 1));
    }

    TEST_CASE("gns on random positive tables")
    {
        for (std::uint64_t i = 0; i < 10; ++i) {
            Rng rng = Rng::stream(77, i);
            const int order = 1 + static_cast<int>(i % 2);
            const Functional w = random_table_functional(rng, C1, 3, order);
            const GnsResult g = gns_build(w, BidiffGenerator::wick(1), 2, order, {c("z", order), c("zb", order)});
            CHECK(g.checks.pass());
            // Faithful at order 0: nothing is quotiented out.
            CHECK(g.rep.dim(2) == 6);
        }
    }

    TEST_CASE("classical limit")
    {
        const int order = 2;
        const GnsResult g = gns_build(Functional::delta_origin(C1), BidiffGenerator::wick(1), 2, order,
                                      {c("z", order), c("zb", order)});
        const ClassicalLimitResult cl = classical_limit(g.rep);
        CHECK(cl.functor_laws);
        CHECK(cl.inner_products);
        CHECK(cl.classical.dim(2) == 1);
        // H0 at level 2 is spanned by psi_zb and psi_zb^2.
        REQUIRE(cl.h0[2].size() == 2);
        CHECK(cl.h0[2][0] == ScalarVector{Scalar(0), Scalar(1), Scalar(0)});
        CHECK(cl.h0[2][1] == ScalarVector{Scalar(0), Scalar(0), Scalar(1)});

        // A classical form extended l-linearly: H0 = l H, the limit is the original.
        const GnsResult t = gns_build(Functional::gaussian_moment(1), BidiffGenerator::pointwise(P1), 1, 1,
                                      {p("q", 1)});
        const ClassicalLimitResult ct = classical_limit(t.rep);
        CHECK(ct.h0[1].empty());
        CHECK(ct.classical.dim(1) == t.rep.dim(1));

        const RepPresentation zero = RepPresentation::zero(C1, 1, 2, 1, {c("z", 1)});
        const ClassicalLimitResult cz = classical_limit(zero);
        CHECK(cz.classical.dim(0) == 0);
        CHECK(cz.classical.dim(2) == 0);
    }

    TEST_CASE("main theorem residuals")
    {
        const TheoremReport fock = verify_main_theorem(Functional::delta_origin(C1), BidiffGenerator::wick(1), 2, 2,
                                                       {c("z", 2), c("zb", 2)});
        CHECK(fock.pass());
        CHECK(fock.classical_limit_dims == fock.classical_gns_dims);
        for (const auto &ch : fock.checks) {
            CHECK(ch.residuals.empty());
            CHECK(ch.evaluated > 0);
        }
        const TheoremReport sm = verify_main_theorem(Functional::smoothed_delta(P1, Rational(1, 4)),
                                                     BidiffGenerator::weyl_moyal(1), 1, 2, {p("q", 2), p("p", 2)});
        CHECK(sm.pass());
        CHECK(sm.classical_gns_dims[1] == 1);
        Rng rng(1234);
        for (int k = 0; k < 8; ++k) {
            const Functional w = random_table_functional(rng, P1, 2, 2);
            CHECK(verify_main_theorem(w, BidiffGenerator::weyl_moyal(1), 1, 2, {p("q", 2), p("p", 2)}).pass());
        }
    }

    TEST_CASE("no-go certificate")
    {
        for (int n = 1; n <= 4; ++n) {
            CHECK(no_go_certificate(n).contradiction_order == 1);
        }
        CHECK_FALSE(no_go_certificate(3, s("0", 3)).contradiction_order);
        CHECK(no_go_certificate(3, s("2*l^2", 3)).contradiction_order == 2);

        // The Fock quotient realises the commutator on psi_1.
        const GnsConstruction g(Functional::delta_origin(C1), BidiffGenerator::wick(1), 2, 3, 2);
        const SeriesVector comm = commutator_on_cyclic(g, c("z", 2), c("zb", 2));
        CHECK(comm[0] == s("2*l", 2));
        for (std::size_t i = 1; i < comm.size(); ++i) {
            CHECK(comm[i].is_zero());
        }
    }

    TEST_CASE("orthogonal sums")
    {
        const int order = 2;
        const std::vector<SeriesPoly> obs{c("z", order), c("zb", order)};
        const GnsResult f = gns_build(Functional::delta_origin(C1), BidiffGenerator::wick(1), 2, order, obs);
        const RepPresentation two = orthogonal_sum({f.rep, f.rep});
        const ClassicalLimitResult cl = classical_limit(two);
        CHECK(cl.classical.dim(2) == 2);
        CHECK(cl.classical.levels[2].gram == identity_series_matrix(2, 0));
        CHECK(same_matrices(cl.classical,
                            orthogonal_sum({classical_limit(f.rep).classical, classical_limit(f.rep).classical})));
        const RepPresentation z = RepPresentation::zero(C1, 2, f.rep.top, order, obs);
        CHECK(same_matrices(orthogonal_sum({f.rep, z}), f.rep));
        const GnsResult other = gns_build(Functional::delta_origin(C1), BidiffGenerator::wick(1), 1, order, obs);
        CHECK_THROWS_AS(orthogonal_sum({f.rep, other.rep}), ValidationError);
    }
}
