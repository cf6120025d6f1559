#include "starlab/literal.hpp"
#include "starlab/psd.hpp"
#include "starlab/random.hpp"

#include <doctest.h>

using namespace starlab;

namespace {

ScalarSeries s(const char *t, int order) { return parse_series(t, order); }

SeriesMatrix mat(const std::vector<std::vector<const char *>> &rows, int order)
{
    SeriesMatrix m(rows.size(), rows[0].size(), ScalarSeries());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            m(i, j) = s(rows[i][j], order);
        }
    }
    return m;
}

// Minimum of v*Gv over a small grid of Gaussian-rational vectors with
// components in {0, +-1, +-i} at order 0 and {0, +-1} at order 1.
bool grid_negative(const SeriesMatrix &g)
{
    const int order = g(0, 0).order();
    const std::vector<Scalar> c0{Scalar(0), Scalar(1), Scalar(-1), Scalar::i(), -Scalar::i()};
    const std::vector<Scalar> c1{Scalar(0), Scalar(1), Scalar(-1)};
    const std::size_t n = g.rows();
    std::vector<std::size_t> idx(2 * n, 0);
    while (true) {
        SeriesVector v(n, ScalarSeries(order, Scalar()));
        for (std::size_t k = 0; k < n; ++k) {
            v[k][0] = c0[idx[k]];
            if (order >= 1) {
                v[k][1] = c1[idx[n + k]];
            }
        }
        if (sign(quadratic_form(g, v)) < 0) {
            return true;
        }
        std::size_t k = 0;
        while (k < 2 * n) {
            const std::size_t lim = k < n ? c0.size() : c1.size();
            if (++idx[k] < lim) {
                break;
            }
            idx[k++] = 0;
        }
        if (k == 2 * n) {
            return false;
        }
    }
}

} // namespace

TEST_SUITE("psd-kernel")
{
    TEST_CASE("wick delta gram is psd; grid oracle agrees")
    {
        const SeriesMatrix g = mat({{"1", "0", "0"}, {"0", "0", "0"}, {"0", "0", "2*l"}}, 1);
        const PsdVerdict v = psd_decide(g);
        CHECK(v.psd);
        CHECK(v.status() == "psd-up-to-order-1");
        CHECK(check_certificate(g, v));
        CHECK_FALSE(grid_negative(g));
    }

    TEST_CASE("weyl delta gram is indefinite with witness (0, 1, i)")
    {
        const SeriesMatrix g = mat({{"1", "0", "0"}, {"0", "0", "i/2*l"}, {"0", "-i/2*l", "0"}}, 1);
        const PsdVerdict v = psd_decide(g);
        REQUIRE_FALSE(v.psd);
        CHECK(v.status() == "indefinite");
        CHECK(*v.witness == SeriesVector{s("0", 1), s("1", 1), s("i", 1)});
        CHECK(*v.witness_value == s("-l", 1));
        CHECK(quadratic_form(g, *v.witness) == s("-l", 1));
        CHECK(*v.failing_layer == 1);
        CHECK(grid_negative(g));
    }

    TEST_CASE("more hand-made forms")
    {
        // [[l, 1], [1, 0]]: the off-diagonal 1 makes it indefinite at order 0.
        CHECK_FALSE(psd_decide(mat({{"l", "1"}, {"1", "0"}}, 2)).psd);
        // [[l^2, l], [l, 1]] is psd (rank 1: (l, 1)^T (l, 1)).
        const SeriesMatrix r1 = mat({{"l^2", "l"}, {"l", "1"}}, 2);
        const PsdVerdict v = psd_decide(r1);
        CHECK(v.psd);
        CHECK(check_certificate(r1, v));
        // diag(1, -l^2) fails at layer 2.
        const PsdVerdict w = psd_decide(mat({{"1", "0"}, {"0", "-l^2"}}, 2));
        REQUIRE_FALSE(w.psd);
        CHECK(*w.failing_layer == 2);
        CHECK(sign(*w.witness_value) < 0);
        // -l^2 is invisible at N = 1.
        CHECK(psd_decide(mat({{"1", "0"}, {"0", "-l^2"}}, 1)).psd);
        CHECK_THROWS_AS(psd_decide(mat({{"1", "i"}, {"i", "1"}}, 0)), NotHermitian);
    }

    TEST_CASE("witness stays negative when the truncation grows")
    {
        const SeriesMatrix g1 = mat({{"1", "0", "0"}, {"0", "0", "i/2*l"}, {"0", "-i/2*l", "0"}}, 1);
        const SeriesMatrix g3 = mat({{"1", "0", "0"}, {"0", "l^3", "i/2*l"}, {"0", "-i/2*l", "l^2"}}, 3);
        const PsdVerdict v = psd_decide(g1);
        SeriesVector w;
        for (const auto &x : *v.witness) {
            w.push_back(x.padded(3));
        }
        CHECK(sign(quadratic_form(g3, w)) < 0);
    }

    TEST_CASE("positive definite order 0 plus any Hermitian tail is psd")
    {
        Rng rng(99);
        for (int k = 0; k < 40; ++k) {
            const ScalarMatrix g0 = random_positive_definite(rng, 2 + static_cast<std::size_t>(k % 4));
            const SeriesMatrix g = random_hermitian_tail(rng, g0, 1 + k % 4);
            const PsdVerdict v = psd_decide(g);
            CHECK(v.psd);
            CHECK(v.zero_directions.empty());
            CHECK(check_certificate(g, v));
            CHECK(kernel_extract(g).vectors.empty());
        }
    }

    TEST_CASE("kernel extraction")
    {
        const SeriesMatrix w1 = mat({{"1", "0", "0"}, {"0", "0", "0"}, {"0", "0", "2*l"}}, 1);
        const KernelBasis k = kernel_extract(w1);
        REQUIRE(k.vectors.size() == 1);
        CHECK(k.vectors[0] == SeriesVector{s("0", 1), s("1", 1), s("0", 1)});
        CHECK(k.pivots == std::vector<std::size_t>{1});
        CHECK(k.complement == std::vector<std::size_t>{0, 2});
        CHECK(k.dims_by_order == std::vector<std::size_t>{2, 1});
        CHECK(k.stable_from == 1);

        // Classical delta, d = 1: kernel {z, zb}.
        const SeriesMatrix cl = mat({{"1", "0", "0"}, {"0", "0", "0"}, {"0", "0", "0"}}, 0);
        const KernelBasis kc = kernel_extract(cl);
        CHECK(kc.vectors.size() == 2);
        CHECK(kc.pivots == std::vector<std::size_t>{1, 2});

        // Rank one: kernel is (1, -l) up to scaling, normalised at the pivot.
        const SeriesMatrix r1 = mat({{"l^2", "l"}, {"l", "1"}}, 2);
        const KernelBasis kr = kernel_extract(r1);
        REQUIRE(kr.vectors.size() == 1);
        CHECK(is_zero(mat_vec(r1, kr.vectors[0])));

        CHECK_THROWS_AS(kernel_extract(mat({{"1", "0"}, {"0", "-l"}}, 1)), IndefiniteForm);
    }

    TEST_CASE("kernel vectors annihilate G and are in echelon form")
    {
        Rng rng(5);
        for (int k = 0; k < 20; ++k) {
            // B* D B with some zero diagonal entries of D.
            const std::size_t n = 4;
            ScalarMatrix b = random_positive_definite(rng, n);
            SeriesMatrix d = zero_series_matrix(n, n, 2);
            d(0, 0) = s("1", 2);
            d(1, 1) = s("l", 2);
            d(2, 2) = s(k % 2 == 0 ? "l^2" : "0", 2);
            const SeriesMatrix bl = lift(b, 2);
            const SeriesMatrix g = multiply(adjoint(bl), multiply(d, bl));
            const KernelBasis kb = kernel_extract(g);
            CHECK(kb.vectors.size() == (k % 2 == 0 ? 1u : 2u));
            for (std::size_t i = 0; i < kb.vectors.size(); ++i) {
                CHECK(is_zero(mat_vec(g, kb.vectors[i])));
                for (std::size_t j = 0; j < kb.pivots.size(); ++j) {
                    CHECK(kb.vectors[i][kb.pivots[j]] == scalar_series(2, Scalar(i == j ? 1 : 0)));
                }
            }
        }
    }

    TEST_CASE("quadratic forms: batch, serial and oracle")
    {
        Rng rng(12);
        const SeriesMatrix g = random_hermitian_tail(rng, random_positive_definite(rng, 5), 3);
        const auto vs = random_vectors(5, 3, 300, 44);
        CHECK(vs == random_vectors(5, 3, 300, 44));
        const auto a = quadratic_form_batch(g, vs);
        const auto b = quadratic_form_batch_serial(g, vs);
        CHECK(a == b);
        // e_1 picks out G_11.
        SeriesVector e(5, ScalarSeries(3, Scalar()));
        e[0] = scalar_series(3, Scalar(1));
        CHECK(quadratic_form(g, e) == g(0, 0));

        const SoundnessReport r = psd_soundness(g, 2000, 1);
        CHECK(r.vectors == 2000);
        CHECK(r.violations == 0);
        CHECK_FALSE(cauchy_schwarz_violation(g));

        const SeriesMatrix bad = mat({{"1", "0"}, {"0", "-l"}}, 1);
        CHECK(psd_soundness(bad, 200, 1).violations > 0);
        CHECK(cauchy_schwarz_violation(mat({{"l", "1"}, {"1", "l"}}, 1)));
    }
}
