#include "starlab/random.hpp"

namespace starlab {

std::uint64_t Rng::mix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rational random_rational(Rng &rng, long max_num, long max_den)
{
    Rational q(rng.uniform(-max_num, max_num), rng.uniform(1, max_den));
    q.canonicalize();
    return q;
}

Scalar random_scalar(Rng &rng, bool complex, long max_num, long max_den)
{
    if (!complex || rng.uniform(0, 2) == 0) {
        return Scalar(random_rational(rng, max_num, max_den));
    }
    return Scalar(random_rational(rng, max_num, max_den), random_rational(rng, max_num, max_den));
}

Poly random_poly(Rng &rng, const Space &space, int max_degree, int max_terms)
{
    const auto basis = monomial_basis(space, max_degree);
    Poly p(space);
    const long terms = rng.uniform(1, max_terms);
    for (long t = 0; t < terms; ++t) {
        const auto &m = basis[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(basis.size()) - 1))];
        p.add_term(m, random_scalar(rng));
    }
    return p;
}

SeriesPoly random_series_poly(Rng &rng, const Space &space, int order, int max_degree, int max_terms)
{
    SeriesPoly f = zero_series_poly(order, space);
    for (int r = 0; r <= order; ++r) {
        // Keep higher orders sparse so products stay small.
        if (r == 0 || rng.uniform(0, r) == 0) {
            f[r] = random_poly(rng, space, max_degree, max_terms);
        }
    }
    return f;
}

ScalarSeries random_series(Rng &rng, int order, bool real)
{
    ScalarSeries s(order, Scalar());
    for (int r = 0; r <= order; ++r) {
        s[r] = random_scalar(rng, !real);
    }
    return s;
}

namespace {

std::vector<SeriesPoly> coordinates(const Space &space, int order)
{
    std::vector<SeriesPoly> out;
    for (int k = 0; k < space.num_vars(); ++k) {
        out.push_back(series_poly(order, Poly::variable(space, var_at(space, k))));
    }
    return out;
}

} // namespace

std::vector<SamplePair> sample_pairs(const Space &space, std::size_t count, int max_degree, int order,
                                     std::uint64_t seed)
{
    std::vector<SamplePair> out;
    const auto coords = coordinates(space, order);
    for (const auto &a : coords) {
        for (const auto &b : coords) {
            if (out.size() < count) {
                out.emplace_back(a, b);
            }
        }
    }
    for (std::uint64_t i = 0; out.size() < count; ++i) {
        Rng rng = Rng::stream(seed, i);
        SeriesPoly f = random_series_poly(rng, space, order, max_degree);
        SeriesPoly g = random_series_poly(rng, space, order, max_degree);
        out.emplace_back(std::move(f), std::move(g));
    }
    return out;
}

std::vector<SampleTriple> sample_triples(const Space &space, std::size_t count, int max_degree, int order,
                                         std::uint64_t seed)
{
    std::vector<SampleTriple> out;
    const auto coords = coordinates(space, order);
    for (const auto &a : coords) {
        for (const auto &b : coords) {
            for (const auto &c : coords) {
                if (out.size() < count) {
                    out.push_back({a, b, c});
                }
            }
        }
    }
    for (std::uint64_t i = 0; out.size() < count; ++i) {
        Rng rng = Rng::stream(seed, i);
        SampleTriple t{random_series_poly(rng, space, order, max_degree),
                       random_series_poly(rng, space, order, max_degree),
                       random_series_poly(rng, space, order, max_degree)};
        out.push_back(std::move(t));
    }
    return out;
}

SeriesMatrix random_hermitian_tail(Rng &rng, const ScalarMatrix &g0, int order)
{
    const std::size_t n = g0.rows();
    SeriesMatrix g = lift(g0, order);
    for (std::size_t i = 0; i < n; ++i) {
        for (int r = 1; r <= order; ++r) {
            g(i, i)[r] = random_scalar(rng, false);
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            for (int r = 1; r <= order; ++r) {
                g(i, j)[r] = random_scalar(rng);
                g(j, i)[r] = g(i, j)[r].conj();
            }
        }
    }
    return g;
}

ScalarMatrix random_positive_definite(Rng &rng, std::size_t n)
{
    ScalarMatrix b(n, n, Scalar());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            b(i, j) = random_scalar(rng, true, 3, 2);
        }
    }
    ScalarMatrix g = multiply(adjoint(b), b);
    for (std::size_t i = 0; i < n; ++i) {
        g(i, i) += Scalar(1);
    }
    return g;
}

} // namespace starlab
