#pragma once

#include "starlab/matrix.hpp"
#include "starlab/poly.hpp"
#include "starlab/star.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace starlab {

// Seeded source for all randomized checks. Streams are split by index
// through splitmix64 so parallel workers draw independent, reproducible
// sequences regardless of scheduling.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}
    static Rng stream(std::uint64_t seed, std::uint64_t index) { return Rng(mix(seed) ^ mix(index + 0x51ed27)); }

    // Uniform integer in [lo, hi].
    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
    bool coin() { return uniform(0, 1) == 1; }

    static std::uint64_t mix(std::uint64_t x);

private:
    std::mt19937_64 engine_;
};

// p/q with |p| <= max_num, 1 <= q <= max_den.
Rational random_rational(Rng &rng, long max_num = 5, long max_den = 3);
Scalar random_scalar(Rng &rng, bool complex = true, long max_num = 5, long max_den = 3);
Poly random_poly(Rng &rng, const Space &space, int max_degree, int max_terms = 4);
SeriesPoly random_series_poly(Rng &rng, const Space &space, int order, int max_degree, int max_terms = 3);
ScalarSeries random_series(Rng &rng, int order, bool real);

// Sample sets for the product property checks. The first samples are the
// coordinate functions themselves; the rest are random series polynomials.
std::vector<SamplePair> sample_pairs(const Space &space, std::size_t count, int max_degree, int order,
                                     std::uint64_t seed);
std::vector<SampleTriple> sample_triples(const Space &space, std::size_t count, int max_degree, int order,
                                         std::uint64_t seed);

// Random Hermitian matrix with the given constant part and a random tail in
// orders 1..order.
SeriesMatrix random_hermitian_tail(Rng &rng, const ScalarMatrix &g0, int order);
// Random Hermitian positive-definite rational matrix (B* B + I).
ScalarMatrix random_positive_definite(Rng &rng, std::size_t n);

} // namespace starlab
