#pragma once

#include "starlab/matrix.hpp"
#include "starlab/poly.hpp"
#include "starlab/psd.hpp"
#include "starlab/star.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace starlab {

class Rng;

enum class FunctionalKind { delta_origin, gaussian_moment, table };

// A linear functional on polynomial series, optionally precomposed with a
// smoothing operator (omega o exp(l L)). "smoothed-delta" is delta_origin
// with a smoothing attached.
class Functional {
public:
    // Values are polynomials in l, stored exactly and truncated on use.
    using Table = std::map<Monomial, std::vector<Scalar>, MonomialLess>;

    static Functional delta_origin(const Space &space);
    // delta_0 o exp(c l Laplacian) in the chart's deformation template.
    static Functional smoothed_delta(const Space &space, const Rational &c);
    // E[f(q, p = 0)] for independent standard normal q^k; phase space only.
    static Functional gaussian_moment(int n);
    static Functional table(const Space &space, Table entries);

    FunctionalKind kind() const noexcept { return kind_; }
    const Space &space() const noexcept { return space_; }
    const std::optional<SmoothingOperator> &smoothing() const noexcept { return smoothing_; }
    const Table &entries() const noexcept { return table_; }
    std::string name() const;

    // omega o op. The generators commute, so the order does not matter.
    Functional precomposed(const SmoothingOperator &op) const;
    // omega o exp(c l L) with the chart's deformation template L.
    Functional deformed(const Rational &c) const;

    // Throws ChartMismatch or, for tables, ValidationError naming the first
    // missing monomial.
    ScalarSeries evaluate(const SeriesPoly &f) const;

    // omega(m*) == conj(omega(m)) on every monomial of degree <= d.
    bool is_real_on(int d, int order) const;

private:
    Functional(FunctionalKind k, Space s) : kind_(k), space_(s) {}

    ScalarSeries evaluate_raw(const SeriesPoly &f) const;

    FunctionalKind kind_;
    Space space_;
    std::optional<SmoothingOperator> smoothing_;
    std::optional<Rational> smoothing_c_;
    Table table_;
};

struct GramForm {
    Space space;
    std::vector<Monomial> basis;
    SeriesMatrix entries;
    std::string functional;
    std::string generator;
    int degree = 0;
    int order = 0;
};

// G_ij = omega(e_i* * e_j) on the monomial basis of degree <= d. Entries are
// computed in parallel; the result is checked Hermitian (NotHermitian).
GramForm gram_matrix(const Functional &w, const BidiffGenerator &gen, int d, int order);
// Single-threaded reference with identical output.
GramForm gram_matrix_serial(const Functional &w, const BidiffGenerator &gen, int d, int order);

struct DeformResult {
    bool success = false;
    // Minimal c found, or the largest c tried on failure.
    Rational c;
    Rational cap;
    std::size_t evaluations = 0;
    std::optional<Functional> functional;
    GramForm gram;
    PsdVerdict verdict;
};

// Searches omega_c = omega0 o exp(c l L) for the smallest c in [0, cap] with
// denominator <= max_den making the Gram form psd up to order N. Throws
// ValidationError when omega0 is not positive for the pointwise product.
DeformResult deform_functional(const Functional &w0, const BidiffGenerator &gen, int d, int order,
                               const Rational &cap = Rational(4), long max_den = 65536);

// Real table functional on monomials of degree <= 2d. Its order-0 part is a
// positive combination of point evaluations chosen so that the classical
// Gram form at degree d is positive definite; higher orders are random.
Functional random_table_functional(Rng &rng, const Space &space, int d, int order);

} // namespace starlab
