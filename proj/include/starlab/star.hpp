#pragma once

#include "starlab/poly.hpp"
#include "starlab/series.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace starlab {

enum class GeneratorKind { pointwise, wick, weyl_moyal, custom };

// One summand coeff * l * (d/d left) (x) (d/d right) of a bidifferential
// generator. Slots index the exponent vector of the chart.
struct BidiffTerm {
    int left_slot;
    int right_slot;
    Scalar coeff;

    friend bool operator==(const BidiffTerm &, const BidiffTerm &) = default;
};

// Constant-coefficient bidifferential generator P. The induced product is
// f * g = mu(exp(P)(f (x) g)); the pointwise product is the empty generator.
class BidiffGenerator {
public:
    static BidiffGenerator pointwise(const Space &space);
    // sum_k 2l d/dz_k (x) d/dzb_k
    static BidiffGenerator wick(int n);
    // (il/2) sum_k (d/dq^k (x) d/dp_k - d/dp_k (x) d/dq^k)
    static BidiffGenerator weyl_moyal(int n);
    // Validated at construction by assoc_check on deterministic samples up
    // to `validation_order`; throws ValidationError when that fails.
    static BidiffGenerator custom(const Space &space, std::vector<BidiffTerm> terms, int validation_order = 3);
    // "wick", "weyl-moyal", "pointwise-complex", "pointwise-phase-space".
    static BidiffGenerator by_name(const std::string &name, int n);

    GeneratorKind kind() const noexcept { return kind_; }
    const Space &space() const noexcept { return space_; }
    const std::vector<BidiffTerm> &terms() const noexcept { return terms_; }
    std::string name() const;
    // Human-readable expansion formula for `describe`.
    std::string describe() const;

private:
    BidiffGenerator(GeneratorKind k, Space s, std::vector<BidiffTerm> t)
        : kind_(k), space_(s), terms_(std::move(t))
    {
    }

    GeneratorKind kind_;
    Space space_;
    std::vector<BidiffTerm> terms_;
};

// Exact expansion of exp(P) truncated at the common order of f and g. The
// exponential terminates on polynomials because every term lowers degree.
SeriesPoly star_multiply(const SeriesPoly &f, const SeriesPoly &g, const BidiffGenerator &gen);
SeriesPoly star_multiply(const Poly &f, const Poly &g, const BidiffGenerator &gen, int order);

// exp(l * sum_t c_t d/d a_t d/d b_t) acting on polynomial series.
class SmoothingOperator {
public:
    struct Term {
        int first_slot;
        int second_slot;
        Scalar coeff;

        friend bool operator==(const Term &, const Term &) = default;
    };

    // N = exp(l/(2i) sum_k d^2/dq^k dp_k)
    static SmoothingOperator n_operator(int n);
    static SmoothingOperator n_inverse(int n);
    // exp(c l sum_k (d^2/dq^k^2 + d^2/dp_k^2))
    static SmoothingOperator laplace_family(const Rational &c, int n);
    // exp(c l sum_k d^2/dz_k dzb_k)
    static SmoothingOperator wick_laplace(const Rational &c, int n);
    // The one-parameter deformation template for a chart.
    static SmoothingOperator deformation_template(const Space &space, const Rational &c);
    static SmoothingOperator identity(const Space &space);

    const Space &space() const noexcept { return space_; }
    const std::vector<Term> &terms() const noexcept { return terms_; }
    const std::string &name() const noexcept { return name_; }
    bool is_identity() const noexcept { return terms_.empty(); }

    SeriesPoly apply(const SeriesPoly &f) const;
    // The generators commute, so exp(A) exp(B) = exp(A + B).
    SmoothingOperator then(const SmoothingOperator &other) const;

    friend bool operator==(const SmoothingOperator &a, const SmoothingOperator &b)
    {
        return a.space_ == b.space_ && a.terms_ == b.terms_;
    }

private:
    SmoothingOperator(Space s, std::vector<Term> t, std::string name)
        : space_(s), terms_(std::move(t)), name_(std::move(name))
    {
    }
    Poly generator_action(const Poly &p) const;

    Space space_;
    std::vector<Term> terms_;
    std::string name_;
};

// Throws ChartMismatch unless f lives on the operator's chart.
SeriesPoly apply_smoothing(const SeriesPoly &f, const SmoothingOperator &op);

using Product = std::function<SeriesPoly(const SeriesPoly &, const SeriesPoly &)>;

Product product_of(const BidiffGenerator &gen);
// mu + l * mu o P: the generator without exponentiation. Not associative in
// general; used to exercise the failure path of assoc_check.
Product first_order_product(const BidiffGenerator &gen);

struct PropertyResult {
    bool pass = true;
    std::size_t samples = 0;
    std::optional<std::size_t> failing_index;
    std::vector<SeriesPoly> witness;
    // Both sides of the violated identity at the witness.
    std::optional<SeriesPoly> lhs;
    std::optional<SeriesPoly> rhs;
};

using SamplePair = std::pair<SeriesPoly, SeriesPoly>;
using SampleTriple = std::array<SeriesPoly, 3>;

// (f * g)* == g* * f* on every sample; the first violating pair is reported.
PropertyResult hermitian_check(const Product &product, const std::vector<SamplePair> &samples);
PropertyResult hermitian_check(const BidiffGenerator &gen, const std::vector<SamplePair> &samples);
// (f * g) * h == f * (g * h) on every sample.
PropertyResult assoc_check(const Product &product, const std::vector<SampleTriple> &samples);
PropertyResult assoc_check(const BidiffGenerator &gen, const std::vector<SampleTriple> &samples);

} // namespace starlab
