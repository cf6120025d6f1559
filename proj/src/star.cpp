#include "starlab/star.hpp"

#include "starlab/error.hpp"
#include "starlab/literal.hpp"

#include <vector>

namespace starlab {

BidiffGenerator BidiffGenerator::pointwise(const Space &space)
{
    return BidiffGenerator(GeneratorKind::pointwise, space, {});
}

BidiffGenerator BidiffGenerator::wick(int n)
{
    const Space s{Chart::complex, n};
    std::vector<BidiffTerm> t;
    for (int k = 1; k <= n; ++k) {
        t.push_back({slot_of(s, {Sort::z, k}), slot_of(s, {Sort::zb, k}), Scalar(2)});
    }
    return BidiffGenerator(GeneratorKind::wick, s, std::move(t));
}

BidiffGenerator BidiffGenerator::weyl_moyal(int n)
{
    const Space s{Chart::phase_space, n};
    const Scalar half_i(0, Rational(1, 2));
    std::vector<BidiffTerm> t;
    for (int k = 1; k <= n; ++k) {
        const int q = slot_of(s, {Sort::q, k});
        const int p = slot_of(s, {Sort::p, k});
        t.push_back({q, p, half_i});
        t.push_back({p, q, -half_i});
    }
    return BidiffGenerator(GeneratorKind::weyl_moyal, s, std::move(t));
}

namespace {

std::vector<SampleTriple> validation_triples(const Space &space, int order)
{
    std::vector<Poly> polys;
    for (const auto &m : monomial_basis(space, 2)) {
        if (total_degree(m) > 0) {
            polys.push_back(Poly::monomial(space, m));
        }
    }
    std::vector<SampleTriple> out;
    for (const auto &a : polys) {
        for (const auto &b : polys) {
            for (const auto &c : polys) {
                out.push_back({series_poly(order, a), series_poly(order, b), series_poly(order, c)});
            }
        }
    }
    return out;
}

} // namespace

BidiffGenerator BidiffGenerator::custom(const Space &space, std::vector<BidiffTerm> terms, int validation_order)
{
    for (const auto &t : terms) {
        if (t.left_slot < 0 || t.left_slot >= space.num_vars() || t.right_slot < 0 ||
            t.right_slot >= space.num_vars()) {
            throw ValidationError("custom generator term refers to a slot outside " + to_string(space));
        }
    }
    BidiffGenerator g(GeneratorKind::custom, space, std::move(terms));
    const PropertyResult r = assoc_check(g, validation_triples(space, validation_order));
    if (!r.pass) {
        throw ValidationError("custom generator fails associativity at sample " + to_string(r.witness[0]) + ", " +
                              to_string(r.witness[1]) + ", " + to_string(r.witness[2]));
    }
    return g;
}

BidiffGenerator BidiffGenerator::by_name(const std::string &name, int n)
{
    if (name == "wick") {
        return wick(n);
    }
    if (name == "weyl-moyal") {
        return weyl_moyal(n);
    }
    if (name == "pointwise-complex") {
        return pointwise(Space{Chart::complex, n});
    }
    if (name == "pointwise-phase-space") {
        return pointwise(Space{Chart::phase_space, n});
    }
    throw ValidationError("unknown product '" + name + "' (expected wick, weyl-moyal, pointwise-complex, "
                          "pointwise-phase-space)");
}

std::string BidiffGenerator::name() const
{
    switch (kind_) {
    case GeneratorKind::pointwise:
        return "pointwise";
    case GeneratorKind::wick:
        return "wick";
    case GeneratorKind::weyl_moyal:
        return "weyl-moyal";
    case GeneratorKind::custom:
        return "custom";
    }
    return "?";
}

std::string BidiffGenerator::describe() const
{
    std::string s = name() + " product on " + to_string(space_) + "\n";
    switch (kind_) {
    case GeneratorKind::pointwise:
        s += "  f * g = f g (no deformation)\n";
        break;
    case GeneratorKind::wick:
        s += "  f * g = sum_r (2l)^r / r! * d^r f/dz^r * d^r g/dzb^r   (summed over k for n > 1)\n";
        break;
    case GeneratorKind::weyl_moyal:
        s += "  f * g = mu o exp((il/2) sum_k (d/dq^k (x) d/dp_k - d/dp_k (x) d/dq^k)) (f (x) g)\n";
        break;
    case GeneratorKind::custom:
        s += "  f * g = mu o exp(P) (f (x) g)\n";
        break;
    }
    s += "  generator P = l * (";
    if (terms_.empty()) {
        s += "0";
    }
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const auto &t = terms_[i];
        if (i > 0) {
            s += " + ";
        }
        s += "(" + t.coeff.to_string() + ") d/d" + var_name(space_, t.left_slot) + " (x) d/d" +
             var_name(space_, t.right_slot);
    }
    s += ")\n";
    return s;
}

namespace {

void require_space(const Space &want, const Space &got, const char *what)
{
    if (!(want == got)) {
        throw ChartMismatch(std::string(what) + ": expected " + to_string(want) + ", got " + to_string(got));
    }
}

// Adds sum over exponent tuples (k_t) with sum k_t <= budget of
//   prod_t c_t^{k_t}/k_t! * (d^{k_t}_{left_t} ... f) (d^{k_t}_{right_t} ... g)
// into out[base + sum k_t].
void expand(const std::vector<BidiffTerm> &terms, std::size_t t, const Poly &left, const Poly &right,
            const Scalar &coef, int used, int budget, int base, SeriesPoly &out)
{
    if (t == terms.size()) {
        out[base + used] += (left * right) * coef;
        return;
    }
    const BidiffTerm &term = terms[t];
    Poly l = left;
    Poly r = right;
    Scalar c = coef;
    for (int k = 0; used + k <= budget; ++k) {
        if (k > 0) {
            l = l.diff(term.left_slot);
            r = r.diff(term.right_slot);
            if (l.is_zero() || r.is_zero()) {
                break;
            }
            c = c * term.coeff / Scalar(k);
        }
        expand(terms, t + 1, l, r, c, used + k, budget, base, out);
    }
}

} // namespace

SeriesPoly star_multiply(const SeriesPoly &f, const SeriesPoly &g, const BidiffGenerator &gen)
{
    f.check_order(g);
    require_space(gen.space(), space_of(f), "star_multiply (left factor)");
    require_space(gen.space(), space_of(g), "star_multiply (right factor)");
    const int n = f.order();
    SeriesPoly out = zero_series_poly(n, gen.space());
    for (int r1 = 0; r1 <= n; ++r1) {
        if (f[r1].is_zero()) {
            continue;
        }
        for (int r2 = 0; r1 + r2 <= n; ++r2) {
            if (g[r2].is_zero()) {
                continue;
            }
            expand(gen.terms(), 0, f[r1], g[r2], Scalar(1), 0, n - r1 - r2, r1 + r2, out);
        }
    }
    return out;
}

SeriesPoly star_multiply(const Poly &f, const Poly &g, const BidiffGenerator &gen, int order)
{
    return star_multiply(series_poly(order, f), series_poly(order, g), gen);
}

SmoothingOperator SmoothingOperator::n_operator(int n)
{
    const Space s{Chart::phase_space, n};
    // l/(2i) = -(i/2) l
    const Scalar c(0, Rational(-1, 2));
    std::vector<Term> t;
    for (int k = 1; k <= n; ++k) {
        t.push_back({slot_of(s, {Sort::q, k}), slot_of(s, {Sort::p, k}), c});
    }
    return SmoothingOperator(s, std::move(t), "N");
}

SmoothingOperator SmoothingOperator::n_inverse(int n)
{
    SmoothingOperator op = n_operator(n);
    for (auto &t : op.terms_) {
        t.coeff = -t.coeff;
    }
    op.name_ = "N^-1";
    return op;
}

SmoothingOperator SmoothingOperator::laplace_family(const Rational &c, int n)
{
    const Space s{Chart::phase_space, n};
    std::vector<Term> t;
    if (sgn(c) != 0) {
        for (int k = 1; k <= n; ++k) {
            const int q = slot_of(s, {Sort::q, k});
            const int p = slot_of(s, {Sort::p, k});
            t.push_back({q, q, Scalar(c)});
            t.push_back({p, p, Scalar(c)});
        }
    }
    return SmoothingOperator(s, std::move(t), "laplace(" + rational_to_string(c) + ")");
}

SmoothingOperator SmoothingOperator::wick_laplace(const Rational &c, int n)
{
    const Space s{Chart::complex, n};
    std::vector<Term> t;
    if (sgn(c) != 0) {
        for (int k = 1; k <= n; ++k) {
            t.push_back({slot_of(s, {Sort::z, k}), slot_of(s, {Sort::zb, k}), Scalar(c)});
        }
    }
    return SmoothingOperator(s, std::move(t), "wick-laplace(" + rational_to_string(c) + ")");
}

SmoothingOperator SmoothingOperator::deformation_template(const Space &space, const Rational &c)
{
    switch (space.chart) {
    case Chart::phase_space:
        return laplace_family(c, space.n);
    case Chart::complex:
        return wick_laplace(c, space.n);
    case Chart::unknowns:
        break;
    }
    throw ChartMismatch("no deformation template on chart " + chart_name(space.chart));
}

SmoothingOperator SmoothingOperator::identity(const Space &space)
{
    return SmoothingOperator(space, {}, "id");
}

Poly SmoothingOperator::generator_action(const Poly &p) const
{
    Poly out(space_);
    for (const auto &t : terms_) {
        out += p.diff(t.first_slot).diff(t.second_slot) * t.coeff;
    }
    return out;
}

SeriesPoly SmoothingOperator::apply(const SeriesPoly &f) const
{
    require_space(space_, space_of(f), "smoothing operator");
    const int n = f.order();
    SeriesPoly out = zero_series_poly(n, space_);
    for (int r = 0; r <= n; ++r) {
        Poly term = f[r];
        for (int k = 0; r + k <= n && !term.is_zero(); ++k) {
            out[r + k] += term;
            term = generator_action(term) * Scalar::ratio(1, k + 1);
        }
    }
    return out;
}

SmoothingOperator SmoothingOperator::then(const SmoothingOperator &other) const
{
    require_space(space_, other.space_, "smoothing composition");
    if (is_identity()) {
        return other;
    }
    if (other.is_identity()) {
        return *this;
    }
    std::vector<Term> t = terms_;
    t.insert(t.end(), other.terms_.begin(), other.terms_.end());
    return SmoothingOperator(space_, std::move(t), name_ + "*" + other.name_);
}

SeriesPoly apply_smoothing(const SeriesPoly &f, const SmoothingOperator &op)
{
    return op.apply(f);
}

Product product_of(const BidiffGenerator &gen)
{
    return [gen](const SeriesPoly &f, const SeriesPoly &g) { return star_multiply(f, g, gen); };
}

Product first_order_product(const BidiffGenerator &gen)
{
    return [gen](const SeriesPoly &f, const SeriesPoly &g) {
        f.check_order(g);
        SeriesPoly out = f * g;
        SeriesPoly bracket = zero_series_poly(f.order(), gen.space());
        for (const auto &t : gen.terms()) {
            bracket += diff(f, t.left_slot) * diff(g, t.right_slot).scaled(t.coeff);
        }
        return out + bracket.shifted_up(1);
    };
}

namespace {

template <class Sample, class Eval>
PropertyResult run_property(const std::vector<Sample> &samples, Eval &&eval)
{
    const auto count = static_cast<long>(samples.size());
    std::vector<char> ok(samples.size(), 1);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        const auto [l, r] = eval(samples[static_cast<std::size_t>(i)]);
        ok[static_cast<std::size_t>(i)] = (l == r) ? 1 : 0;
    }
    PropertyResult res;
    res.samples = samples.size();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!ok[i]) {
            res.pass = false;
            res.failing_index = i;
            res.witness.assign(samples[i].begin(), samples[i].end());
            auto [l, r] = eval(samples[i]);
            res.lhs = std::move(l);
            res.rhs = std::move(r);
            break;
        }
    }
    return res;
}


} // namespace

PropertyResult hermitian_check(const Product &product, const std::vector<SamplePair> &samples)
{
    std::vector<std::array<SeriesPoly, 2>> as_arrays;
    as_arrays.reserve(samples.size());
    for (const auto &[f, g] : samples) {
        as_arrays.push_back({f, g});
    }
    return run_property(as_arrays, [&](const std::array<SeriesPoly, 2> &s) {
        SeriesPoly lhs = star(product(s[0], s[1]));
        SeriesPoly rhs = product(star(s[1]), star(s[0]));
        return std::pair{std::move(lhs), std::move(rhs)};
    });
}

PropertyResult hermitian_check(const BidiffGenerator &gen, const std::vector<SamplePair> &samples)
{
    return hermitian_check(product_of(gen), samples);
}

PropertyResult assoc_check(const Product &product, const std::vector<SampleTriple> &samples)
{
    return run_property(samples, [&](const SampleTriple &s) {
        SeriesPoly lhs = product(product(s[0], s[1]), s[2]);
        SeriesPoly rhs = product(s[0], product(s[1], s[2]));
        return std::pair{std::move(lhs), std::move(rhs)};
    });
}

PropertyResult assoc_check(const BidiffGenerator &gen, const std::vector<SampleTriple> &samples)
{
    return assoc_check(product_of(gen), samples);
}

} // namespace starlab
