#include "starlab/functional.hpp"

#include "starlab/error.hpp"
#include "starlab/literal.hpp"
#include "starlab/random.hpp"

#include <exception>
#include <map>
#include <mutex>

namespace starlab {

Functional Functional::delta_origin(const Space &space)
{
    return Functional(FunctionalKind::delta_origin, space);
}

Functional Functional::smoothed_delta(const Space &space, const Rational &c)
{
    return delta_origin(space).deformed(c);
}

Functional Functional::gaussian_moment(int n)
{
    return Functional(FunctionalKind::gaussian_moment, Space{Chart::phase_space, n});
}

Functional Functional::table(const Space &space, Table entries)
{
    for (const auto &[m, vals] : entries) {
        if (static_cast<int>(m.size()) != space.num_vars()) {
            throw ValidationError("functional table: monomial has the wrong number of exponents");
        }
        if (vals.empty()) {
            throw ValidationError("functional table: empty value for " + monomial_to_string(space, m));
        }
    }
    Functional f(FunctionalKind::table, space);
    f.table_ = std::move(entries);
    return f;
}

std::string Functional::name() const
{
    std::string base;
    switch (kind_) {
    case FunctionalKind::delta_origin:
        if (smoothing_c_) {
            return "smoothed-delta(" + rational_to_string(*smoothing_c_) + ")";
        }
        base = "delta-origin";
        break;
    case FunctionalKind::gaussian_moment:
        base = "gaussian-moment";
        break;
    case FunctionalKind::table:
        base = "table";
        break;
    }
    if (smoothing_c_) {
        return base + " o laplace(" + rational_to_string(*smoothing_c_) + ")";
    }
    if (smoothing_) {
        return base + " o " + smoothing_->name();
    }
    return base;
}

Functional Functional::precomposed(const SmoothingOperator &op) const
{
    if (!(op.space() == space_)) {
        throw ChartMismatch("smoothing operator on " + to_string(op.space()) + " cannot act on a functional on " +
                            to_string(space_));
    }
    Functional out = *this;
    out.smoothing_ = smoothing_ ? smoothing_->then(op) : op;
    out.smoothing_c_.reset();
    return out;
}

Functional Functional::deformed(const Rational &c) const
{
    const bool tracked = !smoothing_ || smoothing_c_.has_value();
    Functional out = precomposed(SmoothingOperator::deformation_template(space_, c));
    if (tracked) {
        out.smoothing_c_ = smoothing_c_.value_or(Rational(0)) + c;
        if (sgn(*out.smoothing_c_) == 0) {
            out.smoothing_.reset();
            out.smoothing_c_.reset();
        }
    }
    return out;
}

namespace {

Rational double_factorial_moment(int k)
{
    // E[x^k] for a standard normal: (k-1)!! for even k, 0 for odd k.
    if (k % 2 != 0) {
        return Rational(0);
    }
    Rational r(1);
    for (int j = k - 1; j > 1; j -= 2) {
        r *= j;
    }
    return r;
}

} // namespace

ScalarSeries Functional::evaluate_raw(const SeriesPoly &f) const
{
    const int order = f.order();
    switch (kind_) {
    case FunctionalKind::delta_origin:
        return eval_origin(f);
    case FunctionalKind::gaussian_moment: {
        ScalarSeries out(order, Scalar());
        const int n = space_.n;
        for (int r = 0; r <= order; ++r) {
            for (const auto &[m, c] : f[r].terms()) {
                bool on_zero_section = true;
                Rational moment(1);
                for (int k = 0; k < n; ++k) {
                    on_zero_section = on_zero_section && m[static_cast<std::size_t>(n + k)] == 0;
                    moment *= double_factorial_moment(m[static_cast<std::size_t>(k)]);
                }
                if (on_zero_section && sgn(moment) != 0) {
                    out[r] += c * Scalar(moment);
                }
            }
        }
        return out;
    }
    case FunctionalKind::table: {
        ScalarSeries out(order, Scalar());
        for (int r = 0; r <= order; ++r) {
            for (const auto &[m, c] : f[r].terms()) {
                const auto it = table_.find(m);
                if (it == table_.end()) {
                    throw ValidationError("functional table has no entry for monomial '" +
                                          monomial_to_string(space_, m) + "'");
                }
                const auto &vals = it->second;
                for (int s = 0; r + s <= order && s < static_cast<int>(vals.size()); ++s) {
                    out[r + s] += c * vals[static_cast<std::size_t>(s)];
                }
            }
        }
        return out;
    }
    }
    throw Error("unreachable functional kind");
}

ScalarSeries Functional::evaluate(const SeriesPoly &f) const
{
    if (!(space_of(f) == space_)) {
        throw ChartMismatch("functional on " + to_string(space_) + " applied to a polynomial on " +
                            to_string(space_of(f)));
    }
    if (kind_ == FunctionalKind::gaussian_moment && space_.chart != Chart::phase_space) {
        throw ChartMismatch("gaussian-moment needs the phase-space chart");
    }
    return evaluate_raw(smoothing_ ? smoothing_->apply(f) : f);
}

bool Functional::is_real_on(int d, int order) const
{
    for (const auto &m : monomial_basis(space_, d)) {
        const Poly p = Poly::monomial(space_, m);
        const ScalarSeries a = evaluate(series_poly(order, p.star()));
        const ScalarSeries b = conj(evaluate(series_poly(order, p)));
        if (!(a == b)) {
            return false;
        }
    }
    return true;
}

namespace {

GramForm gram_shell(const Functional &w, const BidiffGenerator &gen, int d, int order)
{
    if (!(w.space() == gen.space())) {
        throw ChartMismatch("functional on " + to_string(w.space()) + " but product on " + to_string(gen.space()));
    }
    GramForm g;
    g.space = w.space();
    g.basis = monomial_basis(w.space(), d);
    g.functional = w.name();
    g.generator = gen.name();
    g.degree = d;
    g.order = order;
    g.entries = zero_series_matrix(g.basis.size(), g.basis.size(), order);
    return g;
}

ScalarSeries gram_entry(const Functional &w, const BidiffGenerator &gen, const GramForm &g, std::size_t i,
                        std::size_t j)
{
    const Poly ei = Poly::monomial(g.space, g.basis[i]).star();
    const Poly ej = Poly::monomial(g.space, g.basis[j]);
    return w.evaluate(star_multiply(ei, ej, gen, g.order));
}

void require_hermitian(const GramForm &g)
{
    const auto &e = g.entries;
    for (std::size_t i = 0; i < e.rows(); ++i) {
        for (std::size_t j = i; j < e.cols(); ++j) {
            if (!(e(j, i) == conj(e(i, j)))) {
                throw NotHermitian("Gram form of " + g.functional + " is not Hermitian at (" +
                                   monomial_to_string(g.space, g.basis[i]) + ", " +
                                   monomial_to_string(g.space, g.basis[j]) + ")");
            }
        }
    }
}

} // namespace

GramForm gram_matrix(const Functional &w, const BidiffGenerator &gen, int d, int order)
{
    GramForm g = gram_shell(w, gen, d, order);
    const long n = static_cast<long>(g.basis.size());
    std::exception_ptr err;
    long err_index = n * n;
    std::mutex mu;
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < n * n; ++k) {
        const auto i = static_cast<std::size_t>(k / n);
        const auto j = static_cast<std::size_t>(k % n);
        try {
            g.entries(i, j) = gram_entry(w, gen, g, i, j);
        } catch (...) {
            // Report the error the serial loop would have hit first.
            std::lock_guard lock(mu);
            if (k < err_index) {
                err_index = k;
                err = std::current_exception();
            }
        }
    }
    if (err) {
        std::rethrow_exception(err);
    }
    require_hermitian(g);
    return g;
}

GramForm gram_matrix_serial(const Functional &w, const BidiffGenerator &gen, int d, int order)
{
    GramForm g = gram_shell(w, gen, d, order);
    for (std::size_t i = 0; i < g.basis.size(); ++i) {
        for (std::size_t j = 0; j < g.basis.size(); ++j) {
            g.entries(i, j) = gram_entry(w, gen, g, i, j);
        }
    }
    require_hermitian(g);
    return g;
}

namespace {

struct Frac {
    long num;
    long den;
    Rational value() const
    {
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
};

} // namespace

DeformResult deform_functional(const Functional &w0, const BidiffGenerator &gen, int d, int order,
                               const Rational &cap, long max_den)
{
    if (sgn(cap) < 0) {
        throw ValidationError("deform: cap must be non-negative");
    }
    if (cap.get_den() > max_den) {
        throw ValidationError("deform: cap " + rational_to_string(cap) + " is not on the search grid");
    }
    const GramForm classical = gram_matrix(w0, BidiffGenerator::pointwise(w0.space()), d, 0);
    const PsdVerdict cv = psd_decide(classical.entries);
    if (!cv.psd) {
        throw IndefiniteForm("deform: " + w0.name() + " is not positive for the pointwise product", cv);
    }

    DeformResult res;
    res.cap = cap;
    std::map<Rational, std::pair<GramForm, PsdVerdict>> seen;
    auto eval = [&](const Rational &c) -> const std::pair<GramForm, PsdVerdict> & {
        auto it = seen.find(c);
        if (it == seen.end()) {
            GramForm g = gram_matrix(w0.deformed(c), gen, d, order);
            PsdVerdict v = psd_decide(g.entries);
            ++res.evaluations;
            it = seen.emplace(c, std::pair{std::move(g), std::move(v)}).first;
        }
        return it->second;
    };
    auto finish = [&](const Rational &c, bool ok) {
        const auto &[g, v] = eval(c);
        res.success = ok;
        res.c = c;
        res.gram = g;
        res.verdict = v;
        if (ok) {
            res.functional = w0.deformed(c);
        }
        return res;
    };

    if (eval(Rational(0)).second.psd) {
        return finish(Rational(0), true);
    }
    if (!eval(cap).second.psd) {
        return finish(cap, false);
    }
    // Predicate, assumed monotone in c; anything past the cap counts as
    // passing since the cap itself passed.
    auto pass = [&](const Frac &f) {
        const Rational v = f.value();
        return v >= cap || eval(v).second.psd;
    };

    // Stern-Brocot descent between lo (fails) and hi (passes, 1/0 = +inf).
    // Runs of steps in one direction are galloped. On exit lo and hi are
    // neighbours in the Farey sequence of order max_den, so hi is the
    // smallest passing grid point.
    Frac lo{0, 1};
    Frac hi{1, 0};
    while (lo.den + hi.den <= max_den) {
        const Frac mid{lo.num + hi.num, lo.den + hi.den};
        if (pass(mid)) {
            // hi_k = (k lo + hi); find the largest k that still passes.
            auto at = [&](long k) { return Frac{k * lo.num + hi.num, k * lo.den + hi.den}; };
            auto ok = [&](long k) { return at(k).den <= max_den && pass(at(k)); };
            long good = 1;
            long step = 2;
            while (ok(step)) {
                good = step;
                step *= 2;
            }
            long bad = step;
            while (bad - good > 1) {
                const long m = good + (bad - good) / 2;
                (ok(m) ? good : bad) = m;
            }
            hi = at(good);
        } else {
            auto at = [&](long k) { return Frac{lo.num + k * hi.num, lo.den + k * hi.den}; };
            auto fails = [&](long k) { return at(k).den <= max_den && !pass(at(k)); };
            long good = 1;
            long step = 2;
            while (fails(step)) {
                good = step;
                step *= 2;
            }
            long bad = step;
            while (bad - good > 1) {
                const long m = good + (bad - good) / 2;
                (fails(m) ? good : bad) = m;
            }
            lo = at(good);
        }
    }
    return finish(std::min(hi.value(), cap), true);
}

namespace {

Scalar monomial_at(const Monomial &m, const std::vector<Scalar> &point)
{
    Scalar v(1);
    for (std::size_t k = 0; k < m.size(); ++k) {
        for (int e = 0; e < m[k]; ++e) {
            v *= point[k];
        }
    }
    return v;
}

} // namespace

Functional random_table_functional(Rng &rng, const Space &space, int d, int order)
{
    if (space.chart == Chart::unknowns) {
        throw ChartMismatch("random table functionals need the complex or phase-space chart");
    }
    const auto monos = monomial_basis(space, 2 * d);
    const std::size_t npts = monomial_basis(space, d).size() + 2;
    for (int attempt = 0; attempt < 100; ++attempt) {
        Functional::Table entries;
        for (const auto &m : monos) {
            entries[m] = std::vector<Scalar>(static_cast<std::size_t>(order) + 1, Scalar());
        }
        for (std::size_t k = 0; k < npts; ++k) {
            std::vector<Scalar> pt(static_cast<std::size_t>(space.num_vars()));
            for (int j = 0; j < space.n; ++j) {
                if (space.chart == Chart::complex) {
                    const Scalar z = random_scalar(rng, true, 2, 2);
                    pt[static_cast<std::size_t>(j)] = z;
                    pt[static_cast<std::size_t>(space.n + j)] = z.conj();
                } else {
                    pt[static_cast<std::size_t>(j)] = random_scalar(rng, false, 2, 2);
                    pt[static_cast<std::size_t>(space.n + j)] = random_scalar(rng, false, 2, 2);
                }
            }
            const Scalar weight = Scalar(Rational(rng.uniform(1, 3), rng.uniform(1, 2)));
            for (const auto &m : monos) {
                entries[m][0] += weight * monomial_at(m, pt);
            }
        }
        for (const auto &m : monos) {
            const Monomial ms = Poly::monomial(space, m).star().terms().begin()->first;
            if (MonomialLess{}(ms, m)) {
                continue;
            }
            for (int r = 1; r <= order; ++r) {
                const Scalar v = random_scalar(rng, !(ms == m));
                entries[m][static_cast<std::size_t>(r)] = v;
                entries[ms][static_cast<std::size_t>(r)] = v.conj();
            }
        }
        Functional f = Functional::table(space, std::move(entries));
        const GramForm g0 = gram_matrix(f, BidiffGenerator::pointwise(space), d, 0);
        const PsdVerdict v = psd_decide(g0.entries);
        if (v.psd && v.zero_directions.empty()) {
            return f;
        }
    }
    throw Error("random_table_functional: could not sample a positive definite order-0 part");
}

} // namespace starlab
