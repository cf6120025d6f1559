#include "starlab/gns.hpp"

#include "starlab/error.hpp"
#include "starlab/literal.hpp"

#include <algorithm>
#include <map>

namespace starlab {

namespace {

int degree_of(const SeriesPoly &f)
{
    return std::max(0, total_degree(f));
}

std::string entry_residual(std::size_t i, std::size_t j, const std::string &value)
{
    return "(" + std::to_string(i) + "," + std::to_string(j) + "): " + value;
}

} // namespace

SeriesMatrix RepPresentation::inclusion(int from, int to) const
{
    if (from > to || to > top) {
        throw ValidationError("inclusion from level " + std::to_string(from) + " to " + std::to_string(to) +
                              " is outside the filtration 0.." + std::to_string(top));
    }
    SeriesMatrix m = identity_series_matrix(dim(from), order);
    for (int l = from; l < to; ++l) {
        m = multiply(inclusions[static_cast<std::size_t>(l)], m);
    }
    return m;
}

const SeriesMatrix &RepPresentation::op(std::size_t index, int from) const
{
    const auto &ops = operators.at(index);
    if (from < 0 || from >= static_cast<int>(ops.size())) {
        throw ValidationError("operator for observable " + std::to_string(index) + " is not available from level " +
                              std::to_string(from) + " (filtration top " + std::to_string(top) + ")");
    }
    return ops[static_cast<std::size_t>(from)];
}

RepPresentation RepPresentation::zero(const Space &space, int degree, int top, int order,
                                      std::vector<SeriesPoly> observables)
{
    RepPresentation p;
    p.space = space;
    p.functional = "zero";
    p.generator = "none";
    p.degree = degree;
    p.top = top;
    p.order = order;
    p.levels.assign(static_cast<std::size_t>(top) + 1, RepLevel{{}, SeriesMatrix()});
    p.inclusions.assign(static_cast<std::size_t>(top), SeriesMatrix());
    for (const auto &f : observables) {
        const int k = degree_of(f);
        p.observable_degrees.push_back(k);
        p.operators.emplace_back(static_cast<std::size_t>(std::max(0, top - k + 1)), SeriesMatrix());
    }
    p.observables = std::move(observables);
    return p;
}

GnsConstruction::GnsConstruction(const Functional &w, const BidiffGenerator &gen, int degree, int top, int order)
    : w_(w), gen_(gen), degree_(degree), top_(top), order_(order)
{
    if (degree < 0 || top < degree) {
        throw ValidationError("GNS: need 0 <= degree <= top");
    }
    gram_ = gram_matrix(w, gen, top, order);
    verdict_ = psd_decide(gram_.entries);
    if (!verdict_.psd) {
        throw IndefiniteForm("GNS construction for " + w.name() + " with the " + gen.name() + " product", verdict_);
    }
    for (int l = 0; l <= top; ++l) {
        Level lv;
        lv.basis = monomial_basis(w.space(), l);
        std::vector<std::size_t> idx(lv.basis.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            idx[i] = i;
        }
        lv.kernel = kernel_extract(select(gram_.entries, idx, idx));
        levels_.push_back(std::move(lv));
    }
}

SeriesVector GnsConstruction::coordinates(const SeriesPoly &f, int l) const
{
    if (f.order() != order_) {
        throw OrderMismatch("GNS: element has order " + std::to_string(f.order()) + ", construction has order " +
                            std::to_string(order_));
    }
    const Level &lv = level(l);
    std::map<Monomial, std::size_t, MonomialLess> index;
    for (std::size_t i = 0; i < lv.basis.size(); ++i) {
        index.emplace(lv.basis[i], i);
    }
    SeriesVector x(lv.basis.size(), ScalarSeries(order_, Scalar()));
    for (int r = 0; r <= order_; ++r) {
        for (const auto &[m, c] : f[r].terms()) {
            const auto it = index.find(m);
            if (it == index.end()) {
                throw ValidationError("observable degree overflow: " + monomial_to_string(w_.space(), m) +
                                      " does not fit filtration level " + std::to_string(l) + " (top " +
                                      std::to_string(top_) + ")");
            }
            x[it->second][r] += c;
        }
    }
    return x;
}

SeriesVector GnsConstruction::reduce(const SeriesVector &x, int l) const
{
    const KernelBasis &k = level(l).kernel;
    SeriesVector y = x;
    for (std::size_t i = 0; i < k.vectors.size(); ++i) {
        const ScalarSeries c = y[k.pivots[i]];
        if (c.is_zero()) {
            continue;
        }
        for (std::size_t r = 0; r < y.size(); ++r) {
            if (!k.vectors[i][r].is_zero()) {
                y[r] -= c * k.vectors[i][r];
            }
        }
    }
    SeriesVector out;
    out.reserve(k.complement.size());
    for (std::size_t c : k.complement) {
        out.push_back(y[c]);
    }
    return out;
}

SeriesMatrix GnsConstruction::operator_matrix(const SeriesPoly &f, int from) const
{
    const int to = from + degree_of(f);
    if (to > top_) {
        throw ValidationError("observable degree overflow: level " + std::to_string(from) + " + deg " +
                              std::to_string(degree_of(f)) + " exceeds the computed filtration (top " +
                              std::to_string(top_) + ")");
    }
    const Level &src = level(from);
    const std::size_t rows = level(to).kernel.complement.size();
    SeriesMatrix m = zero_series_matrix(rows, src.kernel.complement.size(), order_);
    for (std::size_t c = 0; c < src.kernel.complement.size(); ++c) {
        const Poly e = Poly::monomial(w_.space(), src.basis[src.kernel.complement[c]]);
        const SeriesVector col = reduce(star_multiply(f, series_poly(order_, e), gen_), to);
        for (std::size_t r = 0; r < rows; ++r) {
            m(r, c) = col[r];
        }
    }
    return m;
}

std::vector<SeriesPoly> GnsConstruction::ideal(int l) const
{
    const Level &lv = level(l);
    std::vector<SeriesPoly> out;
    for (const auto &v : lv.kernel.vectors) {
        SeriesPoly f = zero_series_poly(order_, w_.space());
        for (std::size_t i = 0; i < v.size(); ++i) {
            for (int r = 0; r <= order_; ++r) {
                if (!v[i][r].is_zero()) {
                    f[r] += Poly::monomial(w_.space(), lv.basis[i], v[i][r]);
                }
            }
        }
        out.push_back(std::move(f));
    }
    return out;
}

bool GnsConstruction::kernels_nested() const
{
    const SeriesMatrix &g = gram_.entries;
    for (int l = 0; l < top_; ++l) {
        for (const auto &v : level(l).kernel.vectors) {
            SeriesVector padded = v;
            padded.resize(g.cols(), ScalarSeries(order_, Scalar()));
            if (!is_zero(mat_vec(g, padded))) {
                return false;
            }
        }
    }
    return true;
}

RepPresentation GnsConstruction::presentation(const std::vector<SeriesPoly> &observables) const
{
    RepPresentation p;
    p.space = w_.space();
    p.functional = w_.name();
    p.generator = gen_.name();
    p.degree = degree_;
    p.top = top_;
    p.order = order_;
    for (int l = 0; l <= top_; ++l) {
        const Level &lv = level(l);
        RepLevel rl;
        for (std::size_t c : lv.kernel.complement) {
            rl.labels.push_back(monomial_to_string(w_.space(), lv.basis[c]));
        }
        rl.gram = select(gram_.entries, lv.kernel.complement, lv.kernel.complement);
        p.levels.push_back(std::move(rl));
    }
    for (int l = 0; l < top_; ++l) {
        const Level &lv = level(l);
        SeriesMatrix inc = zero_series_matrix(p.dim(l + 1), p.dim(l), order_);
        for (std::size_t c = 0; c < lv.kernel.complement.size(); ++c) {
            const Poly e = Poly::monomial(w_.space(), lv.basis[lv.kernel.complement[c]]);
            const SeriesVector col = reduce(series_poly(order_, e), l + 1);
            for (std::size_t r = 0; r < col.size(); ++r) {
                inc(r, c) = col[r];
            }
        }
        p.inclusions.push_back(std::move(inc));
    }
    p.cyclic = reduce(series_poly(order_, Poly::constant(w_.space(), Scalar(1))), 0);
    for (const auto &f : observables) {
        const int k = degree_of(f);
        if (degree_ + k > top_) {
            throw ValidationError("observable degree overflow: " + to_string(f) + " needs level " +
                                  std::to_string(degree_ + k) + " but the filtration stops at " +
                                  std::to_string(top_));
        }
        std::vector<SeriesMatrix> ops;
        for (int l = 0; l + k <= top_; ++l) {
            ops.push_back(operator_matrix(f, l));
        }
        p.observables.push_back(f);
        p.observable_degrees.push_back(k);
        p.operators.push_back(std::move(ops));
    }
    return p;
}

GelfandIdeal gelfand_ideal_basis(const Functional &w, const BidiffGenerator &gen, int d, int order)
{
    const GnsConstruction g(w, gen, d, d, order);
    GelfandIdeal out;
    out.basis = g.ideal(d);
    std::vector<SeriesPoly> mults{series_poly(order, Poly::constant(w.space(), Scalar(1)))};
    for (int k = 0; k < w.space().num_vars(); ++k) {
        mults.push_back(series_poly(order, Poly::variable(w.space(), var_at(w.space(), k))));
    }
    for (const auto &j : out.basis) {
        for (const auto &a : mults) {
            const SeriesPoly aj = star_multiply(a, j, gen);
            const ScalarSeries v = w.evaluate(star_multiply(star(aj), aj, gen));
            ++out.left_ideal.samples;
            if (!v.is_zero() && out.left_ideal.pass) {
                out.left_ideal.pass = false;
                out.left_ideal.element = j;
                out.left_ideal.multiplier = a;
                out.left_ideal.value = v;
            }
        }
    }
    return out;
}

GnsChecks validate_gns(const GnsConstruction &g, const RepPresentation &rep)
{
    GnsChecks ck;
    ck.kernels_nested = g.kernels_nested();
    if (!ck.kernels_nested) {
        ck.failures.push_back("a lower-level kernel vector is not in the top-level kernel");
    }
    const Space &space = rep.space;
    const int order = rep.order;

    // <psi_1, pi(f) psi_1> = omega(f) for all monomials of degree <= d.
    for (const auto &m : monomial_basis(space, rep.degree)) {
        const SeriesPoly f = series_poly(order, Poly::monomial(space, m));
        const int k = total_degree(m);
        const SeriesVector v = mat_vec(g.operator_matrix(f, 0), rep.cyclic);
        const SeriesVector c = mat_vec(rep.inclusion(0, k), rep.cyclic);
        const ScalarSeries lhs = inner(c, mat_vec(rep.levels[static_cast<std::size_t>(k)].gram, v));
        const ScalarSeries rhs = g.functional().evaluate(f);
        if (!(lhs == rhs)) {
            ck.state_identity = false;
            ck.failures.push_back("state identity fails at " + monomial_to_string(space, m) + ": " +
                                  to_string(lhs) + " vs " + to_string(rhs));
        }
    }

    for (std::size_t i = 0; i < rep.observables.size(); ++i) {
        const SeriesPoly &f = rep.observables[i];
        const int k = rep.observable_degrees[i];
        // <pi(f) phi, psi> = <phi, pi(f*) psi> with phi, psi at level top - k.
        const int l = rep.top - k;
        const SeriesMatrix a = rep.op(i, l);
        const SeriesMatrix b = g.operator_matrix(star(f), l);
        const SeriesMatrix &gt = rep.levels[static_cast<std::size_t>(rep.top)].gram;
        const SeriesMatrix inc = rep.inclusion(l, rep.top);
        const int kb = degree_of(star(f));
        const SeriesMatrix incb = rep.inclusion(l + kb, rep.top);
        const SeriesMatrix lhs = multiply(multiply(adjoint(a), gt), inc);
        const SeriesMatrix rhs = multiply(multiply(adjoint(inc), gt), multiply(incb, b));
        if (!(lhs == rhs)) {
            ck.star_compatible = false;
            ck.failures.push_back("*-compatibility fails for " + to_string(f));
        }
    }

    for (std::size_t i = 0; i < rep.observables.size(); ++i) {
        for (std::size_t j = 0; j < rep.observables.size(); ++j) {
            const int kf = rep.observable_degrees[i];
            const int kg = rep.observable_degrees[j];
            const int l = rep.top - kf - kg;
            if (l < 0) {
                continue;
            }
            const SeriesPoly fg = star_multiply(rep.observables[i], rep.observables[j], g.generator());
            const SeriesMatrix lhs =
                multiply(rep.inclusion(l + degree_of(fg), rep.top), g.operator_matrix(fg, l));
            const SeriesMatrix rhs = multiply(rep.op(i, l + kg), rep.op(j, l));
            if (!(lhs == rhs)) {
                ck.representation = false;
                ck.failures.push_back("pi(f * g) != pi(f) pi(g) for f = " + to_string(rep.observables[i]) +
                                      ", g = " + to_string(rep.observables[j]));
            }
        }
    }
    return ck;
}

GnsResult gns_build(const Functional &w, const BidiffGenerator &gen, int d, int order,
                    const std::vector<SeriesPoly> &observables)
{
    int top = d + 1;
    for (const auto &f : observables) {
        top = std::max(top, d + degree_of(f));
    }
    const GnsConstruction g(w, gen, d, top, order);
    GnsResult res{g.presentation(observables), {}};
    res.checks = validate_gns(g, res.rep);
    return res;
}

namespace {

ScalarMatrix embedding(std::size_t dim, const std::vector<std::size_t> &reps)
{
    ScalarMatrix s = zero_scalar_matrix(dim, reps.size());
    for (std::size_t c = 0; c < reps.size(); ++c) {
        s(reps[c], c) = Scalar(1);
    }
    return s;
}

ScalarMatrix projection(std::size_t dim, const ScalarKernel &k)
{
    ScalarMatrix p = zero_scalar_matrix(k.complement.size(), dim);
    for (std::size_t c = 0; c < k.complement.size(); ++c) {
        p(c, k.complement[c]) = Scalar(1);
    }
    for (std::size_t i = 0; i < k.vectors.size(); ++i) {
        for (std::size_t c = 0; c < k.complement.size(); ++c) {
            p(c, k.pivots[i]) = -k.vectors[i][k.complement[c]];
        }
    }
    return p;
}

} // namespace

ClassicalLimitResult classical_limit(const RepPresentation &p)
{
    ClassicalLimitResult res;
    std::vector<ScalarMatrix> emb;
    for (int l = 0; l <= p.top; ++l) {
        const ScalarMatrix g0 = constant_part(p.levels[static_cast<std::size_t>(l)].gram);
        const ScalarKernel k = scalar_kernel(g0);
        res.h0.push_back(k.vectors);
        res.representatives.push_back(k.complement);
        res.projections.push_back(projection(p.dim(l), k));
        emb.push_back(embedding(p.dim(l), k.complement));
    }
    auto proj = [&](int l) -> const ScalarMatrix & { return res.projections[static_cast<std::size_t>(l)]; };
    auto classical = [&](const SeriesMatrix &m, int from, int to) {
        return multiply(multiply(proj(to), constant_part(m)), emb[static_cast<std::size_t>(from)]);
    };
    auto fail = [&](bool &flag, std::string msg) {
        flag = false;
        res.failures.push_back(std::move(msg));
    };

    RepPresentation &c = res.classical;
    c.space = p.space;
    c.functional = p.functional;
    c.generator = "classical limit of " + p.generator;
    c.degree = p.degree;
    c.top = p.top;
    c.order = 0;
    for (int l = 0; l <= p.top; ++l) {
        const auto &lv = p.levels[static_cast<std::size_t>(l)];
        RepLevel rl;
        for (std::size_t r : res.representatives[static_cast<std::size_t>(l)]) {
            rl.labels.push_back(lv.labels[r]);
        }
        const ScalarMatrix &e = emb[static_cast<std::size_t>(l)];
        const ScalarMatrix g0 = constant_part(lv.gram);
        const ScalarMatrix gc = multiply(multiply(adjoint(e), g0), e);
        rl.gram = lift(gc, 0);
        c.levels.push_back(std::move(rl));

        // <c phi, c psi> = <phi, psi> at l = 0, on all basis pairs.
        if (!(multiply(multiply(adjoint(proj(l)), gc), proj(l)) == g0)) {
            fail(res.inner_products, "inner products not preserved at level " + std::to_string(l));
        }
        // Identity law: P S = id.
        if (!(multiply(proj(l), e) == identity_scalar_matrix(e.cols()))) {
            fail(res.functor_laws, "projection is not a left inverse of the embedding at level " +
                                       std::to_string(l));
        }
    }

    auto preserves_h0 = [&](const SeriesMatrix &m, int from, int to) {
        const ScalarMatrix m0 = multiply(proj(to), constant_part(m));
        for (const auto &h : res.h0[static_cast<std::size_t>(from)]) {
            if (!is_zero(mat_vec(m0, h))) {
                return false;
            }
        }
        return true;
    };

    for (int l = 0; l < p.top; ++l) {
        const SeriesMatrix &inc = p.inclusions[static_cast<std::size_t>(l)];
        if (!preserves_h0(inc, l, l + 1)) {
            fail(res.functor_laws, "inclusion " + std::to_string(l) + " -> " + std::to_string(l + 1) +
                                       " does not map H0 into H0");
        }
        c.inclusions.push_back(lift(classical(inc, l, l + 1), 0));
        if (l + 2 <= p.top) {
            const ScalarMatrix lhs =
                classical(multiply(p.inclusions[static_cast<std::size_t>(l + 1)], inc), l, l + 2);
            const ScalarMatrix rhs = multiply(classical(p.inclusions[static_cast<std::size_t>(l + 1)], l + 1, l + 2),
                                              classical(inc, l, l + 1));
            if (!(lhs == rhs)) {
                fail(res.functor_laws, "composition law fails for inclusions at level " + std::to_string(l));
            }
        }
    }
    c.cyclic = lift(mat_vec(proj(0), constant_part(p.cyclic)), 0);

    for (std::size_t i = 0; i < p.observables.size(); ++i) {
        const int k = p.observable_degrees[i];
        c.observables.push_back(p.observables[i].truncated(0));
        c.observable_degrees.push_back(k);
        std::vector<SeriesMatrix> ops;
        for (int l = 0; l + k <= p.top; ++l) {
            const SeriesMatrix &a = p.op(i, l);
            if (!preserves_h0(a, l, l + k)) {
                fail(res.functor_laws, "operator for " + to_string(p.observables[i]) + " at level " +
                                           std::to_string(l) + " does not map H0 into H0");
            }
            ops.push_back(lift(classical(a, l, l + k), 0));
            if (l + 1 + k <= p.top) {
                const ScalarMatrix lhs =
                    classical(multiply(p.op(i, l + 1), p.inclusions[static_cast<std::size_t>(l)]), l, l + 1 + k);
                const ScalarMatrix rhs =
                    multiply(classical(p.op(i, l + 1), l + 1, l + 1 + k),
                             classical(p.inclusions[static_cast<std::size_t>(l)], l, l + 1));
                if (!(lhs == rhs)) {
                    fail(res.functor_laws, "composition law fails for " + to_string(p.observables[i]) +
                                               " after the inclusion at level " + std::to_string(l));
                }
            }
        }
        c.operators.push_back(std::move(ops));
    }
    return res;
}

bool TheoremReport::pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const ResidualCheck &c) { return c.pass; });
}

namespace {

void record(ResidualCheck &chk, const ScalarMatrix &residual)
{
    ++chk.evaluated;
    for (std::size_t i = 0; i < residual.rows(); ++i) {
        for (std::size_t j = 0; j < residual.cols(); ++j) {
            if (!residual(i, j).is_zero()) {
                chk.pass = false;
                chk.residuals.push_back(entry_residual(i, j, residual(i, j).to_string()));
            }
        }
    }
}

ScalarMatrix column(const ScalarVector &v)
{
    ScalarMatrix m(v.size(), 1, Scalar());
    for (std::size_t i = 0; i < v.size(); ++i) {
        m(i, 0) = v[i];
    }
    return m;
}

} // namespace

TheoremReport verify_main_theorem(const Functional &w, const BidiffGenerator &gen, int d, int order,
                                  const std::vector<SeriesPoly> &observables)
{
    int top = d + 1;
    for (const auto &f : observables) {
        top = std::max(top, d + degree_of(f));
    }
    const GnsConstruction deformed(w, gen, d, top, order);
    const RepPresentation rep = deformed.presentation(observables);
    const ClassicalLimitResult cl = classical_limit(rep);

    const GnsConstruction undeformed(w, BidiffGenerator::pointwise(w.space()), d, top, 0);
    std::vector<SeriesPoly> obs0;
    for (const auto &f : observables) {
        obs0.push_back(f.truncated(0));
    }
    const RepPresentation rep0 = undeformed.presentation(obs0);

    TheoremReport out;
    ResidualCheck wd{"well-definedness", true, {}, 0};
    ResidualCheck un{"unitarity", true, {}, 0};
    ResidualCheck in{"intertwining", true, {}, 0};

    // psi_A -> psi_{A_0}, A given by monomial coordinates at level l.
    auto to_classical = [&](const SeriesVector &coords, int l) {
        SeriesVector a0;
        for (const auto &s : coords) {
            a0.push_back(scalar_series(0, s[0]));
        }
        return constant_part(undeformed.reduce(a0, l));
    };

    for (int l = 0; l <= top; ++l) {
        const auto &lv = deformed.level(l);
        const auto &reps = cl.representatives[static_cast<std::size_t>(l)];
        const std::size_t n = lv.basis.size();
        ScalarMatrix u = zero_scalar_matrix(rep0.dim(l), reps.size());
        for (std::size_t c = 0; c < reps.size(); ++c) {
            SeriesVector e(n, ScalarSeries(0, Scalar()));
            e[lv.kernel.complement[reps[c]]] = scalar_series(0, Scalar(1));
            const ScalarVector col = to_classical(e, l);
            for (std::size_t r = 0; r < col.size(); ++r) {
                u(r, c) = col[r];
            }
        }
        out.intertwiner.push_back(u);
        out.classical_limit_dims.push_back(reps.size());
        out.classical_gns_dims.push_back(rep0.dim(l));

        // H0 representatives and the order-0 parts of ideal elements must
        // map to zero.
        for (const auto &h : cl.h0[static_cast<std::size_t>(l)]) {
            SeriesVector a(n, ScalarSeries(0, Scalar()));
            for (std::size_t b = 0; b < h.size(); ++b) {
                a[lv.kernel.complement[b]] = scalar_series(0, h[b]);
            }
            record(wd, column(to_classical(a, l)));
        }
        for (const auto &k : lv.kernel.vectors) {
            record(wd, column(to_classical(k, l)));
        }

        const ScalarMatrix gq = constant_part(rep0.levels[static_cast<std::size_t>(l)].gram);
        const ScalarMatrix gc = constant_part(cl.classical.levels[static_cast<std::size_t>(l)].gram);
        if (u.rows() != u.cols()) {
            un.pass = false;
            un.residuals.push_back("level " + std::to_string(l) + ": U is " + std::to_string(u.rows()) + "x" +
                                   std::to_string(u.cols()));
        } else {
            record(un, subtract(multiply(multiply(adjoint(u), gq), u), gc));
            if (scalar_rank(u) != u.cols()) {
                un.pass = false;
                un.residuals.push_back("level " + std::to_string(l) + ": U is singular");
            }
        }
    }

    for (int l = 0; l < top; ++l) {
        const ScalarMatrix &ul = out.intertwiner[static_cast<std::size_t>(l)];
        const ScalarMatrix &un1 = out.intertwiner[static_cast<std::size_t>(l + 1)];
        const ScalarMatrix lhs = multiply(un1, constant_part(cl.classical.inclusions[static_cast<std::size_t>(l)]));
        const ScalarMatrix rhs = multiply(constant_part(rep0.inclusions[static_cast<std::size_t>(l)]), ul);
        if (lhs.rows() == rhs.rows() && lhs.cols() == rhs.cols()) {
            record(in, subtract(lhs, rhs));
        } else {
            in.pass = false;
            in.residuals.push_back("inclusion shapes differ at level " + std::to_string(l));
        }
    }
    for (std::size_t i = 0; i < observables.size(); ++i) {
        const int k = rep.observable_degrees[i];
        const int k0 = rep0.observable_degrees[i];
        for (int l = 0; l + k <= top; ++l) {
            const ScalarMatrix lhs =
                multiply(out.intertwiner[static_cast<std::size_t>(l + k)], constant_part(cl.classical.op(i, l)));
            const ScalarMatrix rhs = multiply(multiply(constant_part(rep0.inclusion(l + k0, l + k)),
                                                       constant_part(rep0.op(i, l))),
                                              out.intertwiner[static_cast<std::size_t>(l)]);
            if (lhs.rows() == rhs.rows() && lhs.cols() == rhs.cols()) {
                record(in, subtract(lhs, rhs));
            } else {
                in.pass = false;
                in.residuals.push_back("operator shapes differ for " + to_string(observables[i]));
            }
        }
    }
    // The cyclic vectors correspond as well.
    record(in, subtract(column(mat_vec(out.intertwiner[0], constant_part(cl.classical.cyclic))),
                        column(constant_part(rep0.cyclic))));

    out.checks = {std::move(wd), std::move(un), std::move(in)};
    return out;
}

NoGoReport no_go_certificate(int order, const ScalarSeries &target)
{
    if (order < 1) {
        throw ValidationError("no-go: the order must be at least 1");
    }
    if (target.order() != order) {
        throw OrderMismatch("no-go: target order differs from the requested order");
    }
    // a = sum_{r>=1} l^r a_r, b = sum_{r>=1} l^r b_r with unknown scalars.
    const Space s{Chart::unknowns, order};
    SeriesPoly a = zero_series_poly(order, s);
    SeriesPoly b = zero_series_poly(order, s);
    for (int r = 1; r <= order; ++r) {
        a[r] = Poly::variable(s, {Sort::a, r});
        b[r] = Poly::variable(s, {Sort::b, r});
    }
    const SeriesPoly lhs = a * b - b * a;
    SeriesPoly t = zero_series_poly(order, s);
    for (int r = 0; r <= order; ++r) {
        t[r] = Poly::constant(s, target[r]);
    }
    const SeriesPoly constraint = lhs - t;

    NoGoReport rep;
    rep.order = order;
    rep.lhs = to_string(lhs);
    rep.target = to_string(target);
    for (int r = 0; r <= order; ++r) {
        if (constraint[r].total_degree() == 0) {
            rep.contradiction_order = r;
            break;
        }
    }
    return rep;
}

NoGoReport no_go_certificate(int order)
{
    return no_go_certificate(order, lambda_power(order, 1, Scalar(2)));
}

SeriesVector commutator_on_cyclic(const GnsConstruction &g, const SeriesPoly &f, const SeriesPoly &h)
{
    const RepPresentation rep = g.presentation({});
    const int kf = degree_of(f);
    const int kh = degree_of(h);
    const SeriesVector fh = mat_vec(g.operator_matrix(f, kh), mat_vec(g.operator_matrix(h, 0), rep.cyclic));
    const SeriesVector hf = mat_vec(g.operator_matrix(h, kf), mat_vec(g.operator_matrix(f, 0), rep.cyclic));
    SeriesVector out = fh;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] -= hf[i];
    }
    return out;
}

RepPresentation orthogonal_sum(const std::vector<RepPresentation> &ps)
{
    if (ps.empty()) {
        throw ValidationError("orthogonal_sum: empty list");
    }
    const RepPresentation &f = ps.front();
    for (const auto &p : ps) {
        if (!(p.space == f.space) || p.order != f.order || p.degree != f.degree || p.top != f.top ||
            p.observables != f.observables) {
            throw ValidationError("orthogonal_sum: summands differ in chart, order, filtration or observables");
        }
    }
    RepPresentation out;
    out.space = f.space;
    out.order = f.order;
    out.degree = f.degree;
    out.top = f.top;
    out.observables = f.observables;
    out.observable_degrees = f.observable_degrees;
    for (std::size_t k = 0; k < ps.size(); ++k) {
        out.functional += (k ? " (+) " : "") + ps[k].functional;
        out.generator += (k ? " (+) " : "") + ps[k].generator;
    }
    auto blocks = [&](auto get) {
        std::vector<SeriesMatrix> bs;
        for (const auto &p : ps) {
            bs.push_back(get(p));
        }
        return block_diagonal(bs, f.order);
    };
    for (int l = 0; l <= f.top; ++l) {
        RepLevel rl;
        for (std::size_t k = 0; k < ps.size(); ++k) {
            for (const auto &s : ps[k].levels[static_cast<std::size_t>(l)].labels) {
                rl.labels.push_back("[" + std::to_string(k) + "]" + s);
            }
        }
        rl.gram = blocks([&](const RepPresentation &p) { return p.levels[static_cast<std::size_t>(l)].gram; });
        out.levels.push_back(std::move(rl));
    }
    for (int l = 0; l < f.top; ++l) {
        out.inclusions.push_back(
            blocks([&](const RepPresentation &p) { return p.inclusions[static_cast<std::size_t>(l)]; }));
    }
    for (const auto &p : ps) {
        out.cyclic.insert(out.cyclic.end(), p.cyclic.begin(), p.cyclic.end());
    }
    for (std::size_t i = 0; i < f.observables.size(); ++i) {
        std::vector<SeriesMatrix> ops;
        for (std::size_t l = 0; l < f.operators[i].size(); ++l) {
            ops.push_back(blocks([&](const RepPresentation &p) { return p.operators[i][l]; }));
        }
        out.operators.push_back(std::move(ops));
    }
    return out;
}

bool same_matrices(const RepPresentation &a, const RepPresentation &b)
{
    if (a.top != b.top || a.order != b.order || a.levels.size() != b.levels.size()) {
        return false;
    }
    for (std::size_t l = 0; l < a.levels.size(); ++l) {
        if (!(a.levels[l].gram == b.levels[l].gram) || a.levels[l].labels.size() != b.levels[l].labels.size()) {
            return false;
        }
    }
    return a.inclusions == b.inclusions && a.cyclic == b.cyclic && a.operators == b.operators;
}

} // namespace starlab
