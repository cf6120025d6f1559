#include "starlab/psd.hpp"

#include "starlab/error.hpp"
#include "starlab/literal.hpp"
#include "starlab/random.hpp"

#include <algorithm>
#include <array>

namespace starlab {

IndefiniteForm::IndefiniteForm(const std::string &what, PsdVerdict v)
    : ValidationError(what + ": form is indefinite, witness value " + to_string(*v.witness_value)),
      verdict_(std::move(v))
{
}

std::string PsdVerdict::status() const
{
    return psd ? "psd-up-to-order-" + std::to_string(order) : "indefinite";
}

namespace {

int order_of(const SeriesMatrix &g)
{
    return g.empty() ? 0 : g(0, 0).order();
}

// a / b where val(a) >= v = val(b). The quotient is only determined up to
// l^(N-v); higher coefficients are set to zero, which is harmless because
// every use multiplies it by something of valuation >= v.
ScalarSeries shifted_quotient(const ScalarSeries &a, const ScalarSeries &b, int v)
{
    const int n = a.order();
    const ScalarSeries q = a.shifted_down(v) * inverse(b.shifted_down(v));
    return q.padded(n);
}

bool lex_negative(const ScalarSeries &s)
{
    return sign(s) < 0;
}

// First simple vector e_j or e_j + t e_k (t in 1, -1, i, -i) on which the
// form is lex-negative. Such witnesses are far easier to read than the
// back-substituted ones.
std::optional<SeriesVector> simple_witness(const SeriesMatrix &g)
{
    const std::size_t n = g.rows();
    const int order = order_of(g);
    for (std::size_t j = 0; j < n; ++j) {
        if (lex_negative(g(j, j))) {
            SeriesVector w(n, ScalarSeries(order, Scalar()));
            w[j] = scalar_series(order, Scalar(1));
            return w;
        }
    }
    const std::array<Scalar, 4> ts{Scalar(1), Scalar(-1), Scalar::i(), -Scalar::i()};
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            for (const auto &t : ts) {
                const ScalarSeries val =
                    g(j, j) + g(k, k) + g(j, k).scaled(t) + g(k, j).scaled(t.conj());
                if (lex_negative(val)) {
                    SeriesVector w(n, ScalarSeries(order, Scalar()));
                    w[j] = scalar_series(order, Scalar(1));
                    w[k] = scalar_series(order, t);
                    return w;
                }
            }
        }
    }
    return std::nullopt;
}

void set_witness(PsdVerdict &out, const SeriesMatrix &g, SeriesVector fallback)
{
    SeriesVector w = simple_witness(g).value_or(std::move(fallback));
    ScalarSeries val = quadratic_form(g, w);
    if (!lex_negative(val)) {
        throw Error("internal: indefiniteness witness does not evaluate negative");
    }
    out.psd = false;
    out.failing_layer = val.valuation();
    out.witness = std::move(w);
    out.witness_value = std::move(val);
}

} // namespace

PsdVerdict psd_decide(const SeriesMatrix &g)
{
    if (g.rows() != g.cols()) {
        throw ValidationError("psd_decide: matrix is not square");
    }
    if (!is_hermitian(g)) {
        throw NotHermitian("psd_decide: matrix is not Hermitian");
    }
    const std::size_t n = g.rows();
    const int order = order_of(g);

    PsdVerdict out;
    out.order = order;
    out.t = identity_series_matrix(n, order);
    out.l = identity_series_matrix(n, order);
    out.diagonal.assign(n, ScalarSeries(order, Scalar()));

    SeriesMatrix m = g;
    std::vector<std::size_t> active(n);
    for (std::size_t i = 0; i < n; ++i) {
        active[i] = i;
    }

    while (!active.empty()) {
        // Lowest valuation in the active block.
        std::optional<int> vmin;
        for (std::size_t a : active) {
            for (std::size_t b : active) {
                const auto v = m(a, b).valuation();
                if (v && (!vmin || *v < *vmin)) {
                    vmin = v;
                }
            }
        }
        if (!vmin) {
            break;
        }
        const int v = *vmin;

        std::optional<std::size_t> pivot;
        for (std::size_t a : active) {
            if (m(a, a).valuation() == v) {
                pivot = a;
                break;
            }
        }

        if (!pivot) {
            // Only off-diagonal entries reach the minimal valuation: the
            // 2x2 principal block [[o(l^v), c l^v], [conj(c) l^v, o(l^v)]]
            // is indefinite.
            for (std::size_t a : active) {
                for (std::size_t b : active) {
                    if (a < b && m(a, b).valuation() == v) {
                        const Scalar c = m(a, b)[v];
                        Scalar t = sgn(c.re()) > 0 ? Scalar(-1) : Scalar(1);
                        if (sgn(c.re()) == 0) {
                            t = sgn(c.im()) > 0 ? Scalar::i() : -Scalar::i();
                        }
                        SeriesVector w(n, ScalarSeries(order, Scalar()));
                        for (std::size_t r = 0; r < n; ++r) {
                            w[r] = out.t(r, a) + out.t(r, b).scaled(t);
                        }
                        set_witness(out, g, std::move(w));
                        return out;
                    }
                }
            }
        }

        const std::size_t p = *pivot;
        const ScalarSeries d = m(p, p);
        if (sgn(d[v].re()) < 0) {
            set_witness(out, g, out.t.col(p));
            return out;
        }

        active.erase(std::find(active.begin(), active.end(), p));
        out.pivots.push_back(p);
        out.diagonal[p] = d;

        std::vector<std::pair<std::size_t, ScalarSeries>> mult;
        for (std::size_t j : active) {
            if (!m(p, j).is_zero()) {
                mult.emplace_back(j, shifted_quotient(m(p, j), d, v));
            }
        }
        for (std::size_t j : active) {
            const ScalarSeries &mjp = m(j, p);
            if (mjp.is_zero()) {
                continue;
            }
            for (const auto &[k, mk] : mult) {
                m(j, k) -= mjp * mk;
            }
        }
        for (const auto &[j, mj] : mult) {
            m(p, j) = d.zero_like();
            m(j, p) = d.zero_like();
            for (std::size_t r = 0; r < n; ++r) {
                if (!out.t(r, p).is_zero()) {
                    out.t(r, j) -= out.t(r, p) * mj;
                }
            }
            for (std::size_t c = 0; c < n; ++c) {
                if (!out.l(j, c).is_zero()) {
                    out.l(p, c) += mj * out.l(j, c);
                }
            }
        }
    }
    out.zero_directions = active;
    std::sort(out.zero_directions.begin(), out.zero_directions.end());
    return out;
}

bool check_certificate(const SeriesMatrix &g, const PsdVerdict &v)
{
    if (!v.psd) {
        return false;
    }
    const std::size_t n = g.rows();
    const int order = order_of(g);
    SeriesMatrix d = zero_series_matrix(n, n, order);
    for (std::size_t i = 0; i < n; ++i) {
        d(i, i) = v.diagonal[i];
    }
    const SeriesMatrix tgt = multiply(multiply(adjoint(v.t), g), v.t);
    const SeriesMatrix ldl = multiply(multiply(adjoint(v.l), d), v.l);
    return tgt == d && ldl == g;
}

KernelBasis kernel_extract(const SeriesMatrix &g)
{
    return kernel_extract(g, psd_decide(g));
}

KernelBasis kernel_extract(const SeriesMatrix &g, const PsdVerdict &verdict)
{
    if (!verdict.psd) {
        throw IndefiniteForm("kernel_extract", verdict);
    }
    const std::size_t n = g.rows();
    const int order = order_of(g);

    std::vector<SeriesVector> vs;
    for (std::size_t z : verdict.zero_directions) {
        vs.push_back(verdict.t.col(z));
    }

    // Gauss-Jordan with unit pivots. The columns of T are independent mod l,
    // so a unit entry always exists.
    KernelBasis kb;
    std::vector<bool> used(vs.size(), false);
    std::vector<std::pair<std::size_t, std::size_t>> pivot_of; // (column, vector)
    for (std::size_t c = 0; c < n && pivot_of.size() < vs.size(); ++c) {
        std::optional<std::size_t> pick;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (!used[i] && !vs[i][c][0].is_zero()) {
                pick = i;
                break;
            }
        }
        if (!pick) {
            continue;
        }
        used[*pick] = true;
        const ScalarSeries inv = inverse(vs[*pick][c]);
        for (auto &e : vs[*pick]) {
            e = e * inv;
        }
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (i == *pick || vs[i][c].is_zero()) {
                continue;
            }
            const ScalarSeries f = vs[i][c];
            for (std::size_t r = 0; r < n; ++r) {
                vs[i][r] -= f * vs[*pick][r];
            }
        }
        pivot_of.emplace_back(c, *pick);
    }
    if (pivot_of.size() != vs.size()) {
        throw Error("internal: kernel directions are dependent mod l");
    }
    for (const auto &[c, i] : pivot_of) {
        kb.pivots.push_back(c);
        kb.vectors.push_back(std::move(vs[i]));
    }
    for (std::size_t c = 0; c < n; ++c) {
        if (std::find(kb.pivots.begin(), kb.pivots.end(), c) == kb.pivots.end()) {
            kb.complement.push_back(c);
        }
    }

    for (int r = 0; r <= order; ++r) {
        std::size_t pos = 0;
        for (std::size_t p : verdict.pivots) {
            if (*verdict.diagonal[p].valuation() <= r) {
                ++pos;
            }
        }
        kb.dims_by_order.push_back(n - pos);
    }
    kb.stable_from = order;
    while (kb.stable_from > 0 && kb.dims_by_order[static_cast<std::size_t>(kb.stable_from - 1)] ==
                                     kb.dims_by_order[static_cast<std::size_t>(order)]) {
        --kb.stable_from;
    }
    return kb;
}

ScalarSeries quadratic_form(const SeriesMatrix &g, const SeriesVector &v)
{
    if (g.rows() != v.size() || g.cols() != v.size()) {
        throw ValidationError("quadratic_form: dimension mismatch");
    }
    return inner(v, mat_vec(g, v));
}

std::vector<ScalarSeries> quadratic_form_batch(const SeriesMatrix &g, const std::vector<SeriesVector> &vs)
{
    std::vector<ScalarSeries> out(vs.size());
    const auto count = static_cast<long>(vs.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) {
        out[static_cast<std::size_t>(i)] = quadratic_form(g, vs[static_cast<std::size_t>(i)]);
    }
    return out;
}

std::vector<ScalarSeries> quadratic_form_batch_serial(const SeriesMatrix &g, const std::vector<SeriesVector> &vs)
{
    std::vector<ScalarSeries> out;
    out.reserve(vs.size());
    for (const auto &v : vs) {
        out.push_back(quadratic_form(g, v));
    }
    return out;
}

std::vector<SeriesVector> random_vectors(std::size_t dim, int order, std::size_t count, std::uint64_t seed)
{
    std::vector<SeriesVector> out(count);
    const auto c = static_cast<long>(count);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < c; ++i) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
        SeriesVector v;
        v.reserve(dim);
        for (std::size_t k = 0; k < dim; ++k) {
            // Mostly sparse, so low-order cancellations actually get probed.
            v.push_back(rng.uniform(0, 2) == 0 ? ScalarSeries(order, Scalar()) : random_series(rng, order, false));
        }
        out[static_cast<std::size_t>(i)] = std::move(v);
    }
    return out;
}

SoundnessReport psd_soundness(const SeriesMatrix &g, std::size_t count, std::uint64_t seed)
{
    const auto vs = random_vectors(g.rows(), order_of(g), count, seed);
    const auto vals = quadratic_form_batch(g, vs);
    SoundnessReport rep;
    rep.seed = seed;
    rep.vectors = count;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (lex_negative(vals[i])) {
            ++rep.violations;
            if (!rep.first_violation) {
                rep.first_violation = i;
            }
        }
    }
    return rep;
}

std::optional<std::pair<std::size_t, std::size_t>> cauchy_schwarz_violation(const SeriesMatrix &g)
{
    for (std::size_t i = 0; i < g.rows(); ++i) {
        for (std::size_t j = 0; j < g.cols(); ++j) {
            const ScalarSeries lhs = conj(g(i, j)) * g(i, j);
            const ScalarSeries rhs = g(i, i) * g(j, j);
            if (compare(lhs, rhs) == Ordering::greater) {
                return std::pair{i, j};
            }
        }
    }
    return std::nullopt;
}

ScalarKernel scalar_kernel(const ScalarMatrix &a)
{
    // Row reduce a, then read the nullspace off the free columns.
    ScalarMatrix m = a;
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t s = r;
        while (s < rows && m(s, c).is_zero()) {
            ++s;
        }
        if (s == rows) {
            continue;
        }
        for (std::size_t k = 0; k < cols; ++k) {
            std::swap(m(r, k), m(s, k));
        }
        const Scalar inv = m(r, c).inverse();
        for (std::size_t k = 0; k < cols; ++k) {
            m(r, k) *= inv;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i != r && !m(i, c).is_zero()) {
                const Scalar f = m(i, c);
                for (std::size_t k = 0; k < cols; ++k) {
                    m(i, k) -= f * m(r, k);
                }
            }
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols; ++c) {
        if (std::find(pivot_cols.begin(), pivot_cols.end(), c) == pivot_cols.end()) {
            free_cols.push_back(c);
        }
    }
    // Nullspace vectors, one per free column; then bring them to reduced
    // echelon form with respect to their own leading entries.
    std::vector<ScalarVector> basis;
    for (std::size_t f : free_cols) {
        ScalarVector v(cols, Scalar());
        v[f] = Scalar(1);
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
            v[pivot_cols[i]] = -m(i, f);
        }
        basis.push_back(std::move(v));
    }
    ScalarKernel out;
    std::vector<bool> used(basis.size(), false);
    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < cols && out.pivots.size() < basis.size(); ++c) {
        std::optional<std::size_t> pick;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (!used[i] && !basis[i][c].is_zero()) {
                pick = i;
                break;
            }
        }
        if (!pick) {
            continue;
        }
        used[*pick] = true;
        const Scalar inv = basis[*pick][c].inverse();
        for (auto &e : basis[*pick]) {
            e *= inv;
        }
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (i != *pick && !basis[i][c].is_zero()) {
                const Scalar f = basis[i][c];
                for (std::size_t k = 0; k < cols; ++k) {
                    basis[i][k] -= f * basis[*pick][k];
                }
            }
        }
        out.pivots.push_back(c);
        order.push_back(*pick);
    }
    for (std::size_t i : order) {
        out.vectors.push_back(basis[i]);
    }
    for (std::size_t c = 0; c < cols; ++c) {
        if (std::find(out.pivots.begin(), out.pivots.end(), c) == out.pivots.end()) {
            out.complement.push_back(c);
        }
    }
    return out;
}

std::size_t scalar_rank(const ScalarMatrix &a)
{
    return a.cols() - scalar_kernel(a).vectors.size();
}

} // namespace starlab
