#include "starlab/schrodinger.hpp"

#include "starlab/error.hpp"
#include "starlab/functional.hpp"
#include "starlab/literal.hpp"
#include "starlab/random.hpp"

#include <functional>

namespace starlab {

namespace {

Monomial lift_index(const QIndex &i)
{
    Monomial m(i.begin(), i.end());
    m.resize(2 * i.size(), 0);
    return m;
}

QIndex zero_index(int n)
{
    return QIndex(static_cast<std::size_t>(n), 0);
}

void require_no_p(const SeriesPoly &f, const char *what)
{
    const Space &s = space_of(f);
    if (s.chart != Chart::phase_space) {
        throw ChartMismatch(std::string(what) + " needs the phase-space chart");
    }
    for (int r = 0; r <= f.order(); ++r) {
        for (int k = 0; k < s.n; ++k) {
            if (f[r].degree_in(s.n + k) > 0) {
                throw ValidationError(std::string(what) + " must not depend on p: " + starlab::to_string(f));
            }
        }
    }
}

// All multi-indices K <= I with binom(I, K).
void sub_indices(const QIndex &i, std::size_t k, QIndex &cur, Rational coeff,
                 std::vector<std::pair<QIndex, Rational>> &out)
{
    if (k == i.size()) {
        out.emplace_back(cur, coeff);
        return;
    }
    Rational b(1);
    for (int j = 0; j <= i[k]; ++j) {
        cur[k] = j;
        sub_indices(i, k + 1, cur, coeff * b, out);
        b = b * (i[k] - j) / (j + 1);
    }
    cur[k] = 0;
}

std::vector<std::pair<QIndex, Rational>> sub_indices(const QIndex &i)
{
    std::vector<std::pair<QIndex, Rational>> out;
    QIndex cur(i.size(), 0);
    sub_indices(i, 0, cur, Rational(1), out);
    return out;
}

QIndex difference(const QIndex &a, const QIndex &b)
{
    QIndex d(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        d[k] = a[k] - b[k];
    }
    return d;
}

QIndex sum(const QIndex &a, const QIndex &b)
{
    QIndex d(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        d[k] = a[k] + b[k];
    }
    return d;
}

SeriesPoly diff_index(const SeriesPoly &f, const QIndex &i)
{
    return f.map([&](const Poly &p) { return p.diff(lift_index(i)); });
}

} // namespace

DiffOperator::DiffOperator(int n, int order) : n_(n), order_(order) {}

DiffOperator DiffOperator::multiplication(const SeriesPoly &a)
{
    require_no_p(a, "multiplication operator coefficient");
    DiffOperator d(space_of(a).n, a.order());
    d.add_term(zero_index(d.n_), a);
    return d;
}

DiffOperator DiffOperator::derivative(int n, int k, int order)
{
    if (k < 1 || k > n) {
        throw ValidationError("derivative index out of range");
    }
    DiffOperator d(n, order);
    QIndex i = zero_index(n);
    i[static_cast<std::size_t>(k - 1)] = 1;
    d.add_term(i, series_poly(order, Poly::constant(d.space(), Scalar(1))));
    return d;
}

void DiffOperator::add_term(const QIndex &index, const SeriesPoly &coeff)
{
    if (static_cast<int>(index.size()) != n_ || !(space_of(coeff) == space())) {
        throw ChartMismatch("differential operator term has the wrong dimension");
    }
    if (coeff.order() != order_) {
        throw OrderMismatch("differential operator coefficient has order " + std::to_string(coeff.order()) +
                            ", operator has order " + std::to_string(order_));
    }
    auto it = terms_.find(index);
    if (it == terms_.end()) {
        if (!coeff.is_zero()) {
            terms_.emplace(index, coeff);
        }
        return;
    }
    it->second += coeff;
    if (it->second.is_zero()) {
        terms_.erase(it);
    }
}

SeriesPoly DiffOperator::apply(const SeriesPoly &psi) const
{
    require_no_p(psi, "wave function");
    psi.check_order(zero_series_poly(order_, space()));
    SeriesPoly out = zero_series_poly(order_, space());
    for (const auto &[i, a] : terms_) {
        out += a * diff_index(psi, i);
    }
    return out;
}

DiffOperator DiffOperator::compose(const DiffOperator &other) const
{
    if (n_ != other.n_ || order_ != other.order_) {
        throw ChartMismatch("composing differential operators of different shape");
    }
    // (a d^I)(b d^J) = a sum_{K<=I} binom(I,K) (d^K b) d^(I-K+J)
    DiffOperator out(n_, order_);
    for (const auto &[i, a] : terms_) {
        for (const auto &[j, b] : other.terms_) {
            for (const auto &[k, binom] : sub_indices(i)) {
                const SeriesPoly db = diff_index(b, k);
                if (db.is_zero()) {
                    continue;
                }
                out.add_term(sum(difference(i, k), j), (a * db).scaled(Scalar(binom)));
            }
        }
    }
    return out;
}

DiffOperator &DiffOperator::operator+=(const DiffOperator &o)
{
    if (n_ != o.n_ || order_ != o.order_) {
        throw ChartMismatch("adding differential operators of different shape");
    }
    for (const auto &[i, a] : o.terms_) {
        add_term(i, a);
    }
    return *this;
}

DiffOperator operator-(const DiffOperator &a, const DiffOperator &b)
{
    return a + b.scaled(Scalar(-1));
}

DiffOperator DiffOperator::scaled(const Scalar &c) const
{
    DiffOperator out(n_, order_);
    for (const auto &[i, a] : terms_) {
        out.add_term(i, a.scaled(c));
    }
    return out;
}

std::string DiffOperator::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string s;
    for (const auto &[i, a] : terms_) {
        if (!s.empty()) {
            s += " + ";
        }
        s += "(" + starlab::to_string(a) + ")";
        int total = 0;
        for (int e : i) {
            total += e;
        }
        if (total == 0) {
            continue;
        }
        std::string den;
        for (std::size_t k = 0; k < i.size(); ++k) {
            if (i[k] == 0) {
                continue;
            }
            den += "dq" + std::to_string(k + 1);
            if (i[k] > 1) {
                den += "^" + std::to_string(i[k]);
            }
        }
        s += "*d" + (total > 1 ? "^" + std::to_string(total) : std::string()) + "/" + den;
    }
    return s;
}

SeriesPoly schrodinger_apply(const SeriesPoly &f, const SeriesPoly &psi)
{
    const Space &s = space_of(f);
    if (s.chart != Chart::phase_space) {
        throw ChartMismatch("schrodinger: observable must live on the phase-space chart");
    }
    require_no_p(psi, "wave function");
    if (!(space_of(psi) == s)) {
        throw ChartMismatch("schrodinger: wave function and observable have different n");
    }
    const SeriesPoly prod = star_multiply(f, psi, BidiffGenerator::weyl_moyal(s.n));
    const SeriesPoly smoothed = SmoothingOperator::n_operator(s.n).apply(prod);
    return smoothed.map([](const Poly &p) { return p.zero_section(); });
}

DiffOperator schrodinger_operator(const SeriesPoly &f, int validation_extra)
{
    const Space &s = space_of(f);
    if (s.chart != Chart::phase_space) {
        throw ChartMismatch("schrodinger: observable must live on the phase-space chart");
    }
    const int n = s.n;
    const int order = f.order();
    int pdeg = 0;
    for (int r = 0; r <= order; ++r) {
        for (const auto &[m, c] : f[r].terms()) {
            int d = 0;
            for (int k = 0; k < n; ++k) {
                d += m[static_cast<std::size_t>(n + k)];
            }
            pdeg = std::max(pdeg, d);
        }
    }

    auto qmono = [&](const QIndex &j) { return series_poly(order, Poly::monomial(s, lift_index(j))); };
    auto qindices = [&](int d) {
        std::vector<QIndex> out;
        for (const auto &m : monomial_basis(Space{Chart::phase_space, n}, d)) {
            bool q_only = true;
            for (int k = 0; k < n; ++k) {
                q_only = q_only && m[static_cast<std::size_t>(n + k)] == 0;
            }
            if (q_only) {
                out.emplace_back(m.begin(), m.begin() + n);
            }
        }
        return out;
    };

    // Triangular solve: rho(f) q^J = sum_{I<=J} a_I J!/(J-I)! q^(J-I).
    DiffOperator op(n, order);
    for (const QIndex &j : qindices(pdeg)) {
        SeriesPoly rest = schrodinger_apply(f, qmono(j)) - op.apply(qmono(j));
        Rational jfact(1);
        for (int e : j) {
            jfact *= factorial(e);
        }
        op.add_term(j, rest.scaled(Scalar(Rational(1) / jfact)));
    }
    for (const QIndex &j : qindices(pdeg + validation_extra)) {
        const SeriesPoly want = schrodinger_apply(f, qmono(j));
        if (!(op.apply(qmono(j)) == want)) {
            throw Error("internal: extracted operator for " + to_string(f) + " disagrees on q-monomial " +
                        monomial_to_string(s, lift_index(j)));
        }
    }
    return op;
}

bool weyl_gelfand_member(const SeriesPoly &f)
{
    const Space &s = space_of(f);
    if (s.chart != Chart::phase_space) {
        throw ChartMismatch("membership test needs the phase-space chart");
    }
    const SeriesPoly nf = SmoothingOperator::n_operator(s.n).apply(f);
    for (int r = 0; r <= nf.order(); ++r) {
        if (!nf[r].zero_section().is_zero()) {
            return false;
        }
    }
    return true;
}

DiffOperator formal_adjoint(const DiffOperator &d)
{
    // (a d^I)^dagger = (-1)^|I| d^I o conj(a)
    DiffOperator out(d.n(), d.order());
    for (const auto &[i, a] : d.terms()) {
        int total = 0;
        for (int e : i) {
            total += e;
        }
        const SeriesPoly ca = star(a);
        for (const auto &[k, binom] : sub_indices(i)) {
            const Scalar sign(total % 2 == 0 ? 1 : -1);
            out.add_term(difference(i, k), diff_index(ca, k).scaled(sign * Scalar(binom)));
        }
    }
    return out;
}

DiffOperator gaussian_adjoint(const DiffOperator &d)
{
    const int n = d.n();
    const int order = d.order();
    const Space s{Chart::phase_space, n};
    DiffOperator out(n, order);
    for (const auto &[i, a] : d.terms()) {
        DiffOperator t = DiffOperator::multiplication(series_poly(order, Poly::constant(s, Scalar(1))));
        int total = 0;
        for (int k = 0; k < n; ++k) {
            const DiffOperator shifted =
                DiffOperator::derivative(n, k + 1, order) -
                DiffOperator::multiplication(series_poly(order, Poly::variable(s, {Sort::q, k + 1})));
            for (int e = 0; e < i[static_cast<std::size_t>(k)]; ++e) {
                t = t.compose(shifted);
            }
            total += i[static_cast<std::size_t>(k)];
        }
        t = t.compose(DiffOperator::multiplication(star(a)));
        out += t.scaled(Scalar(total % 2 == 0 ? 1 : -1));
    }
    return out;
}

ScalarSeries gaussian_pairing(const SeriesPoly &psi, const SeriesPoly &phi)
{
    require_no_p(psi, "wave function");
    require_no_p(phi, "wave function");
    return Functional::gaussian_moment(space_of(psi).n).evaluate(star(psi) * phi);
}

ScalarMatrix gaussian_gram(int n, int d)
{
    const Space s{Chart::phase_space, n};
    std::vector<Poly> qs;
    for (const auto &m : monomial_basis(s, d)) {
        bool q_only = true;
        for (int k = 0; k < n; ++k) {
            q_only = q_only && m[static_cast<std::size_t>(n + k)] == 0;
        }
        if (q_only) {
            qs.push_back(Poly::monomial(s, m));
        }
    }
    ScalarMatrix g(qs.size(), qs.size(), Scalar());
    for (std::size_t i = 0; i < qs.size(); ++i) {
        for (std::size_t j = 0; j < qs.size(); ++j) {
            g(i, j) = gaussian_pairing(series_poly(0, qs[i]), series_poly(0, qs[j]))[0];
        }
    }
    return g;
}

} // namespace starlab

namespace starlab {

namespace {

struct Sample {
    SeriesPoly f;
    SeriesPoly g;
    SeriesPoly psi;
    SeriesPoly phi;
};

SeriesPoly wave_function(Rng &rng, const Space &s, int order, int max_degree)
{
    return random_series_poly(rng, s, order, max_degree).map([](const Poly &p) { return p.zero_section(); });
}

} // namespace

std::vector<OperatorIdentityCheck> schrodinger_properties(int n, std::size_t count, int max_degree, int order,
                                                          std::uint64_t seed)
{
    const Space s{Chart::phase_space, n};
    const BidiffGenerator wm = BidiffGenerator::weyl_moyal(n);
    std::vector<Sample> samples;
    samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng = Rng::stream(seed, i);
        Sample smp{random_series_poly(rng, s, order, max_degree), random_series_poly(rng, s, order, max_degree),
                   wave_function(rng, s, order, max_degree), wave_function(rng, s, order, max_degree)};
        samples.push_back(std::move(smp));
    }

    // Each identity returns (lhs, rhs) as printable values.
    using Pair = std::pair<std::string, std::string>;
    const auto homomorphism = [&](const Sample &x) -> std::optional<Pair> {
        const DiffOperator lhs = schrodinger_operator(star_multiply(x.f, x.g, wm));
        const DiffOperator rhs = schrodinger_operator(x.f).compose(schrodinger_operator(x.g));
        if (lhs == rhs) {
            return std::nullopt;
        }
        return Pair{lhs.to_string(), rhs.to_string()};
    };
    const auto adjoint = [&](const Sample &x) -> std::optional<Pair> {
        const DiffOperator lhs = schrodinger_operator(star(x.f));
        const DiffOperator rhs = formal_adjoint(schrodinger_operator(x.f));
        if (lhs == rhs) {
            return std::nullopt;
        }
        return Pair{lhs.to_string(), rhs.to_string()};
    };
    const auto gaussian = [&](const Sample &x) -> std::optional<Pair> {
        const DiffOperator a = schrodinger_operator(x.f);
        const ScalarSeries lhs = gaussian_pairing(a.apply(x.psi), x.phi);
        const ScalarSeries rhs = gaussian_pairing(x.psi, gaussian_adjoint(a).apply(x.phi));
        if (lhs == rhs) {
            return std::nullopt;
        }
        return Pair{starlab::to_string(lhs), starlab::to_string(rhs)};
    };

    const std::vector<std::pair<std::string, std::function<std::optional<Pair>(const Sample &)>>> identities{
        {"homomorphism", homomorphism}, {"adjoint", adjoint}, {"gaussian-adjoint", gaussian}};

    const auto total = static_cast<long>(count * identities.size());
    std::vector<char> ok(count * identities.size(), 1);
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < total; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        ok[idx] = identities[idx % identities.size()].second(samples[idx / identities.size()]) ? 0 : 1;
    }

    std::vector<OperatorIdentityCheck> out;
    for (std::size_t j = 0; j < identities.size(); ++j) {
        OperatorIdentityCheck c;
        c.name = identities[j].first;
        c.samples = count;
        for (std::size_t i = 0; i < count; ++i) {
            if (!ok[i * identities.size() + j]) {
                const auto diff = identities[j].second(samples[i]);
                c.pass = false;
                c.failing_index = i;
                c.witness = {samples[i].f, samples[i].g};
                c.lhs = diff->first;
                c.rhs = diff->second;
                break;
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace starlab
