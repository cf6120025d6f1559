#include "starlab/poly.hpp"

#include "starlab/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace starlab {

std::string chart_name(Chart c)
{
    switch (c) {
    case Chart::complex:
        return "complex";
    case Chart::phase_space:
        return "phase-space";
    case Chart::unknowns:
        return "unknowns";
    }
    return "?";
}

Chart chart_from_name(const std::string &name)
{
    if (name == "complex") {
        return Chart::complex;
    }
    if (name == "phase-space" || name == "phase") {
        return Chart::phase_space;
    }
    if (name == "unknowns") {
        return Chart::unknowns;
    }
    throw ValidationError("unknown chart '" + name + "' (expected complex or phase-space)");
}

std::string to_string(const Space &s)
{
    return chart_name(s.chart) + "(n=" + std::to_string(s.n) + ")";
}

namespace {

bool first_sort(Chart c, Sort s)
{
    switch (c) {
    case Chart::complex:
        return s == Sort::z;
    case Chart::phase_space:
        return s == Sort::q;
    case Chart::unknowns:
        return s == Sort::a;
    }
    return false;
}

bool second_sort(Chart c, Sort s)
{
    switch (c) {
    case Chart::complex:
        return s == Sort::zb;
    case Chart::phase_space:
        return s == Sort::p;
    case Chart::unknowns:
        return s == Sort::b;
    }
    return false;
}

} // namespace

int slot_of(const Space &s, Var v)
{
    if (v.index < 1 || v.index > s.n) {
        throw ChartMismatch("variable index " + std::to_string(v.index) + " out of range for " + to_string(s));
    }
    if (first_sort(s.chart, v.sort)) {
        return v.index - 1;
    }
    if (second_sort(s.chart, v.sort)) {
        return s.n + v.index - 1;
    }
    throw ChartMismatch("variable sort does not belong to chart " + chart_name(s.chart));
}

Var var_at(const Space &s, int slot)
{
    const bool first = slot < s.n;
    const int index = (first ? slot : slot - s.n) + 1;
    switch (s.chart) {
    case Chart::complex:
        return {first ? Sort::z : Sort::zb, index};
    case Chart::phase_space:
        return {first ? Sort::q : Sort::p, index};
    case Chart::unknowns:
        return {first ? Sort::a : Sort::b, index};
    }
    return {Sort::z, index};
}

std::string var_name(const Space &s, int slot)
{
    const Var v = var_at(s, slot);
    std::string base;
    switch (v.sort) {
    case Sort::z:
        base = "z";
        break;
    case Sort::zb:
        base = "zb";
        break;
    case Sort::q:
        base = "q";
        break;
    case Sort::p:
        base = "p";
        break;
    case Sort::a:
        base = "a";
        break;
    case Sort::b:
        base = "b";
        break;
    }
    if (s.n > 1) {
        base += std::to_string(v.index);
    }
    return base;
}

int total_degree(const Monomial &m)
{
    return std::accumulate(m.begin(), m.end(), 0);
}

bool MonomialLess::operator()(const Monomial &a, const Monomial &b) const
{
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) {
        return da < db;
    }
    // Larger exponent in an earlier slot comes first.
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), std::greater<>());
}

Poly Poly::constant(Space s, const Scalar &c)
{
    return monomial(s, Monomial(static_cast<std::size_t>(s.num_vars()), 0), c);
}

Poly Poly::monomial(Space s, Monomial m, const Scalar &c)
{
    if (static_cast<int>(m.size()) != s.num_vars()) {
        throw ChartMismatch("monomial length does not match " + to_string(s));
    }
    Poly p(s);
    if (!c.is_zero()) {
        p.terms_.emplace(std::move(m), c);
    }
    return p;
}

Poly Poly::variable(Space s, Var v)
{
    Monomial m(static_cast<std::size_t>(s.num_vars()), 0);
    m[static_cast<std::size_t>(slot_of(s, v))] = 1;
    return monomial(s, std::move(m));
}

int Poly::total_degree() const
{
    int d = -1;
    for (const auto &[m, c] : terms_) {
        d = std::max(d, starlab::total_degree(m));
    }
    return d;
}

int Poly::degree_in(int slot) const
{
    int d = terms_.empty() ? -1 : 0;
    for (const auto &[m, c] : terms_) {
        d = std::max(d, m[static_cast<std::size_t>(slot)]);
    }
    return d;
}

Scalar Poly::coeff(const Monomial &m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
}

void Poly::add_term(const Monomial &m, const Scalar &c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

void Poly::require_same_space(const Poly &o, const char *what) const
{
    if (!(space_ == o.space_)) {
        // A default-constructed zero is compatible with everything.
        if ((terms_.empty() && space_.n == 0) || (o.terms_.empty() && o.space_.n == 0)) {
            return;
        }
        throw ChartMismatch(std::string(what) + ": " + to_string(space_) + " vs " + to_string(o.space_));
    }
}

Poly &Poly::operator+=(const Poly &o)
{
    require_same_space(o, "poly addition");
    if (space_.n == 0 && terms_.empty()) {
        space_ = o.space_;
    }
    for (const auto &[m, c] : o.terms_) {
        add_term(m, c);
    }
    return *this;
}

Poly &Poly::operator-=(const Poly &o)
{
    require_same_space(o, "poly subtraction");
    if (space_.n == 0 && terms_.empty()) {
        space_ = o.space_;
    }
    for (const auto &[m, c] : o.terms_) {
        add_term(m, -c);
    }
    return *this;
}

Poly Poly::operator-() const
{
    Poly out = *this;
    for (auto &[m, c] : out.terms_) {
        c = -c;
    }
    return out;
}

Poly operator*(const Poly &a, const Poly &b)
{
    a.require_same_space(b, "poly product");
    Poly out(a.space_.n == 0 ? b.space_ : a.space_);
    const std::size_t nv = static_cast<std::size_t>(out.space_.num_vars());
    Monomial m(nv, 0);
    for (const auto &[ma, ca] : a.terms_) {
        for (const auto &[mb, cb] : b.terms_) {
            for (std::size_t k = 0; k < nv; ++k) {
                m[k] = ma[k] + mb[k];
            }
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

Poly operator*(const Poly &a, const Scalar &c)
{
    if (c.is_zero()) {
        return Poly(a.space_);
    }
    Poly out = a;
    for (auto &[m, x] : out.terms_) {
        x *= c;
    }
    return out;
}

Rational factorial(int n)
{
    Rational f(1);
    for (int k = 2; k <= n; ++k) {
        f *= k;
    }
    return f;
}

Poly Poly::diff(int slot, int k) const
{
    if (k < 0) {
        throw ValidationError("negative derivative order");
    }
    if (k == 0) {
        return *this;
    }
    const auto s = static_cast<std::size_t>(slot);
    Poly out(space_);
    for (const auto &[m, c] : terms_) {
        const int e = m[s];
        if (e < k) {
            continue;
        }
        // e! / (e-k)!
        Rational falling(1);
        for (int j = 0; j < k; ++j) {
            falling *= e - j;
        }
        Monomial dm = m;
        dm[s] = e - k;
        out.add_term(dm, c * Scalar(falling));
    }
    return out;
}

Poly Poly::diff(const Monomial &orders) const
{
    Poly out = *this;
    for (std::size_t s = 0; s < orders.size() && !out.is_zero(); ++s) {
        if (orders[s] > 0) {
            out = out.diff(static_cast<int>(s), orders[s]);
        }
    }
    return out;
}

Scalar Poly::eval_origin() const
{
    if (terms_.empty()) {
        return Scalar();
    }
    // The constant monomial is the smallest in the global order.
    const auto &[m, c] = *terms_.begin();
    return starlab::total_degree(m) == 0 ? c : Scalar();
}

Poly Poly::star() const
{
    Poly out(space_);
    const int n = space_.n;
    for (const auto &[m, c] : terms_) {
        if (space_.chart == Chart::complex) {
            Monomial sm(m.size());
            for (int k = 0; k < n; ++k) {
                sm[static_cast<std::size_t>(k)] = m[static_cast<std::size_t>(n + k)];
                sm[static_cast<std::size_t>(n + k)] = m[static_cast<std::size_t>(k)];
            }
            out.add_term(sm, c.conj());
        } else {
            out.add_term(m, c.conj());
        }
    }
    return out;
}

Poly Poly::zero_section() const
{
    if (space_.chart != Chart::phase_space) {
        throw ChartMismatch("zero section restriction needs the phase-space chart");
    }
    Poly out(space_);
    const int n = space_.n;
    for (const auto &[m, c] : terms_) {
        bool has_p = false;
        for (int k = 0; k < n; ++k) {
            has_p = has_p || m[static_cast<std::size_t>(n + k)] != 0;
        }
        if (!has_p) {
            out.add_term(m, c);
        }
    }
    return out;
}

namespace {

void compositions(int nv, int degree, Monomial &cur, int slot, std::vector<Monomial> &out)
{
    if (slot == nv - 1) {
        cur[static_cast<std::size_t>(slot)] = degree;
        out.push_back(cur);
        return;
    }
    // Descending exponent in the current slot gives descending lex order.
    for (int e = degree; e >= 0; --e) {
        cur[static_cast<std::size_t>(slot)] = e;
        compositions(nv, degree - e, cur, slot + 1, out);
    }
}

} // namespace

std::vector<Monomial> monomial_basis(const Space &s, int d)
{
    if (d < 0) {
        throw ValidationError("monomial_basis: negative degree");
    }
    const int nv = s.num_vars();
    std::vector<Monomial> out;
    if (nv == 0) {
        out.emplace_back();
        return out;
    }
    Monomial cur(static_cast<std::size_t>(nv), 0);
    for (int deg = 0; deg <= d; ++deg) {
        compositions(nv, deg, cur, 0, out);
    }
    return out;
}

std::vector<Poly> monomial_basis_polys(const Space &s, int d)
{
    std::vector<Poly> out;
    for (auto &m : monomial_basis(s, d)) {
        out.push_back(Poly::monomial(s, m));
    }
    return out;
}

SeriesPoly series_poly(int order, const Poly &p)
{
    return SeriesPoly::constant(order, Poly(p.space()), p);
}

SeriesPoly zero_series_poly(int order, const Space &s)
{
    return SeriesPoly(order, Poly(s));
}

SeriesPoly star(const SeriesPoly &f)
{
    return f.map([](const Poly &p) { return p.star(); });
}

SeriesPoly scale(const SeriesPoly &f, const ScalarSeries &s)
{
    if (f.order() != s.order()) {
        throw OrderMismatch("scale: series orders differ");
    }
    SeriesPoly out = f.zero_like();
    const int n = f.order();
    for (int i = 0; i <= n; ++i) {
        if (s[i].is_zero()) {
            continue;
        }
        for (int j = 0; i + j <= n; ++j) {
            if (!f[j].is_zero()) {
                out[i + j] += f[j] * s[i];
            }
        }
    }
    return out;
}

SeriesPoly pointwise(const SeriesPoly &f, const SeriesPoly &g)
{
    return f * g;
}

ScalarSeries eval_origin(const SeriesPoly &f)
{
    return f.map([](const Poly &p) { return p.eval_origin(); });
}

int total_degree(const SeriesPoly &f)
{
    int d = -1;
    for (const auto &p : f.coeffs()) {
        d = std::max(d, p.total_degree());
    }
    return d;
}

const Space &space_of(const SeriesPoly &f)
{
    return f[0].space();
}

SeriesPoly diff(const SeriesPoly &f, int slot, int k)
{
    return f.map([&](const Poly &p) { return p.diff(slot, k); });
}

} // namespace starlab
