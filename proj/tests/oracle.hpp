#pragma once

// Test-side reference computations. Nothing here calls into the star
// engine; they are independent re-derivations used as oracles.

#include "starlab/literal.hpp"
#include "starlab/poly.hpp"

#include <map>
#include <utility>

namespace oracle {

using starlab::Rational;
using starlab::Scalar;

inline Rational fact(int n)
{
    Rational r(1);
    for (int k = 2; k <= n; ++k) {
        r *= k;
    }
    return r;
}

inline Rational binom(int n, int k)
{
    if (k < 0 || k > n) {
        return Rational(0);
    }
    return fact(n) / (fact(k) * fact(n - k));
}

inline Rational power(const Rational &x, int k)
{
    Rational r(1);
    for (int i = 0; i < k; ++i) {
        r *= x;
    }
    return r;
}

inline Scalar power(const Scalar &x, int k)
{
    Scalar r(1);
    for (int i = 0; i < k; ++i) {
        r *= x;
    }
    return r;
}

// Bivariate polynomial in (x, y) with coefficients per power of l:
// key (a, b, r) -> coefficient of x^a y^b l^r.
using Bi = std::map<std::tuple<int, int, int>, Scalar>;

inline void add(Bi &p, int a, int b, int r, const Scalar &c)
{
    if (c.is_zero()) {
        return;
    }
    auto &slot = p[{a, b, r}];
    slot += c;
    if (slot.is_zero()) {
        p.erase({a, b, r});
    }
}

// z^a zb^b (Wick) z^c zb^d: only d/dz of the left meets d/dzb of the right,
// sum_r (2l)^r / r! * [a!/(a-r)!] [d!/(d-r)!] z^(a-r+c) zb^(b+d-r).
inline Bi wick_monomials(int a, int b, int c, int d, int order)
{
    Bi out;
    for (int r = 0; r <= std::min(a, d) && r <= order; ++r) {
        const Rational coeff = power(Rational(2), r) / fact(r) * (fact(a) / fact(a - r)) * (fact(d) / fact(d - r));
        add(out, a - r + c, b + d - r, r, Scalar(coeff));
    }
    return out;
}

// q^a p^b (Moyal) q^c p^d from the Moyal bracket expansion
// sum_r (il/2)^r / r! sum_k C(r,k) (-1)^k (d_q^{r-k} d_p^k f)(d_p^{r-k} d_q^k g).
inline Bi moyal_monomials(int a, int b, int c, int d, int order)
{
    Bi out;
    const Scalar half_i(0, Rational(1, 2));
    const auto falling = [](int n, int k) { return k > n ? Rational(0) : fact(n) / fact(n - k); };
    for (int r = 0; r <= order; ++r) {
        for (int k = 0; k <= r; ++k) {
            const Rational df = falling(a, r - k) * falling(b, k);
            const Rational dg = falling(d, r - k) * falling(c, k);
            if (sgn(df) == 0 || sgn(dg) == 0) {
                continue;
            }
            const Scalar coeff = power(half_i, r) * Scalar(binom(r, k) / fact(r) * (k % 2 == 0 ? 1 : -1) * df * dg);
            add(out, a - (r - k) + c - k, b - k + d - (r - k), r, coeff);
        }
    }
    return out;
}

// Converts to a library series on the given chart with n = 1.
inline starlab::SeriesPoly to_series(const Bi &p, const starlab::Space &space, int order)
{
    starlab::SeriesPoly out = starlab::zero_series_poly(order, space);
    for (const auto &[k, c] : p) {
        const auto [a, b, r] = k;
        if (r <= order) {
            out[r] += starlab::Poly::monomial(space, {a, b}, c);
        }
    }
    return out;
}

// E[q^k] for a standard normal q.
inline Rational gaussian_moment(int k)
{
    if (k % 2 == 1) {
        return Rational(0);
    }
    Rational r(1);
    for (int j = k - 1; j > 1; j -= 2) {
        r *= j;
    }
    return r;
}

} // namespace oracle
