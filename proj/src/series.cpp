#include "starlab/series.hpp"

namespace starlab {

ScalarSeries scalar_series(int order, const Scalar &c)
{
    return ScalarSeries::constant(order, Scalar(), c);
}

ScalarSeries lambda_power(int order, int k, const Scalar &c)
{
    ScalarSeries s(order, Scalar());
    if (k <= order) {
        s[k] = c;
    }
    return s;
}

ScalarSeries conj(const ScalarSeries &s)
{
    return s.map([](const Scalar &c) { return c.conj(); });
}

bool is_real(const ScalarSeries &s)
{
    for (const auto &c : s.coeffs()) {
        if (!c.is_real()) {
            return false;
        }
    }
    return true;
}

int sign(const ScalarSeries &s)
{
    if (!is_real(s)) {
        throw ValidationError("order is only defined on real series, got " + to_string(s));
    }
    for (const auto &c : s.coeffs()) {
        const int sg = sgn(c.re());
        if (sg != 0) {
            return sg;
        }
    }
    return 0;
}

Ordering compare(const ScalarSeries &a, const ScalarSeries &b)
{
    a.check_order(b);
    if (!is_real(a) || !is_real(b)) {
        throw ValidationError("order is only defined on real series");
    }
    const int s = sign(a - b);
    return s < 0 ? Ordering::less : (s == 0 ? Ordering::equal : Ordering::greater);
}

ScalarSeries inverse(const ScalarSeries &s)
{
    if (s[0].is_zero()) {
        throw ValidationError("series with vanishing constant term is not invertible: " + to_string(s));
    }
    const int n = s.order();
    ScalarSeries out(n, Scalar());
    const Scalar inv0 = s[0].inverse();
    out[0] = inv0;
    for (int r = 1; r <= n; ++r) {
        Scalar acc;
        for (int k = 1; k <= r; ++k) {
            if (!s[k].is_zero()) {
                acc += s[k] * out[r - k];
            }
        }
        out[r] = -(acc * inv0);
    }
    return out;
}

} // namespace starlab
