#pragma once

#include "starlab/error.hpp"
#include "starlab/scalar.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace starlab {

// Formal series sum_{r<=N} l^r c_r in the formal parameter l, truncated at a
// fixed order N carried by the value. Coefficients above N are dropped by
// every ring operation; combining two series of different orders throws
// OrderMismatch instead of re-truncating.
//
// C needs +=, -=, *, unary minus, is_zero(), and equality.
template <class C>
class Series {
public:
    Series() = default;
    Series(int order, const C &zero) : coeffs_(static_cast<std::size_t>(order) + 1, zero)
    {
        if (order < 0) {
            throw ValidationError("negative truncation order");
        }
    }
    explicit Series(std::vector<C> coeffs) : coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty()) {
            throw ValidationError("series needs at least one coefficient");
        }
    }

    // c * l^0 at the given order.
    static Series constant(int order, const C &zero, const C &c)
    {
        Series s(order, zero);
        s.coeffs_[0] = c;
        return s;
    }

    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const C &operator[](int r) const { return coeffs_.at(static_cast<std::size_t>(r)); }
    C &operator[](int r) { return coeffs_.at(static_cast<std::size_t>(r)); }
    const std::vector<C> &coeffs() const noexcept { return coeffs_; }

    bool is_zero() const
    {
        for (const auto &c : coeffs_) {
            if (!c.is_zero()) {
                return false;
            }
        }
        return true;
    }

    // Index of the lowest non-zero coefficient, or nullopt for the zero series.
    std::optional<int> valuation() const
    {
        for (int r = 0; r <= order(); ++r) {
            if (!coeffs_[static_cast<std::size_t>(r)].is_zero()) {
                return r;
            }
        }
        return std::nullopt;
    }

    Series &operator+=(const Series &o)
    {
        check_order(o);
        for (std::size_t r = 0; r < coeffs_.size(); ++r) {
            coeffs_[r] += o.coeffs_[r];
        }
        return *this;
    }
    Series &operator-=(const Series &o)
    {
        check_order(o);
        for (std::size_t r = 0; r < coeffs_.size(); ++r) {
            coeffs_[r] -= o.coeffs_[r];
        }
        return *this;
    }
    friend Series operator+(Series a, const Series &b) { return a += b; }
    friend Series operator-(Series a, const Series &b) { return a -= b; }
    Series operator-() const
    {
        Series s = *this;
        for (auto &c : s.coeffs_) {
            c = -c;
        }
        return s;
    }

    // Cauchy product truncated at the common order.
    friend Series operator*(const Series &a, const Series &b)
    {
        a.check_order(b);
        const int n = a.order();
        Series out = a.zero_like();
        for (int i = 0; i <= n; ++i) {
            const C &ai = a.coeffs_[static_cast<std::size_t>(i)];
            if (ai.is_zero()) {
                continue;
            }
            for (int j = 0; i + j <= n; ++j) {
                const C &bj = b.coeffs_[static_cast<std::size_t>(j)];
                if (!bj.is_zero()) {
                    out.coeffs_[static_cast<std::size_t>(i + j)] += ai * bj;
                }
            }
        }
        return out;
    }
    Series &operator*=(const Series &o) { return *this = *this * o; }

    // Multiply every coefficient by a scalar-like value.
    template <class S>
    Series scaled(const S &s) const
    {
        Series out = *this;
        for (auto &c : out.coeffs_) {
            c = c * s;
        }
        return out;
    }

    // Multiply by l^k (drops what falls above the order).
    Series shifted_up(int k) const
    {
        Series out = zero_like();
        for (int r = 0; r + k <= order(); ++r) {
            out.coeffs_[static_cast<std::size_t>(r + k)] = coeffs_[static_cast<std::size_t>(r)];
        }
        return out;
    }

    // Divide by l^k, keeping coefficients k..N as a series of order N-k.
    // The caller guarantees coefficients below k vanish.
    Series shifted_down(int k) const
    {
        std::vector<C> c(coeffs_.begin() + k, coeffs_.end());
        return Series(std::move(c));
    }

    // Explicit truncation to a lower order.
    Series truncated(int new_order) const
    {
        if (new_order > order()) {
            throw OrderMismatch("cannot truncate order " + std::to_string(order()) + " series to higher order " +
                                std::to_string(new_order));
        }
        std::vector<C> c(coeffs_.begin(), coeffs_.begin() + new_order + 1);
        return Series(std::move(c));
    }

    // Pad with zero coefficients. Only meaningful when the value is known to
    // vanish above its current order (e.g. a polynomial in l).
    Series padded(int new_order) const
    {
        if (new_order < order()) {
            throw OrderMismatch("padded() cannot lower the order");
        }
        Series out = *this;
        out.coeffs_.resize(static_cast<std::size_t>(new_order) + 1, zero_coeff());
        return out;
    }

    template <class F>
    auto map(F &&f) const -> Series<decltype(f(std::declval<const C &>()))>
    {
        using D = decltype(f(std::declval<const C &>()));
        std::vector<D> c;
        c.reserve(coeffs_.size());
        for (const auto &x : coeffs_) {
            c.push_back(f(x));
        }
        return Series<D>(std::move(c));
    }

    Series zero_like() const { return Series(order(), zero_coeff()); }
    C zero_coeff() const { return coeffs_.front() - coeffs_.front(); }

    friend bool operator==(const Series &a, const Series &b) { return a.coeffs_ == b.coeffs_; }

    void check_order(const Series &o) const
    {
        if (o.order() != order()) {
            throw OrderMismatch("series orders differ: " + std::to_string(order()) + " vs " +
                                std::to_string(o.order()));
        }
    }

private:
    std::vector<C> coeffs_{C{}};
};

using ScalarSeries = Series<Scalar>;

enum class Ordering { less, equal, greater };

// Scalar-coefficient helpers.
ScalarSeries scalar_series(int order, const Scalar &c);
// l^k at the given order (zero if k > order).
ScalarSeries lambda_power(int order, int k, const Scalar &c = Scalar(1));
ScalarSeries conj(const ScalarSeries &s);
bool is_real(const ScalarSeries &s);
// Lexicographic order of R[[l]]: sign of the lowest non-zero coefficient of
// a - b. Throws ValidationError if either series has a non-real coefficient.
Ordering compare(const ScalarSeries &a, const ScalarSeries &b);
// -1, 0, +1 for a real series.
int sign(const ScalarSeries &s);
// Multiplicative inverse of a series whose constant term is non-zero.
ScalarSeries inverse(const ScalarSeries &s);

// "1 - 3/2*l + (2+1i)*l^2"; the zero series prints as "0".
std::string to_string(const ScalarSeries &s);

} // namespace starlab
