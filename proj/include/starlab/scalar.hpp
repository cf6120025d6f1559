#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>

namespace starlab {

using Rational = mpq_class;

// Gaussian rational re + im*i. Arithmetic is exact; there is no
// floating-point path anywhere in the library.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : re_(v) {}
    Scalar(Rational re) : re_(std::move(re)) { re_.canonicalize(); }
    Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }

    static Scalar i() { return Scalar(0, 1); }
    // p/q with q != 0.
    static Scalar ratio(long p, long q);

    const Rational &re() const noexcept { return re_; }
    const Rational &im() const noexcept { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    Scalar conj() const { return Scalar(re_, -im_); }
    // |s|^2, always real and non-negative.
    Rational norm() const { return re_ * re_ + im_ * im_; }
    Scalar inverse() const;

    Scalar &operator+=(const Scalar &o);
    Scalar &operator-=(const Scalar &o);
    Scalar &operator*=(const Scalar &o);
    Scalar &operator/=(const Scalar &o);

    friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar &b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar &b) { return a /= b; }
    Scalar operator-() const { return Scalar(-re_, -im_); }

    friend bool operator==(const Scalar &a, const Scalar &b) { return a.re_ == b.re_ && a.im_ == b.im_; }

    // Standalone literal, e.g. "3/2", "-1i", "(2+1i)".
    std::string to_string() const;

private:
    Rational re_{0};
    Rational im_{0};
};

std::ostream &operator<<(std::ostream &os, const Scalar &s);

// Canonical text for a rational: "p" or "p/q".
std::string rational_to_string(const Rational &q);

} // namespace starlab
