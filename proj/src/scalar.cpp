#include "starlab/scalar.hpp"

#include "starlab/error.hpp"

namespace starlab {

Scalar Scalar::ratio(long p, long q)
{
    if (q == 0) {
        throw ValidationError("Scalar::ratio: zero denominator");
    }
    Rational r(p, q);
    r.canonicalize();
    return Scalar(r);
}

Scalar Scalar::inverse() const
{
    const Rational n = norm();
    if (sgn(n) == 0) {
        throw ValidationError("division by zero scalar");
    }
    return Scalar(re_ / n, -im_ / n);
}

Scalar &Scalar::operator+=(const Scalar &o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Scalar &Scalar::operator-=(const Scalar &o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Scalar &Scalar::operator*=(const Scalar &o)
{
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

Scalar &Scalar::operator/=(const Scalar &o)
{
    if (sgn(o.im_) == 0) {
        if (sgn(o.re_) == 0) {
            throw ValidationError("division by zero scalar");
        }
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

std::string rational_to_string(const Rational &q)
{
    return q.get_str();
}

std::string Scalar::to_string() const
{
    if (sgn(im_) == 0) {
        return rational_to_string(re_);
    }
    if (sgn(re_) == 0) {
        return rational_to_string(im_) + "i";
    }
    std::string s = "(" + rational_to_string(re_);
    s += sgn(im_) > 0 ? "+" : "-";
    s += rational_to_string(abs(im_)) + "i)";
    return s;
}

std::ostream &operator<<(std::ostream &os, const Scalar &s)
{
    return os << s.to_string();
}

} // namespace starlab
