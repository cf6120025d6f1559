#pragma once

#include "starlab/scalar.hpp"
#include "starlab/series.hpp"

#include <map>
#include <string>
#include <vector>

namespace starlab {

// Coordinate chart of the observable algebra.
//  complex:     z_1..z_n, zb_1..zb_n with z_k* = zb_k
//  phase_space: q^1..q^n, p_1..p_n, all real
//  unknowns:    a_1..a_n, b_1..b_n, real placeholders for symbolic unknowns
enum class Chart { complex, phase_space, unknowns };

struct Space {
    Chart chart = Chart::complex;
    int n = 0;

    int num_vars() const noexcept { return 2 * n; }
    friend bool operator==(const Space &, const Space &) = default;
};

std::string chart_name(Chart c);
Chart chart_from_name(const std::string &name);
std::string to_string(const Space &s);

enum class Sort { z, zb, q, p, a, b };

// A coordinate function; index is 1-based.
struct Var {
    Sort sort;
    int index;

    friend bool operator==(const Var &, const Var &) = default;
};

// Exponent slot of a variable: first sort at [0,n), second sort at [n,2n).
int slot_of(const Space &s, Var v);
Var var_at(const Space &s, int slot);
// "z", "zb2", "q", "p1", ... (the index is omitted when n == 1).
std::string var_name(const Space &s, int slot);

// Exponent vector of length 2n.
using Monomial = std::vector<int>;

int total_degree(const Monomial &m);

// Global monomial order: total degree ascending, then lexicographically
// descending exponents (so z precedes zb, z^2 precedes z*zb).
struct MonomialLess {
    bool operator()(const Monomial &a, const Monomial &b) const;
};

// Multivariate polynomial over Scalar with no stored zero coefficients.
class Poly {
public:
    using Terms = std::map<Monomial, Scalar, MonomialLess>;

    Poly() = default;
    explicit Poly(Space s) : space_(s) {}

    static Poly constant(Space s, const Scalar &c);
    static Poly monomial(Space s, Monomial m, const Scalar &c = Scalar(1));
    static Poly variable(Space s, Var v);

    const Space &space() const noexcept { return space_; }
    const Terms &terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    // -1 for the zero polynomial.
    int total_degree() const;
    int degree_in(int slot) const;
    Scalar coeff(const Monomial &m) const;

    void add_term(const Monomial &m, const Scalar &c);

    Poly &operator+=(const Poly &o);
    Poly &operator-=(const Poly &o);
    friend Poly operator+(Poly a, const Poly &b) { return a += b; }
    friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
    Poly operator-() const;
    // Pointwise (commutative) product.
    friend Poly operator*(const Poly &a, const Poly &b);
    friend Poly operator*(const Poly &a, const Scalar &c);
    friend Poly operator*(const Scalar &c, const Poly &a) { return a * c; }

    // k-fold partial derivative in one exponent slot.
    Poly diff(int slot, int k = 1) const;
    Poly diff(Var v, int k = 1) const { return diff(slot_of(space_, v), k); }
    // Mixed partial derivative given as a multi-index over all slots.
    Poly diff(const Monomial &orders) const;

    // Constant term (evaluation at the origin).
    Scalar eval_origin() const;
    // *-involution: conjugate coefficients, swap z_k <-> zb_k in the complex chart.
    Poly star() const;
    // Restriction to the zero section p = 0 (phase-space chart).
    Poly zero_section() const;

    friend bool operator==(const Poly &a, const Poly &b)
    {
        return a.space_ == b.space_ && a.terms_ == b.terms_;
    }

private:
    void require_same_space(const Poly &o, const char *what) const;

    Space space_;
    Terms terms_;
};

// Monomials of total degree <= d in the global order.
std::vector<Monomial> monomial_basis(const Space &s, int d);
std::vector<Poly> monomial_basis_polys(const Space &s, int d);

using SeriesPoly = Series<Poly>;

SeriesPoly series_poly(int order, const Poly &p);
SeriesPoly zero_series_poly(int order, const Space &s);
// *-involution extended anti-linearly (l fixed).
SeriesPoly star(const SeriesPoly &f);
// Product of a polynomial series by a scalar series.
SeriesPoly scale(const SeriesPoly &f, const ScalarSeries &s);
// Coefficient-wise pointwise product.
SeriesPoly pointwise(const SeriesPoly &f, const SeriesPoly &g);
ScalarSeries eval_origin(const SeriesPoly &f);
int total_degree(const SeriesPoly &f);
const Space &space_of(const SeriesPoly &f);
SeriesPoly diff(const SeriesPoly &f, int slot, int k = 1);

// n! as an exact rational.
Rational factorial(int n);

} // namespace starlab
