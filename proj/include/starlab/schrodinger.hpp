#pragma once

#include "starlab/matrix.hpp"
#include "starlab/poly.hpp"
#include "starlab/star.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace starlab {

// Multi-index over the n position variables.
using QIndex = std::vector<int>;

// sum_I a_I(q, l) d^I/dq^I with coefficients to the left. Coefficients are
// polynomial series on the phase-space chart without p-dependence.
class DiffOperator {
public:
    using Terms = std::map<QIndex, SeriesPoly, MonomialLess>;

    DiffOperator(int n, int order);
    static DiffOperator multiplication(const SeriesPoly &a);
    // d/dq^k, k 1-based.
    static DiffOperator derivative(int n, int k, int order);

    int n() const noexcept { return n_; }
    int order() const noexcept { return order_; }
    const Terms &terms() const noexcept { return terms_; }
    Space space() const { return Space{Chart::phase_space, n_}; }

    void add_term(const QIndex &index, const SeriesPoly &coeff);

    SeriesPoly apply(const SeriesPoly &psi) const;
    // this o other, normal ordered by the Leibniz rule.
    DiffOperator compose(const DiffOperator &other) const;

    DiffOperator &operator+=(const DiffOperator &o);
    friend DiffOperator operator+(DiffOperator a, const DiffOperator &b) { return a += b; }
    friend DiffOperator operator-(const DiffOperator &a, const DiffOperator &b);
    DiffOperator scaled(const Scalar &c) const;
    friend bool operator==(const DiffOperator &a, const DiffOperator &b)
    {
        return a.n_ == b.n_ && a.order_ == b.order_ && a.terms_ == b.terms_;
    }

    // "(-1i*l)*d/dq1", "(q)", "(1)*d^2/dq1^2"; zero prints "0".
    std::string to_string() const;

private:
    int n_;
    int order_;
    Terms terms_;
};

// rho(f) psi = i* N (f *_WM pi* psi).
SeriesPoly schrodinger_apply(const SeriesPoly &f, const SeriesPoly &psi);

// The differential operator agreeing with schrodinger_apply(f, .), checked on
// every q-monomial up to (derivative order + validation_extra).
DiffOperator schrodinger_operator(const SeriesPoly &f, int validation_extra = 2);

// i* N f == 0.
bool weyl_gelfand_member(const SeriesPoly &f);

// Adjoint for the flat pairing (integration by parts against d^n q).
DiffOperator formal_adjoint(const DiffOperator &d);
// Adjoint for the pairing with standard Gaussian weight: d/dq^k is replaced
// by (d/dq^k - q^k).
DiffOperator gaussian_adjoint(const DiffOperator &d);
// E[conj(psi) phi] for standard normal q.
ScalarSeries gaussian_pairing(const SeriesPoly &psi, const SeriesPoly &phi);
// Gram matrix of the Gaussian pairing on q-monomials of degree <= d.
ScalarMatrix gaussian_gram(int n, int d);

struct OperatorIdentityCheck {
    std::string name;
    bool pass = true;
    std::size_t samples = 0;
    std::optional<std::size_t> failing_index;
    std::vector<SeriesPoly> witness;
    std::optional<std::string> lhs;
    std::optional<std::string> rhs;
};

// On `count` random pairs (f, g) of degree <= max_degree on phase space R^2n:
// rho(f * g) == rho(f) rho(g), rho(f*) == rho(f)^dagger (flat pairing), and
// <rho(f) psi, phi> == <psi, rho(f)^dagger phi> for the Gaussian pairing on
// random wave functions. Parallel over samples; sample i depends only on
// (seed, i).
std::vector<OperatorIdentityCheck> schrodinger_properties(int n, std::size_t count, int max_degree, int order,
                                                          std::uint64_t seed);

} // namespace starlab
