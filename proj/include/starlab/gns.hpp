#pragma once

#include "starlab/functional.hpp"
#include "starlab/matrix.hpp"
#include "starlab/psd.hpp"
#include "starlab/star.hpp"

#include <optional>
#include <string>
#include <vector>

namespace starlab {

// One filtration level H^(L) of a presentation: the quotient of the
// polynomials of degree <= L by the Gel'fand ideal.
struct RepLevel {
    std::vector<std::string> labels;
    // Compressed Gram form on the quotient basis.
    SeriesMatrix gram;
};

// Finite presentation of a representation on a filtered pre-Hilbert module.
// Operators map level L to level L + deg f; inclusions map L to L + 1.
struct RepPresentation {
    Space space;
    std::string functional;
    std::string generator;
    int degree = 0;  // nominal level d
    int top = 0;     // highest level carried
    int order = 0;

    std::vector<RepLevel> levels;             // 0..top
    std::vector<SeriesMatrix> inclusions;     // inclusions[L]: L -> L+1
    SeriesVector cyclic;                      // psi_1 at level 0
    std::vector<SeriesPoly> observables;
    std::vector<int> observable_degrees;
    // operators[i][L] for L + deg f_i <= top.
    std::vector<std::vector<SeriesMatrix>> operators;

    std::size_t dim(int level) const { return levels.at(static_cast<std::size_t>(level)).labels.size(); }
    // Composite inclusion from level `from` to level `to` >= from.
    SeriesMatrix inclusion(int from, int to) const;
    const SeriesMatrix &op(std::size_t index, int from) const;

    // Zero module with the same shape metadata.
    static RepPresentation zero(const Space &space, int degree, int top, int order,
                                std::vector<SeriesPoly> observables);
};

// GNS data with the ideal information needed to reduce new vectors.
class GnsConstruction {
public:
    struct Level {
        std::vector<Monomial> basis;
        KernelBasis kernel;
    };

    // Builds levels 0..top from the Gram form at degree `top`.
    GnsConstruction(const Functional &w, const BidiffGenerator &gen, int degree, int top, int order);

    const Functional &functional() const noexcept { return w_; }
    const BidiffGenerator &generator() const noexcept { return gen_; }
    const GramForm &gram() const noexcept { return gram_; }
    const PsdVerdict &verdict() const noexcept { return verdict_; }
    const Level &level(int l) const { return levels_.at(static_cast<std::size_t>(l)); }
    int degree() const noexcept { return degree_; }
    int top() const noexcept { return top_; }
    int order() const noexcept { return order_; }

    // Monomial coordinates of f at level l (deg f <= l).
    SeriesVector coordinates(const SeriesPoly &f, int l) const;
    // Quotient coordinates of a monomial-coordinate vector at level l.
    SeriesVector reduce(const SeriesVector &x, int l) const;
    SeriesVector reduce(const SeriesPoly &f, int l) const { return reduce(coordinates(f, l), l); }
    // pi(f) as a matrix from level `from` to level from + deg f.
    SeriesMatrix operator_matrix(const SeriesPoly &f, int from) const;
    // Gel'fand ideal at level l as polynomial series.
    std::vector<SeriesPoly> ideal(int l) const;
    // Each level's kernel sits inside the top-level kernel.
    bool kernels_nested() const;

    RepPresentation presentation(const std::vector<SeriesPoly> &observables) const;

private:
    Functional w_;
    BidiffGenerator gen_;
    int degree_;
    int top_;
    int order_;
    GramForm gram_;
    PsdVerdict verdict_;
    std::vector<Level> levels_;
};

struct IdealCheck {
    bool pass = true;
    std::size_t samples = 0;
    std::optional<SeriesPoly> element;
    std::optional<SeriesPoly> multiplier;
    std::optional<ScalarSeries> value;
};

struct GelfandIdeal {
    std::vector<SeriesPoly> basis;
    IdealCheck left_ideal;
};

// Kernel of the degree-d Gram form as polynomials, with the left-ideal spot
// check omega((a * j)* * (a * j)) == 0 for a in {1, coordinates}.
GelfandIdeal gelfand_ideal_basis(const Functional &w, const BidiffGenerator &gen, int d, int order);

struct GnsChecks {
    bool state_identity = true;
    bool star_compatible = true;
    bool representation = true;
    bool kernels_nested = true;
    std::vector<std::string> failures;
    bool pass() const { return state_identity && star_compatible && representation && kernels_nested; }
};

struct GnsResult {
    RepPresentation rep;
    GnsChecks checks;
};

// Operators need level d + deg f, so the top level is d + max deg f (and at
// least d + 1). Throws ValidationError on an indefinite Gram form.
GnsResult gns_build(const Functional &w, const BidiffGenerator &gen, int d, int order,
                    const std::vector<SeriesPoly> &observables);
GnsChecks validate_gns(const GnsConstruction &g, const RepPresentation &rep);

struct ClassicalLimitResult {
    // projections[L]: deformed quotient coordinates at level L -> classical
    // coordinates (evaluated at l = 0, then reduced modulo H0).
    std::vector<ScalarMatrix> projections;
    std::vector<std::vector<ScalarVector>> h0;
    std::vector<std::vector<std::size_t>> representatives;
    // Classical presentation at order 0.
    RepPresentation classical;
    bool functor_laws = true;
    bool inner_products = true;
    std::vector<std::string> failures;
};

ClassicalLimitResult classical_limit(const RepPresentation &p);

struct ResidualCheck {
    std::string name;
    bool pass = true;
    // Non-zero residual entries, printed exactly; empty when pass.
    std::vector<std::string> residuals;
    std::size_t evaluated = 0;
};

struct TheoremReport {
    std::vector<ResidualCheck> checks;
    std::vector<ScalarMatrix> intertwiner;  // U_L per level
    std::vector<std::size_t> classical_limit_dims;
    std::vector<std::size_t> classical_gns_dims;
    bool pass() const;
};

// Compares the classical limit of the GNS representation of w (deformed
// product) with the GNS representation of its order-0 part under the
// pointwise product, via U: c(psi_A) -> psi_{A_0}.
TheoremReport verify_main_theorem(const Functional &w, const BidiffGenerator &gen, int d, int order,
                                  const std::vector<SeriesPoly> &observables);

struct NoGoReport {
    int order = 0;
    std::string lhs;
    std::string target;
    // Lowest order at which the constraint reads 0 = non-zero constant.
    std::optional<int> contradiction_order;
};

// pi(z), pi(zb) as series a, b with a_0 = b_0 = 0 on a rank-1 module: ab - ba
// against the target (2l by default).
NoGoReport no_go_certificate(int order, const ScalarSeries &target);
NoGoReport no_go_certificate(int order);

// (pi(f) pi(g) - pi(g) pi(f)) psi_1 at level deg f + deg g.
SeriesVector commutator_on_cyclic(const GnsConstruction &g, const SeriesPoly &f, const SeriesPoly &h);

// Block-diagonal sum. Throws ValidationError on metadata mismatch.
RepPresentation orthogonal_sum(const std::vector<RepPresentation> &ps);
// Exact structural equality (labels excluded).
bool same_matrices(const RepPresentation &a, const RepPresentation &b);

} // namespace starlab
