#pragma once

#include "starlab/matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace starlab {

// Outcome of the positivity decision for a Hermitian matrix over C[[l]]
// truncated at order N. "psd" always means psd up to order N.
struct PsdVerdict {
    bool psd = true;
    int order = 0;

    // Certificate: T* G T = diag(d) and G = L* diag(d) L, both mod l^(N+1).
    // Pivots are listed in elimination order with their diagonal values;
    // zero_directions are the indices left over once the active block
    // vanished.
    std::vector<std::size_t> pivots;
    SeriesVector diagonal;
    std::vector<std::size_t> zero_directions;
    SeriesMatrix t;
    SeriesMatrix l;

    // Indefinite case: w* G w == witness_value, a lex-negative real series.
    std::optional<SeriesVector> witness;
    std::optional<ScalarSeries> witness_value;
    // l-order at which negativity first shows up.
    std::optional<int> failing_layer;

    std::string status() const;
};

// A Gram form that had to be positive was not; carries the witness.
class IndefiniteForm : public ValidationError {
public:
    IndefiniteForm(const std::string &what, PsdVerdict v);
    const PsdVerdict &verdict() const noexcept { return verdict_; }

private:
    PsdVerdict verdict_;
};

// Throws NotHermitian when g is not Hermitian.
PsdVerdict psd_decide(const SeriesMatrix &g);

// True iff T* G T == diag and L* diag L == G exactly.
bool check_certificate(const SeriesMatrix &g, const PsdVerdict &v);

struct KernelBasis {
    // Reduced echelon form: vectors[k] has a 1 at pivots[k] and 0 at every
    // other pivot; pivots ascend.
    std::vector<SeriesVector> vectors;
    std::vector<std::size_t> pivots;
    // Indices that are not pivots; the canonical complement.
    std::vector<std::size_t> complement;
    // dims_by_order[r]: dimension of the kernel of G mod l^(r+1)
    // (excluding directions that only vanish because of truncation).
    std::vector<std::size_t> dims_by_order;
    // First order from which the dimension no longer changes.
    int stable_from = 0;
};

// Throws ValidationError when g is not psd up to its order.
KernelBasis kernel_extract(const SeriesMatrix &g);
KernelBasis kernel_extract(const SeriesMatrix &g, const PsdVerdict &verdict);

// v* G v.
ScalarSeries quadratic_form(const SeriesMatrix &g, const SeriesVector &v);
// Batched evaluation; the OpenMP version and its serial reference return
// identical results in identical order.
std::vector<ScalarSeries> quadratic_form_batch(const SeriesMatrix &g, const std::vector<SeriesVector> &vs);
std::vector<ScalarSeries> quadratic_form_batch_serial(const SeriesMatrix &g, const std::vector<SeriesVector> &vs);

// Random rational vectors with entries that are series; vector i only
// depends on (seed, i).
std::vector<SeriesVector> random_vectors(std::size_t dim, int order, std::size_t count, std::uint64_t seed);

struct SoundnessReport {
    std::uint64_t seed = 0;
    std::size_t vectors = 0;
    std::size_t violations = 0;
    std::optional<std::size_t> first_violation;
};

// Evaluates count random quadratic forms and counts lex-negative values.
SoundnessReport psd_soundness(const SeriesMatrix &g, std::size_t count, std::uint64_t seed);

// |G_ij|^2 <= G_ii G_jj in the lex order for all i, j. Returns the first
// violating pair, if any.
std::optional<std::pair<std::size_t, std::size_t>> cauchy_schwarz_violation(const SeriesMatrix &g);

// Reduced row echelon kernel of a rational matrix (used for order-0 blocks).
struct ScalarKernel {
    std::vector<ScalarVector> vectors;
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> complement;
};
ScalarKernel scalar_kernel(const ScalarMatrix &a);
std::size_t scalar_rank(const ScalarMatrix &a);

} // namespace starlab
