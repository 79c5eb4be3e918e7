#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tpc/triangles.hpp"

namespace tpc {

/// One step of an iterated cone decomposition. The triangle lives at chain
/// level; the objects it stands for are X = shift(a, -t),
/// Y_prev = shift(b, q) and Y = shift(c, s), with t >= 0 and
/// 0 <= q <= s <= weight.
struct DecompositionStep {
    WeightedTriangle triangle;
    Real t, q, s;
};

struct ConeDecomposition {
    std::vector<DecompositionStep> steps;
    std::size_t comparison = npos;  // step whose first object is the translated comparison object
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::vector<FilteredComplex> linearization() const;
    FilteredComplex result() const;
};

enum class WeightMode { Persistence, Flat };

/// Sum of step weights, or the number of steps minus one in flat mode.
Real decomposition_weight(const ConeDecomposition& d, WeightMode mode = WeightMode::Persistence);

/// Codes: "empty", "step", "shifts", "start", "chain", "final".
std::vector<Diagnostic> verify_decomposition(const ConeDecomposition& d, const FilteredComplex& result);

/// T^-1 X -> 0 -> X of weight 0.
ConeDecomposition canonical_decomposition(const FilteredComplex& x);

/// Replaces step i by the steps obtained from a decomposition of the object
/// it adds; the weight is the sum of both. Middle and final shifts must be
/// zero throughout.
ConeDecomposition refine(const ConeDecomposition& d, std::size_t i, const ConeDecomposition& inner);

ConeDecomposition translate_decomposition(const ConeDecomposition& d, int k);

/// Decomposes the sum of the two results, pairing the comparison steps,
/// which must be raised by the same shift.
ConeDecomposition sum_decompositions(const ConeDecomposition& x, const ConeDecomposition& y);

/// Cross differences l(x) - l(x') of the generator levels and their
/// midpoints, together with 0 and the negatives of all of these.
std::vector<Real> shift_grid(const FilteredComplex& x, const FilteredComplex& xp);

struct DeltaBound {
    Real value = Real::infinity();
    std::optional<ConeDecomposition> witness;
    std::string route;
    bool exhaustive = true;
};

struct FragOptions {
    std::size_t budget = 1u << 14;  // maps enumerated per search
    bool weight_zero_prefix = false;  // only the last step may carry weight
};

/// Best decomposition of X found whose linearization consists of members of
/// `family` and one copy of T^-1 X' (raised by a nonnegative shift).
DeltaBound delta_upper(const FilteredComplex& x, const FilteredComplex& xp, const std::vector<FilteredComplex>& family,
                       const FragOptions& opts = {});

struct FragReport {
    Real lower;
    Real upper = Real::infinity();
    std::optional<ConeDecomposition> forward;   // decomposes X
    std::optional<ConeDecomposition> backward;  // decomposes X'
    std::vector<Real> grid;
    bool exhaustive = true;
};

/// Interval for the symmetrised fragmentation distance. Lower bounds are
/// only produced when the family is {0}.
FragReport frag_pseudometric(const FilteredComplex& x, const FilteredComplex& xp,
                             const std::vector<FilteredComplex>& family, const FragOptions& opts = {});

/// Shift-invariant interleaving distance: the least bottleneck over shifts.
Real interleaving_shift_invariant(const FilteredComplex& x, const FilteredComplex& y);

struct ShiftInvariantReport {
    Real lower;
    Real upper = Real::infinity();
    Real shift;  // attaining the upper bound
    std::vector<Real> grid;
};

/// Infimum over the grid of metric(shift(x, r), y); the lower end is 0
/// unless `lower_fn` supplies a valid bound.
ShiftInvariantReport shift_invariant(const std::function<Real(const FilteredComplex&, const FilteredComplex&)>& metric,
                                     const FilteredComplex& x, const FilteredComplex& y, const std::vector<Real>& grid);

/// Shift-invariant fragmentation distance for the family {0}.
ShiftInvariantReport frag_shift_invariant(const FilteredComplex& x, const FilteredComplex& y, const FragOptions& opts = {});

/// Decompositions of Y with the weight carried by the last step only, the
/// comparison object X raised or lowered freely.
ShiftInvariantReport q_estimate(const FilteredComplex& y, const FilteredComplex& x,
                                const std::vector<FilteredComplex>& family, const FragOptions& opts = {});

struct Prop1Report {
    Real bound = Real::infinity();  // max of the two witness weights
    Real bottleneck;                // strict rule
    Real constant;                  // 4 min(#B(X), #B(Y)) + 1
    std::optional<ConeDecomposition> forward, backward;
    std::vector<std::pair<std::size_t, std::size_t>> matching;
};

/// Decompositions in both directions built from an optimal bar matching.
Prop1Report prop1_bound(const FilteredComplex& x, const FilteredComplex& y);

}  // namespace tpc
