#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tpc/chain_map.hpp"
#include "tpc/persistence.hpp"

namespace tpc {

/// Raised when an exhaustive search would exceed its enumeration limit.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Morphism complex. The generator for x -> y sits at index
/// (index of x) * |Y| + (index of y), has degree |y| - |x| and level
/// l(y) - l(x); d(f) = d_Y f - (-1)^|f| f d_X.
FilteredComplex hom_complex(const FilteredComplex& x, const FilteredComplex& y);
SparseColumn map_to_hom(const ChainMap& f);
ChainMap hom_to_map(const SparseColumn& v, const FilteredComplex& x, const FilteredComplex& y, int degree);

/// h of degree |f| - 1 with d h - (-1)^|h| h d = f - g and l(h) <= s.
std::optional<ChainMap> find_homotopy(const ChainMap& f, const ChainMap& g, const Real& s);
bool homotopic(const ChainMap& f, const ChainMap& g, const Real& s);
/// Least s with f ~_s g; -inf when f == g, +inf when never.
Real min_homotopy_shift(const ChainMap& f, const ChainMap& g);
/// Every l(y) - l(x) over pairs of generators, sorted.
std::vector<Real> shift_candidates(const FilteredComplex& x, const FilteredComplex& y);

/// Cone(f) = Y + X[1]: generators of Y first (as in direct_sum with
/// translate(X, 1)), d(x[1]) = f(x) - (d x)[1].
struct MappingCone {
    FilteredComplex complex;
    ChainMap incl;  // Y -> Cone(f)
    ChainMap proj;  // Cone(f) -> translate(X, 1)
    std::size_t left_index(std::size_t y) const { return y; }
    std::size_t right_index(std::size_t x) const { return incl.source.size() + x; }
};

/// Requires a degree-0 chain map with l(f) <= 0.
MappingCone cone(const ChainMap& f);

/// Least level at which the colimit class of f is represented; nullopt when
/// that class is zero.
std::optional<Real> spectral_invariant(const ChainMap& f);

/// Representatives of a basis of H^0 of the maps X -> Y of shift <= level.
std::vector<ChainMap> chain_map_classes(const FilteredComplex& x, const FilteredComplex& y, const Real& level);

/// Visits every combination sum c_i maps[i] over the field, starting from
/// `base` if given. Stops early when the visitor returns false. Returns false
/// if the number of combinations exceeds `limit`.
bool for_each_combination(const std::vector<ChainMap>& maps, const ChainMap& base, std::size_t limit,
                          const std::function<bool(const ChainMap&)>& visit);

/// Linear search for a degree-0 chain map X: source -> target with
/// l(X) <= shift, subject to constraints L o X o R ~_s G where L, R are fixed
/// chain maps (identity when absent). Each constraint carries its own
/// homotopy unknowns.
class MapProblem {
public:
    MapProblem(FilteredComplex source, FilteredComplex target, Real shift);

    /// left o X ~_s g
    void require_post(const ChainMap& left, const ChainMap& g, const Real& s);
    /// X o right ~_s g
    void require_pre(const ChainMap& right, const ChainMap& g, const Real& s);
    void require(const std::optional<ChainMap>& left, const std::optional<ChainMap>& right, const ChainMap& g,
                 const Real& s);

    struct Solutions {
        ChainMap particular;
        std::vector<ChainMap> directions;  // independent, spanning the solution set
    };
    std::optional<Solutions> solve() const;

private:
    struct Constraint {
        std::optional<ChainMap> left, right;
        ChainMap g;
        Real s;
    };
    FilteredComplex source_, target_;
    Real shift_;
    std::vector<Constraint> constraints_;
};

/// Smallest r admitting maps X -> Y, Y -> X of shift <= r whose composites
/// are 2r-homotopic to the identities. Exhaustive over homotopy classes,
/// intended for a handful of generators.
Real interleaving_chain_level(const FilteredComplex& x, const FilteredComplex& y, std::size_t limit = 1u << 16);

}  // namespace tpc
