#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tpc/morphisms.hpp"

namespace tpc {

struct Acyclicity {
    Real barcode;   // longest finite bar, +inf with an infinite bar, 0 for no bars
    Real homotopy;  // least s with id ~_s 0, clamped below at 0
};

Acyclicity acyclicity_bound(const FilteredComplex& k);
/// Longest bar of the complex (the barcode route only).
Real acyclicity(const FilteredComplex& k);
/// Least r for which f is an r-isomorphism: the acyclicity of its cone.
Real iso_defect(const ChainMap& f);

/// psi: shift(target, r) -> source with f o psi ~_0 eta.
std::optional<ChainMap> right_inverse(const ChainMap& f, const Real& r);
/// psi: target -> shift(source, -r) with psi o f ~_0 eta.
std::optional<ChainMap> left_inverse(const ChainMap& f, const Real& r);

/// Drops maps that are combinations of earlier ones up to homotopy of
/// shift <= 0. All maps share endpoints and have degree 0.
std::vector<ChainMap> independent_classes(const std::vector<ChainMap>& maps);

struct IsoSearch {
    Real defect;
    Real k;
    ChainMap map;      // shift(xp, k) -> y
    bool exhaustive;   // false when only a reduced candidate set was tried
};

/// Minimises iso_defect over maps shift(xp, k) -> y of shift <= 0, k ranging
/// over `shifts`. Throws BudgetExceeded when the enumeration would exceed
/// `budget` maps, unless `heuristic` allows falling back to basis maps.
std::optional<IsoSearch> min_r_iso(const FilteredComplex& xp, const FilteredComplex& y, const std::vector<Real>& shifts,
                                   std::size_t budget, bool heuristic = false);

/// a -u-> b -v-> c -w-> shift(translate(a, 1), -weight), with
/// phi: Cone(u) -> c an r-isomorphism and psi: shift(c, weight) -> Cone(u).
struct WeightedTriangle {
    FilteredComplex a, b, c;
    ChainMap u, v, w;
    Real weight;
    ChainMap phi, psi;
};

/// Codes: "object", "map", "shift", "weight", "phi-defect", "phi-psi",
/// "v-square", "w-square". Empty when the triangle is strict exact.
std::vector<Diagnostic> verify_triangle(const WeightedTriangle& t);

/// a -> b -> Cone(f) -> Ta with identity witnesses.
WeightedTriangle triangle_from_map(const ChainMap& f);
/// shift(a, r) -> a -> K -> Ta with K the cone of eta and third map 0.
WeightedTriangle eta_triangle(const FilteredComplex& a, const Real& r);
/// Same maps and phi, declared at another weight.
WeightedTriangle with_weight(const WeightedTriangle& t, const Real& r);
/// 0 -> y -> y -> 0 of weight 0.
WeightedTriangle trivial_triangle(const FilteredComplex& y);

/// b -> c -> shift(Ta, -r) -> shift(Tb, -2r) of weight 2r.
WeightedTriangle rotate(const WeightedTriangle& t);

struct Octahedron {
    WeightedTriangle third;   // F -> A -> C of weight 0
    WeightedTriangle fourth;  // TE -> C -> B of weight r + s
};
/// first: E -> F -> X (weight r), second: X -> A -> B (weight s).
Octahedron octahedral(const WeightedTriangle& first, const WeightedTriangle& second);

/// Every object and map translated by k; the witnesses absorb the sign
/// change on the cone.
WeightedTriangle translate_triangle(const WeightedTriangle& t, int k);

/// Componentwise sum; weight max of the two.
WeightedTriangle sum_triangles(const WeightedTriangle& x, const WeightedTriangle& y);

/// Triangle of maps between named complexes whose shifts are unconstrained.
struct LooseTriangle {
    FilteredComplex a, b, c;
    ChainMap u, v, w;  // w: c -> translate(a, 1)
};

struct WeightCertificate {
    Real upper = Real::infinity();
    Real p, q, s;
    std::optional<WeightedTriangle> witness;
    std::optional<Real> lower_unstable;
    std::optional<Real> lower_stable;
    std::string obstruction;
    bool budget_hit = false;
};

/// Bounded search for a strict exact representative of weight <= r over
/// shift(a, p) -> shift(b, -q) -> shift(c, -s) with 0 <= q <= s <= weight.
/// p stays 0 unless `stable`. Lower bounds come only from the identity
/// obstructions.
WeightCertificate certify_weight(const LooseTriangle& t, const Real& r, bool stable, std::size_t budget);

/// r when y equals x with every level raised by r.
std::optional<Real> uniform_shift(const FilteredComplex& x, const FilteredComplex& y);

}  // namespace tpc
