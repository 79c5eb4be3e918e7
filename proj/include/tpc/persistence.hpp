#pragma once

#include <utility>
#include <vector>

#include "tpc/chain_map.hpp"

namespace tpc {

struct Bar {
    int degree = 0;
    Real birth;
    Real death;  // +inf for essential classes
    friend bool operator==(const Bar&, const Bar&) = default;
    friend auto operator<=>(const Bar&, const Bar&) = default;
};

/// Sorted by (degree, birth, death). Zero-length bars never appear.
struct Barcode {
    std::vector<Bar> bars;
    friend bool operator==(const Barcode&, const Barcode&) = default;

    std::size_t count_at(const Real& r, int degree) const;
    std::vector<int> degrees() const;
    Barcode in_degree(int degree) const;
    Barcode shifted(const Real& r) const;
};

Barcode make_barcode(std::vector<Bar> bars);

/// Basis adapted to the filtration, read off from R = M V in canonical order.
/// Death elements are V_k for a nonzero reduced column k, their Birth
/// partners are R_k = d V_k, and Essential elements are V_j for closed,
/// unpaired j. Each element is supported on its own degree with filtration
/// level equal to that of its lead generator.
struct PersistenceBasis {
    enum class Kind { Birth, Death, Essential };
    struct Element {
        Kind kind;
        std::size_t lead;     // generator index
        std::size_t partner;  // element index of the other end of a pair, or npos
        SparseColumn vector;  // over generator indices
    };
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::vector<Element> elements;
    std::vector<std::size_t> position;  // generator -> canonical position
    std::vector<std::size_t> by_lead;   // generator -> element
    Scalar p = 2;

    /// Coefficients of v in the element basis (dense, one per element).
    std::vector<Scalar> coordinates(const SparseColumn& v) const;
};

PersistenceBasis persistence_basis(const FilteredComplex& c);
Barcode barcode_from_basis(const FilteredComplex& c, const PersistenceBasis& basis);
Barcode barcode(const FilteredComplex& c);

/// dim H^degree(C^{<=r}) by direct rank computation.
std::size_t persistence_dims(const FilteredComplex& c, const Real& r, int degree);

/// N is a sum of interval complexes with ids "I<n>.e" (closed) or
/// "I<n>.y", "I<n>.x" (pair, d y = x). to_model o from_model = id_N and
/// id_C - from_model o to_model = d h + h d.
struct NormalForm {
    Barcode bars;
    FilteredComplex model;
    ChainMap to_model;
    ChainMap from_model;
    ChainMap homotopy;
};

NormalForm normal_form(const FilteredComplex& c);
/// Sum of interval complexes realising a barcode, in the id scheme above.
FilteredComplex interval_model(const Barcode& b, Scalar p = 2);

enum class DeletionRule {
    Strict,        // a bar [c,d) may be left unmatched when 2(d-c) <= tau
    Conventional,  // ... when (d-c) <= 2 tau
};

/// +inf when some degree carries different numbers of infinite bars.
Real bottleneck(const Barcode& a, const Barcode& b, DeletionRule rule = DeletionRule::Strict);

struct BarMatching {
    Real cost;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // indices into the two bar lists
};
/// An optimal matching; bars not listed are left unmatched. No pairs when the
/// cost is infinite.
BarMatching bottleneck_matching(const Barcode& a, const Barcode& b, DeletionRule rule = DeletionRule::Strict);

/// Interleaving distance through normal forms.
Real interleaving(const FilteredComplex& x, const FilteredComplex& y);

}  // namespace tpc
