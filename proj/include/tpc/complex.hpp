#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tpc/field.hpp"
#include "tpc/real.hpp"

namespace tpc {

struct Generator {
    std::string id;
    int degree = 0;
    Real filt;
    friend bool operator==(const Generator&, const Generator&) = default;
};

/// Finite filtered cochain complex: the differential raises degree by one and
/// never raises the filtration level. Column j of `boundary` is d(generators[j]).
struct FilteredComplex {
    Scalar p = 2;
    std::vector<Generator> generators;
    SparseMatrix boundary;

    std::size_t size() const { return generators.size(); }
    bool empty() const { return generators.empty(); }
    PrimeField field() const { return PrimeField(p); }
    std::optional<std::size_t> find(std::string_view id) const;

    friend bool operator==(const FilteredComplex&, const FilteredComplex&) = default;
};

struct Diagnostic {
    std::string code;
    std::string message;
};

struct BoundaryTerm {
    std::string from;
    std::string to;
    long long coeff = 1;
};

/// Builds a complex from id-addressed boundary terms. Throws on unknown ids.
FilteredComplex make_complex(std::vector<Generator> gens, const std::vector<BoundaryTerm>& terms, Scalar p = 2);

/// Codes: "characteristic", "duplicate-id", "shape", "degree", "filtration", "d-squared".
std::vector<Diagnostic> validate(const FilteredComplex& c);

FilteredComplex zero_complex(Scalar p = 2);
FilteredComplex shift(const FilteredComplex& c, const Real& r);
/// Degrees drop by k and the differential picks up the sign (-1)^k.
FilteredComplex translate(const FilteredComplex& c, int k);
/// Ids become "L.<id>" and "R.<id>"; a sum with the zero complex returns the other operand.
FilteredComplex direct_sum(const FilteredComplex& a, const FilteredComplex& b);
/// Prefixes every id.
FilteredComplex relabel(const FilteredComplex& c, const std::string& prefix);

/// One closed generator "x" at level a.
FilteredComplex interval_e1(const Real& a, int degree = 0, Scalar p = 2);
/// y (degree `degree`, level c) and x (degree `degree`+1, level d) with dy = kappa x.
FilteredComplex interval_e2(const Real& c, const Real& d, int degree = 0, Scalar kappa = 1, Scalar p = 2);

/// Generator indices sorted by (degree, filt, id).
std::vector<std::size_t> canonical_order(const FilteredComplex& c);

}  // namespace tpc
