#pragma once

#include <vector>

#include "tpc/complex.hpp"

namespace tpc {

/// Degree-homogeneous linear map; matrix is target.size() x source.size().
struct ChainMap {
    FilteredComplex source;
    FilteredComplex target;
    int degree = 0;
    SparseMatrix matrix;

    PrimeField field() const { return source.field(); }
    friend bool operator==(const ChainMap&, const ChainMap&) = default;
};

ChainMap identity_map(const FilteredComplex& c);
ChainMap zero_map(const FilteredComplex& source, const FilteredComplex& target, int degree = 0);
/// shift(a, r) -> a, identity on generators.
ChainMap eta_map(const FilteredComplex& a, const Real& r);
/// Same matrix between new endpoints. Generator ids and degrees must agree
/// position by position; only filtration levels may differ.
ChainMap rebase(const ChainMap& f, const FilteredComplex& source, const FilteredComplex& target);

/// max over nonzero entries of filt(target) - filt(source); -inf for zero.
Real map_shift(const ChainMap& f);
/// d_Y f = (-1)^|f| f d_X
bool is_chain_map(const ChainMap& f);
/// Degree bookkeeping and shape checks.
std::vector<Diagnostic> validate_map(const ChainMap& f);

/// g o f. Requires f.target == g.source.
ChainMap compose(const ChainMap& f, const ChainMap& g);
/// f + s g between the same endpoints.
ChainMap add_maps(const ChainMap& f, const ChainMap& g, Scalar s = 1);
ChainMap direct_sum_maps(const ChainMap& f, const ChainMap& g);
ChainMap translate_map(const ChainMap& f, int k);
ChainMap shift_map(const ChainMap& f, const Real& source_shift, const Real& target_shift);

}  // namespace tpc
