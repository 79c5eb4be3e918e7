#pragma once

#include <random>

#include "tpc/ingestion.hpp"
#include "tpc/persistence.hpp"

namespace tpc {

using Rng = std::mt19937_64;

struct RandomComplexOptions {
    std::size_t max_generators = 12;
    int degrees = 4;          // generators live in degrees 0 .. degrees-1
    int level_steps = 10;     // levels are multiples of 1/2 in [0, level_steps/2]
    Scalar p = 2;
    std::size_t mixing = 48;  // elementary basis changes
};

/// A sum of interval complexes hidden behind filtration-preserving basis
/// changes and a shuffled, renamed generator order.
FilteredComplex random_complex(Rng& rng, const RandomComplexOptions& opts = {});

/// Filtration-preserving elementary basis changes followed by a shuffle.
FilteredComplex scramble(const FilteredComplex& c, Rng& rng, std::size_t steps);

/// Up to `max_finite` finite bars and exactly `essential` infinite ones,
/// levels multiples of 1/2 in [0, level_steps/2], degrees 0 .. degrees-1.
Barcode random_barcode(Rng& rng, std::size_t max_finite, std::size_t essential, int degrees = 2, int level_steps = 10);

/// Random combination of representatives of maps of shift <= level.
ChainMap random_chain_map(Rng& rng, const FilteredComplex& x, const FilteredComplex& y, const Real& level);

/// n points in the unit square with the Euclidean distance.
FiniteMetricSpace random_metric(Rng& rng, std::size_t n);

}  // namespace tpc
