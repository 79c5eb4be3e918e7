#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tpc/chain_map.hpp"

namespace tpc {

struct Simplex {
    std::vector<std::string> verts;
    std::optional<Real> filt;
};

struct SimplicialComplex {
    std::vector<Simplex> simplices;
};

/// Codes: "empty-simplex", "repeated-vertex", "duplicate", "missing-face".
std::vector<Diagnostic> validate_simplicial(const SimplicialComplex& k);

/// Reduced chains of K filtered by sublevels: a simplex sits at its own
/// `filt` when given, otherwise at the largest value of f on its vertices.
/// A simplex of dimension n lives in degree -n; vertex v stands for v - v0
/// with v0 the lowest vertex. Throws std::invalid_argument when a
/// level is missing or a face sits above a coface.
FilteredComplex sublevel_complex(const SimplicialComplex& k, const std::map<std::string, Real>& f, Scalar p = 2);

struct FiniteMetricSpace {
    std::vector<std::string> ids;
    std::vector<std::vector<double>> dist;

    std::size_t size() const { return ids.size(); }
    double diameter() const;
};

/// Codes: "shape", "diagonal", "symmetry", "negative", "positivity", "triangle".
std::vector<Diagnostic> validate_metric(const FiniteMetricSpace& m, double tol = 1e-12);

/// Point i goes to image[i].
struct MetricMap {
    FiniteMetricSpace source, target;
    std::vector<std::size_t> image;
};

/// log of the Lipschitz constant, rounded up to 1e-12; -inf for a constant map.
Real lipschitz_shift(const MetricMap& u);

/// Same points, distances multiplied by e^s.
FiniteMetricSpace rescale(const FiniteMetricSpace& a, double s);

/// Points (x, t) for t in the grid, all t = 0 collapsed to "apex".
/// d = (D/2)|t - t'| + min(t, t') d(x, y) with D the diameter.
FiniteMetricSpace metric_cone(const FiniteMetricSpace& a, const std::vector<double>& t_grid);

/// Points (x, t) for t in [-1/2, 1/2], the ends collapsed to "south" and "north".
/// d = (D/2)|t - t'| + min(1/2 - |t|, 1/2 - |t'|) d(x, y).
FiniteMetricSpace metric_suspension(const FiniteMetricSpace& a, const std::vector<double>& t_grid);

/// B together with (x, t), 0 < t <= 1, glued to u(x) at t = 0 and collapsed
/// to "apex" at t = 1. The distance is the sum of the cone distance of the
/// images (u(x), 1 - t) in the cone on B and the suspension distance of
/// (x, t - 1/2), with B sent to the south pole.
FiniteMetricSpace metric_mapping_cone(const MetricMap& u, const std::vector<double>& t_grid);

/// Full simplicial complex up to `max_dim` on the points, a simplex of
/// positive dimension at log of its diameter (rounded down to 1e-12) and
/// every vertex at `floor`. Reduced as in sublevel_complex. Without a floor,
/// the integer part of the least edge level minus one is used.
FilteredComplex diameter_filtered_complex(const FiniteMetricSpace& a, int max_dim,
                                          std::optional<Real> floor = std::nullopt, Scalar p = 2);

/// Chain map induced by u between two diameter complexes: a simplex goes to
/// its image simplex, or to 0 when two vertices collide.
ChainMap induced_map(const MetricMap& u, const FilteredComplex& source, const FilteredComplex& target);

/// map_shift restricted to source generators strictly above `floor`.
Real shift_above(const ChainMap& f, const Real& floor);

}  // namespace tpc
