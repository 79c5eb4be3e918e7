#include "tpc/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tpc/morphisms.hpp"

namespace tpc {

namespace {

// Plain modulo and bit extraction keep the streams identical across standard libraries.
std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

double unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Real level(Rng& rng, int steps) { return Real(static_cast<long long>(pick(rng, static_cast<std::size_t>(steps) + 1)), 2); }

}  // namespace

FilteredComplex scramble(const FilteredComplex& c, Rng& rng, std::size_t steps) {
    const std::size_t n = c.size();
    PrimeField fld(c.p);
    std::vector<std::vector<Scalar>> d(n, std::vector<Scalar>(n, 0));
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& e : c.boundary.column(j)) d[e.row][j] = e.value;
    for (std::size_t k = 0; k < steps && n > 1; ++k) {
        std::size_t j = pick(rng, n);
        std::vector<std::size_t> partners;
        for (std::size_t i = 0; i < n; ++i)
            if (i != j && c.generators[i].degree == c.generators[j].degree &&
                !(c.generators[j].filt < c.generators[i].filt))
                partners.push_back(i);
        if (partners.empty()) continue;
        std::size_t i = partners[pick(rng, partners.size())];
        Scalar a = static_cast<Scalar>(1 + pick(rng, c.p - 1));
        // e_j <- e_j + a e_i
        for (std::size_t r = 0; r < n; ++r) d[r][j] = fld.add(d[r][j], fld.mul(a, d[r][i]));
        for (std::size_t col = 0; col < n; ++col) d[i][col] = fld.sub(d[i][col], fld.mul(a, d[j][col]));
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t k = n; k > 1; --k) std::swap(order[k - 1], order[pick(rng, k)]);
    FilteredComplex out;
    out.p = c.p;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& g = c.generators[order[k]];
        out.generators.push_back({"g" + std::to_string(k), g.degree, g.filt});
    }
    out.boundary = SparseMatrix(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (d[order[a]][order[b]]) out.boundary.set(a, b, d[order[a]][order[b]]);
    return out;
}

FilteredComplex random_complex(Rng& rng, const RandomComplexOptions& opts) {
    Barcode b;
    std::size_t target = 1 + pick(rng, opts.max_generators);
    std::size_t used = 0;
    while (used < target) {
        bool finite = opts.degrees > 1 && used + 2 <= target && pick(rng, 3) != 0;
        if (finite) {
            int deg = 1 + static_cast<int>(pick(rng, static_cast<std::size_t>(opts.degrees - 1)));
            Real x = level(rng, opts.level_steps), y = level(rng, opts.level_steps);
            if (y < x) std::swap(x, y);
            b.bars.push_back({deg, x, y});
            used += 2;
        } else {
            int deg = static_cast<int>(pick(rng, static_cast<std::size_t>(opts.degrees)));
            b.bars.push_back({deg, level(rng, opts.level_steps), Real::infinity()});
            used += 1;
        }
    }
    return scramble(interval_model(b, opts.p), rng, opts.mixing);
}

Barcode random_barcode(Rng& rng, std::size_t max_finite, std::size_t essential, int degrees, int level_steps) {
    std::vector<Bar> bars;
    std::size_t finite = pick(rng, max_finite + 1);
    for (std::size_t i = 0; i < finite; ++i) {
        Real x = level(rng, level_steps), y = level(rng, level_steps);
        if (y < x) std::swap(x, y);
        if (x == y) y = x + Real(1, 2);
        bars.push_back({static_cast<int>(pick(rng, static_cast<std::size_t>(degrees))), x, y});
    }
    for (std::size_t i = 0; i < essential; ++i)
        bars.push_back({static_cast<int>(pick(rng, static_cast<std::size_t>(degrees))), level(rng, level_steps),
                        Real::infinity()});
    return make_barcode(std::move(bars));
}

ChainMap random_chain_map(Rng& rng, const FilteredComplex& x, const FilteredComplex& y, const Real& level) {
    auto classes = chain_map_classes(x, y, level);
    auto f = zero_map(x, y);
    for (const auto& g : classes) {
        Scalar a = static_cast<Scalar>(pick(rng, x.p));
        if (a) f = add_maps(f, g, a);
    }
    return f;
}

FiniteMetricSpace random_metric(Rng& rng, std::size_t n) {
    std::vector<std::pair<double, double>> pts(n);
    for (auto& q : pts) {
        q.first = unit(rng);
        q.second = unit(rng);
    }
    FiniteMetricSpace m;
    for (std::size_t i = 0; i < n; ++i) m.ids.push_back("p" + std::to_string(i));
    m.dist.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.dist[i][j] = std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second);
    return m;
}

}  // namespace tpc
