#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "tpc/persistence.hpp"
#include "tpc/random.hpp"

using namespace tpc;

namespace {

// Dense Gaussian elimination, independent of the library's sparse code.
std::size_t dense_rank(std::vector<std::vector<long long>> m, long long p) {
    auto inv = [p](long long a) {
        long long r = 1, e = p - 2;
        for (a %= p; e; e >>= 1, a = a * a % p)
            if (e & 1) r = r * a % p;
        return r;
    };
    std::size_t rk = 0;
    std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && rk < m.size(); ++c) {
        std::size_t piv = rk;
        while (piv < m.size() && m[piv][c] % p == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rk]);
        long long s = inv(m[rk][c]);
        for (auto& x : m[rk]) x = x * s % p;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rk || m[i][c] % p == 0) continue;
            long long k = m[i][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] = ((m[i][j] - k * m[rk][j]) % p + p) % p;
        }
        ++rk;
    }
    return rk;
}

// dim H^k of the subcomplex at level <= r.
std::size_t betti(const FilteredComplex& c, const Real& r, int k) {
    auto block = [&](int from, int to) {
        std::vector<std::size_t> rows, cols;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c.generators[i].filt > r) continue;
            if (c.generators[i].degree == from) cols.push_back(i);
            if (c.generators[i].degree == to) rows.push_back(i);
        }
        std::vector<std::vector<long long>> m(rows.size(), std::vector<long long>(cols.size()));
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) m[i][j] = c.boundary.at(rows[i], cols[j]);
        return std::make_pair(cols.size(), dense_rank(m, c.p));
    };
    auto [n, out] = block(k, k + 1);
    auto [unused, in] = block(k - 1, k);
    (void)unused;
    return n - out - in;
}

std::size_t bars_alive(const Barcode& b, const Real& r, int k) {
    std::size_t n = 0;
    for (const auto& bar : b.bars) n += bar.degree == k && bar.birth <= r && r < bar.death;
    return n;
}

}  // namespace

TEST_CASE("interval complexes have one bar") {
    auto b = barcode(interval_e2(Real(3), Real(1)));
    REQUIRE(b.bars.size() == 1);
    CHECK(b.bars[0] == Bar{1, Real(1), Real(3)});
    CHECK(barcode(interval_e1(Real(2), 3)).bars == std::vector<Bar>{{3, Real(2), Real::infinity()}});
    CHECK(barcode(interval_e2(Real(1), Real(1))).bars.empty());
}

TEST_CASE("sum of intervals") {
    auto b = barcode(direct_sum(interval_e1(Real(0)), interval_e2(Real(1), Real(0))));
    CHECK(b.bars == std::vector<Bar>{{0, Real(0), Real::infinity()}, {1, Real(0), Real(1)}});
}

TEST_CASE("bar counts agree with a dense rank computation") {
    Rng rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        RandomComplexOptions opts;
        opts.p = trial % 2 ? 3 : 2;
        auto c = random_complex(rng, opts);
        auto b = barcode(c);
        std::set<Real> levels{Real(-1)};
        for (const auto& g : c.generators) levels.insert(g.filt);
        for (const auto& r : levels)
            for (int k = -1; k <= opts.degrees; ++k) {
                CHECK(bars_alive(b, r, k) == betti(c, r, k));
                CHECK(persistence_dims(c, r, k) == betti(c, r, k));
            }
    }
}

TEST_CASE("normal form identities") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto c = random_complex(rng);
        auto nf = normal_form(c);
        CHECK(is_chain_map(nf.to_model));
        CHECK(is_chain_map(nf.from_model));
        CHECK(map_shift(nf.to_model) <= Real(0));
        CHECK(map_shift(nf.from_model) <= Real(0));
        CHECK(map_shift(nf.homotopy) <= Real(0));
        CHECK(compose(nf.from_model, nf.to_model) == identity_map(nf.model));
        CHECK(barcode(nf.model) == nf.bars);
        CHECK(nf.bars == barcode(c));
    }
}

TEST_CASE("bottleneck distance") {
    Barcode a = make_barcode({{1, Real(0), Real(2)}});
    Barcode b = make_barcode({{1, Real(1, 2), Real(5, 2)}});
    CHECK(bottleneck(a, b) == Real(1, 2));
    CHECK(bottleneck(a, Barcode{}) == Real(4));
    CHECK(bottleneck(a, Barcode{}, DeletionRule::Conventional) == Real(1));
    Barcode e0 = make_barcode({{0, Real(0), Real::infinity()}});
    Barcode e1 = make_barcode({{0, Real(1), Real::infinity()}});
    CHECK(bottleneck(e0, e1) == Real(1));
    CHECK(bottleneck(e0, Barcode{}) == Real::infinity());
    CHECK(bottleneck(e0, a).is_pos_inf());
    auto m = bottleneck_matching(a, b);
    CHECK(m.cost == Real(1, 2));
    CHECK(m.pairs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}});
    CHECK(bottleneck_matching(e0, Barcode{}).pairs.empty());
}

TEST_CASE("conventional bottleneck is a metric on random barcodes") {
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_barcode(rng, 4, 1);
        auto b = random_barcode(rng, 4, 1);
        auto c = random_barcode(rng, 4, 1);
        auto d = [](const Barcode& x, const Barcode& y) { return bottleneck(x, y, DeletionRule::Conventional); };
        CHECK(d(a, a) == Real(0));
        CHECK(d(a, b) == d(b, a));
        CHECK(d(a, c) <= d(a, b) + d(b, c));
        CHECK(bottleneck(a, b) == bottleneck(b, a));
    }
}

TEST_CASE("strict deletion rule breaks the triangle inequality") {
    Barcode a = make_barcode({{1, Real(0), Real(2)}});
    Barcode b = make_barcode({{1, Real(3, 4), Real(5, 4)}});
    CHECK(bottleneck(a, b) == Real(3, 4));
    CHECK(bottleneck(b, Barcode{}) == Real(1));
    CHECK(bottleneck(a, Barcode{}) == Real(4));
}

TEST_CASE("interleaving of intervals") {
    CHECK(interleaving(interval_e1(Real(0)), interval_e1(Real(1))) == Real(1));
    CHECK(interleaving(interval_e2(Real(2), Real(0)), interval_e2(Real(5, 2), Real(1, 2))) == Real(1, 2));
    CHECK(interleaving(interval_e2(Real(2), Real(0)), zero_complex()) == Real(1));
}

TEST_CASE("interval model") {
    Barcode b = make_barcode({{0, Real(0), Real::infinity()}, {1, Real(1), Real(3)}});
    auto m = interval_model(b);
    CHECK(m.size() == 3);
    CHECK(m.find("I0.e"));
    CHECK(barcode(m) == b);
}
