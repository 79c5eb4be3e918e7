#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "tpc/ingestion.hpp"
#include "tpc/persistence.hpp"
#include "tpc/random.hpp"

using namespace tpc;

namespace {

bool has_code(const std::vector<Diagnostic>& ds, const std::string& code) {
    for (const auto& d : ds)
        if (d.code == code) return true;
    return false;
}

SimplicialComplex circle() {
    return {{{{"a"}, {}}, {{"b"}, {}}, {{"c"}, {}}, {{"a", "b"}, {}}, {{"b", "c"}, {}}, {{"a", "c"}, Real(3)}}};
}

// Full 2-skeleton on n vertices.
SimplicialComplex full(std::size_t n) {
    SimplicialComplex k;
    auto name = [](std::size_t i) { return std::string(1, static_cast<char>('a' + i)); };
    for (std::size_t i = 0; i < n; ++i) {
        k.simplices.push_back({{name(i)}, {}});
        for (std::size_t j = i + 1; j < n; ++j) {
            k.simplices.push_back({{name(i), name(j)}, {}});
            for (std::size_t l = j + 1; l < n; ++l) k.simplices.push_back({{name(i), name(j), name(l)}, {}});
        }
    }
    return k;
}

FiniteMetricSpace two_points(double d) { return {{"p", "q"}, {{0, d}, {d, 0}}}; }

double dist(const FiniteMetricSpace& m, const std::string& a, const std::string& b) {
    auto i = std::find(m.ids.begin(), m.ids.end(), a) - m.ids.begin();
    auto j = std::find(m.ids.begin(), m.ids.end(), b) - m.ids.begin();
    REQUIRE(static_cast<std::size_t>(i) < m.size());
    REQUIRE(static_cast<std::size_t>(j) < m.size());
    return m.dist[i][j];
}

}  // namespace

TEST_CASE("simplicial validation") {
    CHECK(validate_simplicial(circle()).empty());
    CHECK(has_code(validate_simplicial({{{{"a", "b"}, {}}}}), "missing-face"));
    CHECK(has_code(validate_simplicial({{{{"a", "a"}, {}}}}), "repeated-vertex"));
    CHECK(has_code(validate_simplicial({{{{"a"}, {}}, {{"a"}, {}}}}), "duplicate"));
    CHECK(has_code(validate_simplicial({{{{}, {}}}}), "empty-simplex"));
}

TEST_CASE("sublevel filtration of a circle") {
    std::map<std::string, Real> f{{"a", Real(0)}, {"b", Real(1)}, {"c", Real(2)}};
    auto c = sublevel_complex(circle(), f);
    CHECK(validate(c).empty());
    CHECK(c.size() == 5);
    CHECK_FALSE(c.find("a"));
    CHECK(c.generators[*c.find("a,c")].filt == Real(3));
    CHECK(c.generators[*c.find("b,c")].filt == Real(2));
    CHECK(c.generators[*c.find("a,b")].degree == -1);
    CHECK(barcode(c).bars == std::vector<Bar>{{-1, Real(3), Real::infinity()}});
}

TEST_CASE("sublevel filtration of an edge") {
    SimplicialComplex edge{{{{"u"}, {}}, {{"v"}, {}}, {{"u", "v"}, {}}}};
    auto c = sublevel_complex(edge, {{"u", Real(0)}, {"v", Real(0)}, {"u,v", Real(0)}});
    CHECK(barcode(c).bars.empty());
    SimplicialComplex late{{{{"u"}, {}}, {{"v"}, {}}, {{"u", "v"}, Real(1)}}};
    CHECK(barcode(sublevel_complex(late, {{"u", Real(0)}, {"v", Real(0)}})).bars ==
          std::vector<Bar>{{0, Real(0), Real(1)}});
    CHECK_THROWS(sublevel_complex(edge, {{"u", Real(0)}}));
    SimplicialComplex early{{{{"u"}, {}}, {{"v"}, {}}, {{"u", "v"}, Real(-1)}}};
    CHECK_THROWS(sublevel_complex(early, {{"u", Real(0)}, {"v", Real(0)}}));
}

TEST_CASE("sublevel barcodes are stable") {
    Rng rng(2024);
    auto k = full(5);
    for (int trial = 0; trial < 30; ++trial) {
        std::map<std::string, Real> f, g;
        Real sup(0);
        for (char v = 'a'; v < 'f'; ++v) {
            Real x(static_cast<long long>(rng() % 20), 2);
            Real y = x + Real(static_cast<long long>(rng() % 7) - 3, 4);
            f[std::string(1, v)] = x;
            g[std::string(1, v)] = y;
            sup = max(sup, (x - y).abs());
        }
        auto bf = barcode(sublevel_complex(k, f)), bg = barcode(sublevel_complex(k, g));
        CHECK(bottleneck(bf, bg, DeletionRule::Conventional) <= sup);
    }
}

TEST_CASE("metric validation") {
    CHECK(validate_metric(two_points(1)).empty());
    FiniteMetricSpace bad{{"a", "b", "c"}, {{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}};
    CHECK(has_code(validate_metric(bad), "triangle"));
    FiniteMetricSpace lopsided{{"a", "b"}, {{0, 1}, {2, 0}}};
    CHECK(has_code(validate_metric(lopsided), "symmetry"));
    FiniteMetricSpace merged{{"a", "b"}, {{0, 0}, {0, 0}}};
    CHECK(has_code(validate_metric(merged), "positivity"));
    CHECK(two_points(3).diameter() == 3);
}

TEST_CASE("cone and suspension distances") {
    auto c = metric_cone(two_points(2), {0, 1});
    CHECK(c.size() == 3);
    CHECK(validate_metric(c).empty());
    CHECK(dist(c, "apex", "p@1") == doctest::Approx(1));
    CHECK(dist(c, "p@1", "q@1") == doctest::Approx(2));
    auto s = metric_suspension(two_points(2), {-0.5, 0, 0.5});
    CHECK(s.size() == 4);
    CHECK(validate_metric(s).empty());
    CHECK(dist(s, "south", "north") == doctest::Approx(1));
    CHECK(dist(s, "p@0", "q@0") == doctest::Approx(1));
    CHECK(dist(s, "south", "p@0") == doctest::Approx(0.5));
    auto r = rescale(two_points(2), std::log(3.0));
    CHECK(r.dist[0][1] == doctest::Approx(6));
}

TEST_CASE("mapping cone is a metric") {
    Rng rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        auto a = random_metric(rng, 4), b = random_metric(rng, 3);
        std::vector<std::size_t> image;
        for (std::size_t i = 0; i < a.size(); ++i) image.push_back(rng() % b.size());
        auto m = metric_mapping_cone({a, b, image}, {0, 0.5, 1});
        CHECK(validate_metric(m, 1e-12).empty());
        CHECK(std::count(m.ids.begin(), m.ids.end(), "apex") == 1);
    }
}

TEST_CASE("diameter filtration") {
    auto c = diameter_filtered_complex(two_points(std::exp(1.0)), 1);
    CHECK(barcode(c).bars == std::vector<Bar>{{0, Real(0), Real(1)}});
    auto low = diameter_filtered_complex(two_points(std::exp(1.0)), 1, Real(-2));
    CHECK(barcode(low).bars == std::vector<Bar>{{0, Real(-2), Real(1)}});
    CHECK(validate(c).empty());
}

TEST_CASE("lipschitz shift and induced maps") {
    FiniteMetricSpace square{{"p", "q", "r", "s"},
                             {{0, 1, M_SQRT2, 1}, {1, 0, 1, M_SQRT2}, {M_SQRT2, 1, 0, 1}, {1, M_SQRT2, 1, 0}}};
    FiniteMetricSpace pair = two_points(2);
    MetricMap u{square, pair, {0, 1, 0, 1}};
    Real k = lipschitz_shift(u);
    CHECK(k == Real::parse("0.69314718056"));
    CHECK(lipschitz_shift({square, pair, {0, 0, 0, 0}}).is_neg_inf());
    auto src = diameter_filtered_complex(square, 2, Real(-1));
    auto tgt = shift(diameter_filtered_complex(pair, 2, Real(-1)), -k);
    auto f = induced_map(u, src, tgt);
    CHECK(is_chain_map(f));
    CHECK(shift_above(f, Real(-1)) <= Real(0));
}
