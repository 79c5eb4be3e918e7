#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tpc/io.hpp"
#include "tpc/random.hpp"

using namespace tpc;

namespace {
std::string data(const std::string& name) { return std::string(TPC_DATA_DIR) + "/" + name; }
}  // namespace

TEST_CASE("reals") {
    CHECK(to_json(Real(3)) == json(3));
    CHECK(to_json(Real(1, 4)) == json(0.25));
    CHECK(to_json(Real(1, 3)) == json("1/3"));
    CHECK(to_json(Real::infinity()) == json("inf"));
    for (Real r : {Real(3), Real(-1, 4), Real(1, 3), Real::parse("0.1"), Real::infinity(), Real::neg_infinity()})
        CHECK(real_from_json(to_json(r)) == r);
    CHECK(real_from_json(json("2.5")) == Real(5, 2));
    CHECK_THROWS(real_from_json(json::array()));
}

TEST_CASE("dump is sorted and newline terminated") {
    json j{{"b", 1}, {"a", json::array({1, 2})}};
    CHECK(dump(j) == "{\n  \"a\": [\n    1,\n    2\n  ],\n  \"b\": 1\n}\n");
}

TEST_CASE("complex round trip") {
    Rng rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        RandomComplexOptions opts;
        opts.p = trial % 2 ? 5 : 2;
        auto c = random_complex(rng, opts);
        CHECK(complex_from_json(to_json(c)) == c);
        CHECK(complex_from_json(json::parse(dump(to_json(c)))) == c);
    }
    auto e = complex_from_json(read_json(data("e2_3_1.json")));
    CHECK(e == interval_e2(Real(3), Real(1)));
}

TEST_CASE("barcode round trip") {
    Barcode b = make_barcode({{0, Real(0), Real::infinity()}, {1, Real(1, 3), Real(2)}});
    CHECK(barcode_from_json(to_json(b)) == b);
    CHECK(bars_of(to_json(b)) == b);
    CHECK(bars_of(to_json(interval_e2(Real(3), Real(1)))) == make_barcode({{1, Real(1), Real(3)}}));
    CHECK(barcode_csv(make_barcode({{1, Real(1), Real(3)}})) == "deg,birth,death\n1,1,3\n");
}

TEST_CASE("maps and triangles") {
    auto m = map_from_json(read_json(data("map_eta.json")));
    CHECK(is_chain_map(m));
    CHECK(map_shift(m) == Real(-1));
    CHECK(map_from_json(to_json(m)) == m);
    auto t = triangle_from_json(read_json(data("triangle_eta.json")));
    CHECK(t.weight == Real(1));
    CHECK(verify_triangle(t).empty());
    auto again = triangle_from_json(to_json(t));
    CHECK(verify_triangle(again).empty());
    CHECK(again.u == t.u);
    auto loose = loose_triangle_from_json(read_json(data("triangle_rigid.json")));
    CHECK(loose.a.size() > 0);
}

TEST_CASE("decomposition output") {
    auto j = to_json(canonical_decomposition(interval_e1(Real(0))));
    CHECK(j["weight"] == json(0));
    CHECK(j["steps"].size() == 1);
    CHECK(j["comparison"] == json(0));
}

TEST_CASE("csv inputs") {
    auto square = metric_csv(read_file(data("square.csv")));
    CHECK(square.ids == std::vector<std::string>{"p", "q", "r", "s"});
    CHECK(validate_metric(square).empty());
    CHECK(metric_csv(metric_csv(square)).dist == square.dist);
    auto pair = metric_csv(read_file(data("pair.csv")));
    CHECK(point_map_csv(read_file(data("square_to_pair.csv")), square, pair) == std::vector<std::size_t>{0, 1, 0, 1});
    auto values = vertex_values_csv(read_file(data("circle_values.csv")));
    CHECK(values.at("c") == Real(2));
    CHECK(vertex_values_csv("a,0.5\n").at("a") == Real(1, 2));
    CHECK_THROWS_AS(point_map_csv("p,zz\n", square, pair), std::exception);
}

TEST_CASE("simplicial input") {
    auto k = simplicial_from_json(read_json(data("circle.json")));
    CHECK(k.simplices.size() == 6);
    CHECK(k.simplices[5].filt == Real(3));
    CHECK_FALSE(k.simplices[0].filt);
}

TEST_CASE("unreadable input") {
    CHECK_THROWS_AS(read_file(data("missing.json")), InputError);
    CHECK_THROWS_AS(read_json(data("square.csv")), InputError);
}
