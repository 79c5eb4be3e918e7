#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tpc/complex.hpp"

using namespace tpc;

namespace {
bool has_code(const std::vector<Diagnostic>& ds, const std::string& code) {
    for (const auto& d : ds)
        if (d.code == code) return true;
    return false;
}
}  // namespace

TEST_CASE("interval complexes") {
    auto e2 = interval_e2(Real(3), Real(1));
    CHECK(validate(e2).empty());
    REQUIRE(e2.size() == 2);
    CHECK(e2.generators[*e2.find("y")].degree == 0);
    CHECK(e2.generators[*e2.find("x")].filt == Real(1));
    CHECK(e2.boundary.at(*e2.find("x"), *e2.find("y")) == 1);
    CHECK(validate(interval_e1(Real(0))).empty());
}

TEST_CASE("validation catches bad complexes") {
    CHECK_THROWS(interval_e2(Real(0), Real(1)));
    CHECK(has_code(validate(make_complex({{"y", 0, Real(0)}, {"x", 1, Real(1)}}, {{"y", "x", 1}})), "filtration"));
    auto c = make_complex({{"a", 0, Real(2)}, {"b", 1, Real(1)}, {"c", 2, Real(0)}},
                          {{"a", "b", 1}, {"b", "c", 1}});
    CHECK(has_code(validate(c), "d-squared"));
    auto wrong = make_complex({{"a", 0, Real(1)}, {"b", 2, Real(0)}}, {{"a", "b", 1}});
    CHECK(has_code(validate(wrong), "degree"));
    CHECK_THROWS(make_complex({{"a", 0, Real(0)}}, {{"a", "z", 1}}));
}

TEST_CASE("shift and translate") {
    auto e2 = interval_e2(Real(3), Real(1), 0, 1, 3);
    auto s = shift(e2, Real(1, 2));
    CHECK(s.generators[*s.find("y")].filt == Real(7, 2));
    CHECK(shift(s, Real(-1, 2)) == e2);
    auto t = translate(e2, 1);
    CHECK(t.generators[*t.find("y")].degree == -1);
    CHECK(t.boundary.at(*t.find("x"), *t.find("y")) == 2);
    CHECK(translate(t, -1) == e2);
    CHECK(validate(t).empty());
}

TEST_CASE("direct sums") {
    auto a = interval_e1(Real(0));
    auto b = interval_e2(Real(2), Real(1));
    auto s = direct_sum(a, b);
    CHECK(s.size() == 3);
    CHECK(s.find("L.x"));
    CHECK(s.find("R.y"));
    CHECK(validate(s).empty());
    CHECK(direct_sum(zero_complex(), b) == b);
    CHECK(direct_sum(a, zero_complex()) == a);
}

TEST_CASE("canonical order") {
    auto c = make_complex({{"z", 1, Real(0)}, {"b", 0, Real(1)}, {"a", 0, Real(1)}, {"c", 0, Real(0)}}, {});
    CHECK(canonical_order(c) == std::vector<std::size_t>{3, 2, 1, 0});
}
