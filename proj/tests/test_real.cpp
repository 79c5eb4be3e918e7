#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "tpc/real.hpp"

using tpc::Real;

TEST_CASE("decimal text is exact") {
    CHECK(Real::parse("0.1") + Real::parse("0.2") == Real::parse("0.3"));
    CHECK(Real::parse("0.1") == Real(1, 10));
    CHECK(Real::parse("1e-3") == Real(1, 1000));
    CHECK(Real::parse("3/8") == Real(3, 8));
    CHECK(Real::parse("-0.25") == Real(-1, 4));
    CHECK(Real(6, -4) == Real(-3, 2));
}

TEST_CASE("printing") {
    CHECK(Real(12).str() == "12");
    CHECK(Real(-1, 4).str() == "-0.25");
    CHECK(Real(1, 3).str() == "1/3");
    CHECK(Real::infinity().str() == "inf");
    CHECK(Real::neg_infinity().str() == "-inf");
    CHECK(Real(5, 2).is_decimal());
    CHECK_FALSE(Real(1, 3).is_decimal());
}

TEST_CASE("infinities") {
    Real inf = Real::infinity();
    CHECK(Real(1000000) < inf);
    CHECK(Real::neg_infinity() < Real(-1000000));
    CHECK(inf + Real(3) == inf);
    CHECK(-inf == Real::neg_infinity());
    CHECK(tpc::max(Real(2), inf) == inf);
    CHECK(tpc::min(Real(2), Real::neg_infinity()) == Real::neg_infinity());
    CHECK(Real::parse("inf") == inf);
}

TEST_CASE("shifting back and forth is exact") {
    Real x = Real::parse("0.7");
    Real r = Real::from_double(0.1);
    CHECK(x + r - r == x);
    CHECK(r == Real(1, 10));
    CHECK(Real::from_double(1.0 / 3.0) == Real(333333333333LL, 1000000000000LL));
}

TEST_CASE("helpers") {
    CHECK(Real(3).half() == Real(3, 2));
    CHECK(Real(-7, 2).abs() == Real(7, 2));
    CHECK(Real(1, 3).to_double() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("bad text") {
    CHECK_THROWS(Real::parse("abc"));
    CHECK_THROWS(Real(1, 0));
}
