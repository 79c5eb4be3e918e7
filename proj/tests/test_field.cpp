#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tpc/field.hpp"

using namespace tpc;

TEST_CASE("prime field arithmetic") {
    PrimeField f(5);
    CHECK(f.add(3, 4) == 2);
    CHECK(f.sub(1, 3) == 3);
    CHECK(f.mul(3, 4) == 2);
    CHECK(f.inv(2) == 3);
    CHECK(f.inv(4) == 4);
    CHECK(f.from_int(-1) == 4);
    CHECK(f.sign(3) == 4);
    CHECK(f.sign(2) == 1);
    for (Scalar a = 1; a < 5; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK(is_prime(7));
    CHECK_FALSE(is_prime(9));
    CHECK_THROWS(PrimeField(4));
}

TEST_CASE("sparse matrix basics") {
    PrimeField f(3);
    SparseMatrix m(2, 3);
    m.set(0, 1, 2);
    m.set(1, 2, 1);
    m.add_to(0, 1, 1, f);
    CHECK(m.at(0, 1) == 0);
    CHECK(m.nonzeros() == 1);
    auto t = m.transposed();
    CHECK(t.rows() == 3);
    CHECK(t.at(2, 1) == 1);
    CHECK(multiply(SparseMatrix::identity(2), m, f) == m);
    CHECK(add(m, m, f, 2).is_zero());
}

TEST_CASE("rank over different characteristics") {
    // [[1,1],[1,-1]] has determinant -2.
    SparseMatrix m(2, 2);
    m.set(0, 0, 1);
    m.set(0, 1, 1);
    m.set(1, 0, 1);
    SparseMatrix m2 = m;
    m.set(1, 1, 1);   // -1 = 1 in GF(2)
    m2.set(1, 1, 2);  // -1 in GF(3)
    CHECK(rank(m, PrimeField(2)) == 1);
    CHECK(rank(m2, PrimeField(3)) == 2);
}

TEST_CASE("column reduction satisfies R = M V") {
    PrimeField f(2);
    // boundary of a triangle: edges ab, bc, ca over vertices a, b, c
    SparseMatrix d(3, 3);
    d.set(0, 0, 1), d.set(1, 0, 1);
    d.set(1, 1, 1), d.set(2, 1, 1);
    d.set(0, 2, 1), d.set(2, 2, 1);
    auto red = reduce_columns(d, f);
    CHECK(multiply(d, red.transform, f) == red.reduced);
    CHECK(red.pivots.size() == 2);
    CHECK(red.reduced.column(2).empty());
    for (std::size_t j = 0; j < 3; ++j) CHECK(red.transform.at(j, j) == 1);
}

TEST_CASE("masked solve") {
    PrimeField f(5);
    SparseMatrix a(2, 3);
    a.set(0, 0, 1), a.set(0, 1, 1);
    a.set(1, 1, 1), a.set(1, 2, 1);
    auto x = solve_masked(a, {2, 3}, {true, true, true}, f);
    REQUIRE(x);
    auto ax = apply(a, {{0, (*x)[0]}, {1, (*x)[1]}, {2, (*x)[2]}}, f);
    CHECK(lookup(ax, 0) == 2);
    CHECK(lookup(ax, 1) == 3);
    CHECK_FALSE(solve_masked(a, {1, 0}, {false, false, true}, f));
    auto sol = solve_affine(a, {0, 0}, {true, true, true}, f);
    REQUIRE(sol);
    CHECK(sol->kernel.size() == 1);
}
