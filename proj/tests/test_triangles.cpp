#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tpc/random.hpp"
#include "tpc/triangles.hpp"

using namespace tpc;

namespace {
bool has_code(const std::vector<Diagnostic>& ds, const std::string& code) {
    for (const auto& d : ds)
        if (d.code == code) return true;
    return false;
}
}  // namespace

TEST_CASE("acyclicity") {
    auto x = interval_e2(Real(3), Real(1));
    CHECK(acyclicity(x) == Real(2));
    auto ab = acyclicity_bound(x);
    CHECK(ab.barcode == Real(2));
    CHECK(ab.homotopy == Real(2));
    CHECK(acyclicity(interval_e1(Real(0))).is_pos_inf());
    CHECK(acyclicity(zero_complex()) == Real(0));
    CHECK(acyclicity_bound(zero_complex()).homotopy == Real(0));
}

TEST_CASE("isomorphism defect of eta") {
    auto e = interval_e1(Real(0));
    CHECK(iso_defect(eta_map(e, Real(3, 2))) == Real(3, 2));
    CHECK(iso_defect(identity_map(e)) == Real(0));
    CHECK(iso_defect(zero_map(e, e)).is_pos_inf());
    auto eta = eta_map(e, Real(1));
    CHECK(right_inverse(eta, Real(1)));
    CHECK_FALSE(right_inverse(eta, Real(1, 2)));
    CHECK(left_inverse(eta, Real(1)));
    CHECK_FALSE(left_inverse(eta, Real(1, 2)));
}

TEST_CASE("eta triangle weight is sharp") {
    for (Real r : {Real(1, 2), Real(1), Real(2)}) {
        auto t = eta_triangle(interval_e1(Real(0)), r);
        CHECK(t.weight == r);
        CHECK(verify_triangle(t).empty());
        auto under = with_weight(t, r - Real(1, 1000000));
        CHECK_FALSE(verify_triangle(under).empty());
    }
}

TEST_CASE("cone triangles have weight zero") {
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        RandomComplexOptions opts;
        opts.max_generators = 6;
        auto x = random_complex(rng, opts);
        auto y = random_complex(rng, opts);
        auto f = random_chain_map(rng, x, y, Real(0));
        auto t = triangle_from_map(f);
        CHECK(t.weight == Real(0));
        CHECK(verify_triangle(t).empty());
        CHECK(verify_triangle(translate_triangle(t, 1)).empty());
    }
}

TEST_CASE("rotation doubles the weight") {
    auto t = eta_triangle(interval_e2(Real(2), Real(0)), Real(1, 2));
    auto r = rotate(t);
    CHECK(r.weight == Real(1));
    CHECK(verify_triangle(r).empty());
    CHECK(r.a == t.b);
}

TEST_CASE("sums take the larger weight") {
    auto t = eta_triangle(interval_e1(Real(0)), Real(1));
    auto u = eta_triangle(interval_e1(Real(2), 1), Real(1, 2));
    auto s = sum_triangles(t, u);
    CHECK(s.weight == Real(1));
    CHECK(verify_triangle(s).empty());
    CHECK(verify_triangle(sum_triangles(t, trivial_triangle(zero_complex()))).empty());
}

TEST_CASE("octahedron weights add") {
    auto first = eta_triangle(interval_e1(Real(0)), Real(1));
    auto second = with_weight(triangle_from_map(identity_map(first.c)), Real(1, 2));
    auto oct = octahedral(first, second);
    CHECK(oct.third.weight == Real(0));
    CHECK(oct.fourth.weight == Real(3, 2));
    CHECK(verify_triangle(oct.third).empty());
    CHECK(verify_triangle(oct.fourth).empty());
}

TEST_CASE("malformed triangles are reported") {
    auto t = eta_triangle(interval_e1(Real(0)), Real(1));
    t.v = zero_map(t.b, t.c);
    CHECK_FALSE(verify_triangle(t).empty());
    auto n = eta_triangle(interval_e1(Real(0)), Real(1));
    n.weight = Real(-1);
    CHECK(has_code(verify_triangle(n), "weight"));
}

TEST_CASE("weight certification") {
    auto t = eta_triangle(interval_e1(Real(0)), Real(1));
    LooseTriangle loose{t.a, t.b, t.c, t.u, t.v, rebase(t.w, t.c, translate(t.a, 1))};
    auto cert = certify_weight(loose, Real(2), false, 1u << 12);
    CHECK(cert.upper == Real(1));
    REQUIRE(cert.witness);
    CHECK(verify_triangle(*cert.witness).empty());
}

TEST_CASE("uniform shift") {
    auto x = interval_e2(Real(2), Real(0));
    CHECK(uniform_shift(x, shift(x, Real(3, 2))) == Real(3, 2));
    CHECK_FALSE(uniform_shift(x, interval_e2(Real(3), Real(0))));
}
