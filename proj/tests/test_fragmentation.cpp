#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tpc/fragmentation.hpp"
#include "tpc/random.hpp"

using namespace tpc;

namespace {
DecompositionStep plain(const WeightedTriangle& t) { return {t, Real(0), Real(0), Real(0)}; }
const std::vector<FilteredComplex> zero_family{zero_complex()};
}  // namespace

TEST_CASE("canonical decomposition") {
    auto x = interval_e2(Real(2), Real(0));
    auto d = canonical_decomposition(x);
    CHECK(d.steps.size() == 1);
    CHECK(verify_decomposition(d, x).empty());
    CHECK(decomposition_weight(d) == Real(0));
    CHECK(decomposition_weight(d, WeightMode::Flat) == Real(0));
    CHECK(d.linearization() == std::vector<FilteredComplex>{translate(x, -1)});
    CHECK(d.result() == x);
    CHECK_FALSE(verify_decomposition(d, interval_e1(Real(0))).empty());
    CHECK_FALSE(verify_decomposition(ConeDecomposition{}, x).empty());
}

TEST_CASE("refinement adds weights") {
    auto b = interval_e2(Real(1), Real(0));
    ConeDecomposition inner;
    inner.steps = {plain(triangle_from_map(zero_map(translate(b, -1), zero_complex()))), plain(eta_triangle(b, Real(1)))};
    inner.comparison = 0;
    ConeDecomposition outer;
    outer.steps = {plain(triangle_from_map(zero_map(inner.result(), zero_complex())))};
    outer.steps.push_back(plain(eta_triangle(outer.steps[0].triangle.c, Real(3, 2))));
    outer.comparison = 0;
    CHECK(verify_decomposition(inner, inner.result()).empty());
    CHECK(verify_decomposition(outer, outer.result()).empty());
    auto refined = refine(outer, 0, inner);
    CHECK(verify_decomposition(refined, outer.result()).empty());
    CHECK(decomposition_weight(refined) == Real(5, 2));
    CHECK(decomposition_weight(refined, WeightMode::Flat) == Real(2));
    auto moved = translate_decomposition(outer, 1);
    CHECK(verify_decomposition(moved, translate(outer.result(), 1)).empty());
    CHECK(decomposition_weight(moved) == Real(3, 2));
}

TEST_CASE("sums of decompositions") {
    auto x = canonical_decomposition(interval_e2(Real(2), Real(0)));
    auto y = canonical_decomposition(interval_e1(Real(1)));
    auto s = sum_decompositions(x, y);
    CHECK(verify_decomposition(s, direct_sum(x.result(), y.result())).empty());
    CHECK(decomposition_weight(s) == Real(0));
}

TEST_CASE("fragmentation against zero") {
    auto rep = frag_pseudometric(interval_e2(Real(2), Real(0)), zero_complex(), zero_family);
    CHECK(rep.lower == Real(1));
    CHECK(rep.upper == Real(2));
    REQUIRE(rep.forward);
    CHECK(verify_decomposition(*rep.forward, interval_e2(Real(2), Real(0))).empty());
    CHECK(decomposition_weight(*rep.forward) == Real(2));
}

TEST_CASE("fragmentation between shifted points") {
    for (Real s : {Real(1, 2), Real(1), Real(3)}) {
        auto rep = frag_pseudometric(interval_e1(Real(0)), interval_e1(s), zero_family);
        CHECK(rep.lower == s);
        CHECK(rep.upper == s);
        REQUIRE(rep.backward);
        CHECK(verify_decomposition(*rep.backward, interval_e1(s)).empty());
    }
    auto same = frag_pseudometric(interval_e1(Real(0)), interval_e1(Real(0)), zero_family);
    CHECK(same.upper == Real(0));
}

TEST_CASE("delta upper bound") {
    auto x = interval_e1(Real(0));
    auto d = delta_upper(x, shift(x, Real(1)), zero_family);
    CHECK(d.value == Real(1));
    REQUIRE(d.witness);
    CHECK(verify_decomposition(*d.witness, x).empty());
    CHECK(d.exhaustive);
    auto g = shift_grid(x, shift(x, Real(1)));
    CHECK(std::find(g.begin(), g.end(), Real(-1, 2)) != g.end());
    CHECK(std::find(g.begin(), g.end(), Real(0)) != g.end());
}

TEST_CASE("shift-invariant distances") {
    CHECK(interleaving_shift_invariant(interval_e2(Real(2), Real(0)), interval_e2(Real(5, 2), Real(1, 2))) == Real(0));
    CHECK(interleaving_shift_invariant(interval_e2(Real(2), Real(0)), interval_e2(Real(1), Real(0))) == Real(1, 2));
    auto f = frag_shift_invariant(interval_e1(Real(0)), interval_e1(Real(1)));
    CHECK(f.upper == Real(0));
    CHECK(f.lower == Real(0));
    auto q = q_estimate(interval_e1(Real(1)), interval_e1(Real(0)), zero_family);
    CHECK(q.upper == Real(0));
}

TEST_CASE("decompositions from a bar matching") {
    auto rep = prop1_bound(interval_e2(Real(2), Real(0)), interval_e2(Real(5, 2), Real(1, 2)));
    CHECK(rep.bottleneck == Real(1, 2));
    CHECK(rep.bound == Real(1, 2));
    CHECK(rep.constant == Real(5));
    REQUIRE(rep.forward);
    REQUIRE(rep.backward);
    CHECK(verify_decomposition(*rep.forward, interval_e2(Real(2), Real(0))).empty());
    CHECK(verify_decomposition(*rep.backward, interval_e2(Real(5, 2), Real(1, 2))).empty());
    CHECK(prop1_bound(interval_e1(Real(0)), interval_e1(Real(1))).bound == Real(1));
}

TEST_CASE("matching bound on random pairs") {
    Rng rng(19);
    for (int trial = 0; trial < 15; ++trial) {
        auto bx = random_barcode(rng, 3, 1, 2, 8);
        auto by = random_barcode(rng, 3, 1, 2, 8);
        by.bars.erase(std::remove_if(by.bars.begin(), by.bars.end(), [](const Bar& b) { return !b.death.is_finite(); }),
                      by.bars.end());
        for (const auto& b : bx.bars)
            if (!b.death.is_finite()) by.bars.push_back(b);
        by = make_barcode(by.bars);
        auto x = interval_model(bx), y = interval_model(by);
        auto rep = prop1_bound(x, y);
        CHECK(rep.bound <= rep.constant * rep.bottleneck);
        if (rep.forward) CHECK(verify_decomposition(*rep.forward, x).empty());
        if (rep.backward) CHECK(verify_decomposition(*rep.backward, y).empty());
    }
}
