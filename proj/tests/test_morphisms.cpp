#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tpc/morphisms.hpp"
#include "tpc/random.hpp"

using namespace tpc;

TEST_CASE("maps and shifts") {
    auto a = interval_e2(Real(3), Real(1));
    auto eta = eta_map(a, Real(1, 2));
    CHECK(is_chain_map(eta));
    CHECK(map_shift(eta) == Real(-1, 2));
    CHECK(map_shift(zero_map(a, a)).is_neg_inf());
    CHECK(validate_map(eta).empty());
    auto twice = compose(eta_map(shift(a, Real(1, 2)), Real(1, 2)), eta);
    CHECK(map_shift(twice) == Real(-1));
    CHECK(add_maps(identity_map(a), identity_map(a)).matrix.is_zero());
}

TEST_CASE("morphism complex") {
    auto h = hom_complex(interval_e1(Real(0)), interval_e1(Real(1)));
    REQUIRE(h.size() == 1);
    CHECK(h.generators[0].degree == 0);
    CHECK(h.generators[0].filt == Real(1));
    auto x = interval_e2(Real(3), Real(1));
    auto hx = hom_complex(x, x);
    CHECK(hx.size() == 4);
    CHECK(validate(hx).empty());
    auto id = identity_map(x);
    CHECK(hom_to_map(map_to_hom(id), x, x, 0) == id);
}

TEST_CASE("null-homotopies of the identity") {
    auto x = interval_e2(Real(3), Real(1));
    auto id = identity_map(x);
    auto zero = zero_map(x, x);
    CHECK(min_homotopy_shift(id, zero) == Real(2));
    CHECK_FALSE(homotopic(id, zero, Real(3, 2)));
    auto h = find_homotopy(id, zero, Real(2));
    REQUIRE(h);
    CHECK(h->degree == -1);
    CHECK(map_shift(*h) == Real(2));
    CHECK(min_homotopy_shift(id, id).is_neg_inf());
    auto e = interval_e1(Real(0));
    CHECK(min_homotopy_shift(identity_map(e), zero_map(e, e)).is_pos_inf());
}

TEST_CASE("cone of eta") {
    auto e = interval_e1(Real(0));
    auto c = cone(eta_map(e, Real(1)));
    CHECK(validate(c.complex).empty());
    CHECK(barcode(c.complex).bars == std::vector<Bar>{{0, Real(0), Real(1)}});
    CHECK(is_chain_map(c.incl));
    CHECK(is_chain_map(c.proj));
    CHECK(c.complex.find("L.x"));
    CHECK(c.complex.find("R.x"));
    CHECK_THROWS(cone(eta_map(e, Real(-1))));
}

TEST_CASE("spectral invariants") {
    auto e = interval_e1(Real(0));
    CHECK(spectral_invariant(identity_map(e)) == Real(0));
    CHECK(spectral_invariant(eta_map(e, Real(1))) == Real(-1));
    CHECK_FALSE(spectral_invariant(zero_map(e, e)));
    auto x = interval_e2(Real(3), Real(1));
    CHECK_FALSE(spectral_invariant(identity_map(x)));
}

TEST_CASE("classes of maps") {
    auto a = interval_e1(Real(0));
    auto b = interval_e1(Real(1));
    CHECK(chain_map_classes(a, b, Real(1)).size() == 1);
    CHECK(chain_map_classes(a, b, Real(1, 2)).empty());
    CHECK(chain_map_classes(b, a, Real(0)).size() == 1);
    auto maps = chain_map_classes(interval_e1(Real(0), 0, 3), interval_e1(Real(0), 0, 3), Real(0));
    REQUIRE(maps.size() == 1);
    std::size_t seen = 0;
    CHECK(for_each_combination(maps, zero_map(maps[0].source, maps[0].target), 10, [&](const ChainMap&) {
        ++seen;
        return true;
    }));
    CHECK(seen == 3);
    CHECK_FALSE(for_each_combination(maps, zero_map(maps[0].source, maps[0].target), 2,
                                     [](const ChainMap&) { return true; }));
}

TEST_CASE("map problems") {
    auto a = interval_e1(Real(0));
    auto b = interval_e1(Real(1));
    MapProblem forward(b, a, Real(0));
    CHECK(forward.solve());
    MapProblem back(a, b, Real(1, 2));
    auto sol = back.solve();
    REQUIRE(sol);
    CHECK(sol->particular.matrix.is_zero());
    CHECK(sol->directions.empty());
    MapProblem inverse(a, b, Real(1));
    inverse.require_post(eta_map(b, Real(0)), rebase(identity_map(a), a, b), Real(1));
    CHECK(inverse.solve());
}

TEST_CASE("chain-level interleaving") {
    CHECK(interleaving_chain_level(interval_e1(Real(0)), interval_e1(Real(1))) == Real(1));
    CHECK(interleaving_chain_level(interval_e2(Real(2), Real(0)), zero_complex()) == Real(1));
    CHECK(interleaving_chain_level(interval_e1(Real(0)), zero_complex()).is_pos_inf());
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        RandomComplexOptions opts;
        opts.max_generators = 5;
        auto x = random_complex(rng, opts);
        CHECK(interleaving_chain_level(x, scramble(x, rng, 10)) == Real(0));
    }
}

TEST_CASE("shift candidates") {
    auto c = shift_candidates(interval_e1(Real(0)), interval_e2(Real(2), Real(1)));
    CHECK(c == std::vector<Real>{Real(1), Real(2)});
}
