#include "checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include "tpc/fragmentation.hpp"
#include "tpc/ingestion.hpp"
#include "tpc/random.hpp"

namespace tpc::checks {

namespace {

using Clock = std::chrono::steady_clock;

std::size_t trials(std::size_t n, double scale) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(static_cast<double>(n) * scale)));
}

Real half_step(Rng& rng, int lo, int hi) {
    return Real(lo + static_cast<long long>(rng() % static_cast<unsigned>(hi - lo + 1)), 2);
}

std::string ratio(std::size_t good, std::size_t total) { return std::to_string(good) + "/" + std::to_string(total); }

DecompositionStep plain(WeightedTriangle t) { return {std::move(t), Real(0), Real(0), Real(0)}; }

FilteredComplex small_complex(Rng& rng, std::size_t gens, int degrees) {
    RandomComplexOptions o;
    o.max_generators = gens;
    o.degrees = degrees;
    o.level_steps = 6;
    return random_complex(rng, o);
}

Real clamp0(const Real& r) { return max(r, Real(0)); }

// Two scrambled interval sums of at most `gens` generators with the same
// infinite bars up to their births, so that their distance is finite.
std::pair<FilteredComplex, FilteredComplex> matched_pair(Rng& rng, std::size_t gens) {
    std::size_t ess = rng() % 3;
    Barcode bx, by;
    for (std::size_t e = 0; e < ess; ++e) {
        int d = static_cast<int>(rng() % 3);
        bx.bars.push_back({d, half_step(rng, 0, 6), Real::infinity()});
        by.bars.push_back({d, half_step(rng, 0, 6), Real::infinity()});
    }
    auto fill = [&](Barcode& b) {
        std::size_t room = (gens - ess) / 2;
        std::size_t finite = rng() % (room + 1);
        for (std::size_t k = 0; k < finite; ++k) {
            Real x = half_step(rng, 0, 6), y = half_step(rng, 0, 6);
            if (y < x) std::swap(x, y);
            b.bars.push_back({1 + static_cast<int>(rng() % 2), x, y});
        }
    };
    fill(bx);
    fill(by);
    return {scramble(interval_model(bx), rng, 12), scramble(interval_model(by), rng, 12)};
}

Result barcode_counts(double scale) {
    Rng rng(101);
    std::size_t n = trials(300, scale), good = 0, levels = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto c = random_complex(rng);
        auto b = barcode(c);
        bool ok = true;
        for (int k = 0; k < 20; ++k) {
            Real r(27 * k - 10, 100);
            for (int d = 0; d < 4; ++d) {
                ++levels;
                ok = ok && b.count_at(r, d) == persistence_dims(c, r, d);
            }
        }
        good += ok;
    }
    return {1, "bar counts match persistence dimensions", good == n,
            ratio(good, n) + " complexes, " + std::to_string(levels) + " level/degree pairs", 0};
}

Result acyclicity_duality(double scale) {
    Rng rng(101);
    std::size_t n = trials(300, scale), good = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto c = random_complex(rng);
        Real via_bars = acyclicity_bound(c).barcode;
        Real via_homotopy = clamp0(min_homotopy_shift(identity_map(c), zero_map(c, c)));
        good += via_bars == via_homotopy;
    }
    return {2, "longest bar equals least null-homotopy shift", good == n, ratio(good, n) + " complexes", 0};
}

Result eta_triangles(double) {
    auto a = interval_e1(Real(0));
    std::size_t good = 0;
    std::string detail;
    for (auto r : {Real(1, 2), Real(1), Real(2)}) {
        auto t = eta_triangle(a, r);
        bool at_r = verify_triangle(t).empty();
        auto below = verify_triangle(with_weight(t, r - Real(1, 1000000)));
        good += at_r && !below.empty();
        detail += "r=" + r.str() + ":" + (at_r ? "ok" : "bad") + "/" + (below.empty() ? "none" : below.front().code) + " ";
    }
    detail.pop_back();
    return {3, "eta triangle weight is sharp", good == 3, detail, 0};
}

Result rigid_weights(double) {
    auto a = interval_e1(Real(0));
    auto empty = zero_complex();
    std::size_t good = 0;
    std::string detail;
    for (auto r : {Real(1, 2), Real(1)}) {
        auto c = shift(translate(a, 1), -r);
        LooseTriangle t{a, empty, c, zero_map(a, empty), zero_map(empty, c), {}};
        t.w = ChainMap{c, translate(a, 1), 0, SparseMatrix::identity(1)};
        auto unstable = certify_weight(t, Real(5), false, 4096);
        auto stable = certify_weight(t, Real(5), true, 4096);
        bool ok = unstable.upper == r && stable.upper == r && unstable.lower_unstable == r && stable.lower_stable == r &&
                  unstable.witness && verify_triangle(*unstable.witness).empty();
        good += ok;
        detail += "r=" + r.str() + ": w_inf=" + unstable.upper.str() + " w_bar=" + stable.upper.str() + " ";
    }
    detail.pop_back();
    return {4, "identity-rigid triangle weights", good == 2, detail, 0};
}

// f: X1 -> X0 and g: X2 -> X1 with finite defects, X1 and X2 scrambled shifts of X0.
struct IsoPair {
    ChainMap f, g;
};

IsoPair iso_pair(Rng& rng) {
    auto x0 = small_complex(rng, 6, 3);
    Real a = half_step(rng, 0, 4), b = half_step(rng, 0, 4);
    auto x1 = scramble(shift(x0, a), rng, 12);
    auto x2 = scramble(shift(x0, a + b), rng, 12);
    auto pick = [&](const FilteredComplex& s, const FilteredComplex& t) {
        for (int tries = 0; tries < 20; ++tries) {
            auto f = random_chain_map(rng, s, t, Real(0));
            if (iso_defect(f).is_finite()) return f;
        }
        return random_chain_map(rng, s, t, Real(0));
    };
    auto f = pick(x1, x0);
    auto g = pick(x2, x1);
    return {f, g};
}

Result composition_laws(double scale) {
    Rng rng(505);
    std::size_t n = trials(100, scale), comp = 0, inv = 0, exact = 0, finite = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto [f, g] = iso_pair(rng);
        Real r = iso_defect(f), s = iso_defect(g);
        finite += r.is_finite() && s.is_finite();
        comp += !(r + s < iso_defect(compose(g, f)));
        if (!r.is_finite()) {
            ++inv;
        } else {
            auto psi = right_inverse(f, r + r);
            inv += psi && homotopic(compose(*psi, f), eta_map(f.target, r + r), Real(0));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto bx = random_barcode(rng, 3, rng() % 2, 2, 6);
        auto by = random_barcode(rng, 3, rng() % 2, 2, 6);
        auto x = scramble(interval_model(bx), rng, 10);
        auto y = scramble(interval_model(by), rng, 10);
        auto f = random_chain_map(rng, x, y, Real(0));
        Real ax = acyclicity(x), ay = acyclicity(y), ak = acyclicity(cone(f).complex);
        exact += !(ax + ak < ay) && !(ax + ay < ak) && !(ay + ak < ax);
    }
    bool pass = comp == n && inv == n && exact == n;
    return {5, "composite defect, right inverse, two out of three", pass,
            "composite " + ratio(comp, n) + " (" + std::to_string(finite) + " finite), right inverse " + ratio(inv, n) +
                ", acyclicity " + ratio(exact, n),
            0};
}

Result refine_additivity(double scale) {
    Rng rng(606);
    std::size_t n = trials(50, scale), good = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto b = small_complex(rng, 4, 2);
        Real s = half_step(rng, 1, 4), r = half_step(rng, 1, 4);
        ConeDecomposition inner;
        inner.steps = {plain(triangle_from_map(zero_map(translate(b, -1), zero_complex()))), plain(eta_triangle(b, s))};
        inner.comparison = 0;
        ConeDecomposition outer;
        outer.steps = {plain(triangle_from_map(zero_map(inner.result(), zero_complex())))};
        outer.steps.push_back(plain(eta_triangle(outer.steps[0].triangle.c, r)));
        outer.comparison = 0;
        auto refined = refine(outer, 0, inner);
        bool ok = verify_decomposition(refined, outer.result()).empty() &&
                  decomposition_weight(refined) == decomposition_weight(outer) + decomposition_weight(inner) &&
                  decomposition_weight(refined) == r + s;
        good += ok;
    }
    return {6, "refinement adds weights exactly", good == n, ratio(good, n) + " pairs", 0};
}

Result prop1(double scale) {
    Rng rng(707);
    std::size_t n = trials(100, scale), good = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t ess = rng() % 3;
        auto bx = random_barcode(rng, 5, 0, 2, 10);
        auto by = random_barcode(rng, 5, 0, 2, 10);
        for (std::size_t e = 0; e < ess; ++e) {
            int d = static_cast<int>(rng() % 2);
            bx.bars.push_back({d, half_step(rng, 0, 10), Real::infinity()});
            by.bars.push_back({d, half_step(rng, 0, 10), Real::infinity()});
        }
        bx = make_barcode(bx.bars);
        by = make_barcode(by.bars);
        auto x = scramble(interval_model(bx), rng, 16);
        auto y = scramble(interval_model(by), rng, 16);
        auto rep = prop1_bound(x, y);
        bool ok = rep.forward && rep.backward && verify_decomposition(*rep.forward, x).empty() &&
                  verify_decomposition(*rep.backward, y).empty() &&
                  !(rep.constant * (rep.bottleneck + Real(1, 1000000000)) < rep.bound);
        good += ok;
    }
    return {7, "matching witness within the bar-count bound", good == n, ratio(good, n) + " pairs", 0};
}

Result hat_sandwich(double scale) {
    Rng rng(808);
    std::size_t n = trials(50, scale), good = 0;
    FragOptions opts;
    opts.budget = 1u << 12;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t ess = rng() % 2;
        auto x = interval_model(random_barcode(rng, 2, ess, 1, 6));
        auto y = interval_model(random_barcode(rng, 2, ess, 1, 6));
        auto rep = frag_shift_invariant(x, y, opts);
        Real d = interleaving_shift_invariant(x, y);
        good += !(rep.upper < d.half()) && !(Real(4) * d < rep.lower);
    }
    return {8, "shift-invariant fragmentation against interleaving", good == n, ratio(good, n) + " pairs", 0};
}

Result factor_two(double) {
    std::vector<FilteredComplex> corpus{
        zero_complex(),
        interval_e1(Real(0)),
        interval_e1(Real(1)),
        interval_e2(Real(1), Real(0)),
        interval_e2(Real(2), Real(0)),
        interval_e2(Real(2), Real(1)),
        direct_sum(interval_e1(Real(0)), interval_e1(Real(1))),
        direct_sum(interval_e1(Real(0)), interval_e2(Real(1), Real(0))),
        direct_sum(interval_e2(Real(1), Real(0)), interval_e2(Real(2), Real(0))),
        direct_sum(interval_e1(Real(1)), interval_e2(Real(2), Real(1))),
    };
    std::vector<FilteredComplex> family{zero_complex()};
    FragOptions opts;
    std::size_t good = 0, total = 0;
    for (const auto& x : corpus)
        for (const auto& xp : corpus) {
            ++total;
            auto rep = frag_pseudometric(x, xp, family, opts);
            auto oracle = [&](const FilteredComplex& a, const FilteredComplex& b) {
                std::vector<Real> grid;
                for (const auto& m : shift_grid(a, b))
                    if (!(m < Real(0))) grid.push_back(m);
                auto s = min_r_iso(b, a, grid, opts.budget, false);
                return s ? s->defect : Real::infinity();
            };
            Real om = max(oracle(x, xp), oracle(xp, x));
            bool ok = rep.exhaustive && !(rep.upper < rep.lower) && !(Real(2) * rep.lower < rep.upper) &&
                      !(om < rep.upper) && !(rep.lower < om.half());
            if (x == xp) ok = ok && rep.upper == Real(0);
            good += ok;
        }
    return {9, "fragmentation bounds within a factor of two", good == total, ratio(good, total) + " pairs", 0};
}

Result interleaving_routes(double) {
    Rng rng(909);
    std::size_t good = 0, finite = 0;
    std::string failure;
    for (int i = 0; i < 20; ++i) {
        auto [x, y] = matched_pair(rng, 6);
        try {
            Real d = interleaving(x, y);
            finite += d.is_finite();
            good += d == interleaving_chain_level(x, y);
        } catch (const BudgetExceeded&) {
            failure = " (budget exceeded)";
        }
    }
    return {10, "barcode and chain-level interleaving agree", good == 20, ratio(good, 20) + " pairs, " + std::to_string(finite) + " finite" + failure, 0};
}

Result metrics(double scale) {
    Rng rng(1111);
    std::size_t n = trials(100, scale), m = trials(50, scale), axioms = 0, functor = 0;
    std::vector<double> cone_grid{0, 0.25, 0.5, 0.75, 1}, susp_grid{-0.5, -0.25, 0, 0.25, 0.5};
    for (std::size_t i = 0; i < n; ++i) {
        auto a = random_metric(rng, 8);
        auto b = random_metric(rng, 8);
        MetricMap u{a, b, {}};
        for (int k = 0; k < 8; ++k) u.image.push_back(rng() % 8);
        axioms += validate_metric(metric_cone(a, cone_grid)).empty() &&
                  validate_metric(metric_suspension(a, susp_grid)).empty() &&
                  validate_metric(metric_mapping_cone(u, cone_grid)).empty();
        if (i < m) {
            Real floor(-20);
            auto ca = diameter_filtered_complex(a, 2, floor);
            auto cb = diameter_filtered_complex(b, 2, floor);
            auto f = induced_map(u, ca, cb);
            functor += is_chain_map(f) && !(lipschitz_shift(u) < shift_above(f, floor));
        }
    }
    return {11, "metric constructions and induced maps", axioms == n && functor == m,
            "axioms " + ratio(axioms, n) + ", functoriality " + ratio(functor, m), 0};
}

}  // namespace

std::vector<Result> run(const std::vector<int>& which, double scale) {
    static const std::vector<std::function<Result(double)>> all{
        barcode_counts, acyclicity_duality, eta_triangles, rigid_weights,     composition_laws, refine_additivity,
        prop1,          hat_sandwich,       factor_two,    interleaving_routes, metrics};
    std::vector<Result> out;
    for (int id : which) {
        if (id < 1 || id > static_cast<int>(all.size())) continue;
        auto t0 = Clock::now();
        auto r = all[static_cast<std::size_t>(id - 1)](scale);
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace tpc::checks
