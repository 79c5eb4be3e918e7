#include "tpc/fragmentation.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tpc {

namespace {

DecompositionStep plain(WeightedTriangle t) { return {std::move(t), Real(0), Real(0), Real(0)}; }

bool is_chain_level(const DecompositionStep& s) { return s.q == Real(0) && s.s == Real(0); }

WeightedTriangle shift_triangle(const WeightedTriangle& t, const Real& k) {
    if (k == Real(0)) return t;
    WeightedTriangle out;
    out.a = shift(t.a, k);
    out.b = shift(t.b, k);
    out.c = shift(t.c, k);
    out.weight = t.weight;
    out.u = shift_map(t.u, k, k);
    out.v = shift_map(t.v, k, k);
    out.w = shift_map(t.w, k, k);
    out.phi = shift_map(t.phi, k, k);
    out.psi = shift_map(t.psi, k, k);
    return out;
}

// Z -> W -> X through phi: W + TZ -> X, weight r.
WeightedTriangle finish_step(const FilteredComplex& z, const FilteredComplex& w, const ChainMap& phi, const Real& r) {
    auto u = zero_map(z, w);
    auto cu = cone(u);
    if (!(phi.source == cu.complex)) throw std::logic_error("finish_step: map does not start at the cone");
    auto psi = right_inverse(phi, r);
    if (!psi) throw std::logic_error("finish_step: no right inverse");
    WeightedTriangle t;
    t.a = z;
    t.b = w;
    t.c = phi.target;
    t.u = u;
    t.v = compose(cu.incl, phi);
    t.weight = r;
    t.w = rebase(compose(*psi, cu.proj), t.c, shift(translate(z, 1), -r));
    t.phi = phi;
    t.psi = *psi;
    return t;
}

// T^-1 shift(xp, k) -> 0 -> shift(xp, k), standing for T^-1 xp.
DecompositionStep comparison_step(const FilteredComplex& xp, const Real& k) {
    auto raised = shift(xp, k);
    auto t = triangle_from_map(zero_map(translate(raised, -1), zero_complex(xp.p)));
    return {std::move(t), k, Real(0), Real(0)};
}

// Builds z from 0 -> 0 -> T^-1 K and T^-1 shift(xp, k) -> T^-1 K -> z, where
// K is the cone of f: z -> shift(xp, k).
std::vector<DecompositionStep> cone_trick(const ChainMap& f, const FilteredComplex& xp, const Real& k) {
    const auto& z = f.source;
    auto fld = z.field();
    auto cf = cone(f);
    auto tk = translate(cf.complex, -1);
    auto empty = zero_complex(z.p);
    Real r = acyclicity(cf.complex);

    WeightedTriangle first;
    first.a = empty;
    first.b = empty;
    first.c = tk;
    first.u = zero_map(empty, empty);
    first.v = zero_map(empty, tk);
    first.weight = r;
    first.w = zero_map(tk, shift(translate(empty, 1), -r));
    first.phi = zero_map(cone(first.u).complex, tk);
    first.psi = zero_map(shift(tk, r), cone(first.u).complex);

    const std::size_t np = xp.size(), nz = z.size();
    auto a = translate(shift(xp, k), -1);
    SparseMatrix incl(tk.size(), np);
    for (std::size_t i = 0; i < np; ++i) incl.set(i, i, 1);
    ChainMap u{a, tk, 0, incl};
    auto cu = cone(u);
    ChainMap phi{cu.complex, z, 0, SparseMatrix(nz, cu.complex.size())};
    ChainMap psi{z, cu.complex, 0, SparseMatrix(cu.complex.size(), nz)};
    for (std::size_t j = 0; j < nz; ++j) {
        phi.matrix.set(j, np + j, 1);
        SparseColumn col{{np + j, 1}};
        for (const auto& e : f.matrix.column(j)) col.push_back({np + nz + e.row, e.value});
        psi.matrix.set_column(j, std::move(col));
    }
    (void)fld;
    WeightedTriangle second;
    second.a = a;
    second.b = tk;
    second.c = z;
    second.u = u;
    second.v = compose(cu.incl, phi);
    second.weight = Real(0);
    second.w = rebase(f, z, shift(translate(a, 1), Real(0)));
    second.phi = phi;
    second.psi = psi;
    return {plain(std::move(first)), {std::move(second), k, Real(0), Real(0)}};
}

std::vector<Real> with_negatives(const std::set<Real>& s) {
    std::set<Real> out(s);
    for (const auto& x : s) out.insert(-x);
    return {out.begin(), out.end()};
}

// Best maps per shift for each route.
struct Profile {
    std::vector<Real> grid;
    std::vector<std::optional<IsoSearch>> forward;   // shift(xp, m) -> x
    std::vector<std::optional<IsoSearch>> backward;  // x -> shift(xp, m)
    std::vector<std::vector<std::optional<IsoSearch>>> members;  // cone(0: Z -> shift(xp, m)) -> x
    std::vector<FilteredComplex> nonzero;
    bool exhaustive = true;
};

bool has_zero(const std::vector<FilteredComplex>& family) {
    return std::any_of(family.begin(), family.end(), [](const FilteredComplex& c) { return c.empty(); });
}

Profile make_profile(const FilteredComplex& x, const FilteredComplex& xp, const std::vector<FilteredComplex>& family,
                     const std::vector<Real>& grid, const FragOptions& opts) {
    Profile p;
    p.grid = grid;
    bool zero = has_zero(family);
    for (const auto& z : family)
        if (!z.empty()) p.nonzero.push_back(z);
    p.members.resize(p.nonzero.size());
    auto note = [&](const std::optional<IsoSearch>& s) {
        if (s && !s->exhaustive) p.exhaustive = false;
        return s;
    };
    for (const auto& m : grid) {
        auto raised = shift(xp, m);
        if (zero) {
            p.forward.push_back(note(min_r_iso(xp, x, {m}, opts.budget, true)));
            if (!opts.weight_zero_prefix)
                p.backward.push_back(note(min_r_iso(x, raised, {Real(0)}, opts.budget, true)));
            else
                p.backward.push_back(std::nullopt);
        } else {
            p.forward.push_back(std::nullopt);
            p.backward.push_back(std::nullopt);
        }
        for (std::size_t i = 0; i < p.nonzero.size(); ++i) {
            auto src = cone(zero_map(p.nonzero[i], raised)).complex;
            p.members[i].push_back(note(min_r_iso(src, x, {Real(0)}, opts.budget, true)));
        }
    }
    return p;
}

struct Choice {
    Real value = Real::infinity();
    std::size_t index = 0;
    int route = -1;  // 0 forward, 1 backward, 2 + member
};

template <class Pred>
Choice best_choice(const Profile& p, Pred admissible) {
    Choice c;
    for (std::size_t i = 0; i < p.grid.size(); ++i) {
        if (!admissible(p.grid[i])) continue;
        auto consider = [&](const std::optional<IsoSearch>& s, int route) {
            if (s && s->defect < c.value) c = {s->defect, i, route};
        };
        consider(p.forward[i], 0);
        consider(p.backward[i], 1);
        for (std::size_t z = 0; z < p.members.size(); ++z) consider(p.members[z][i], 2 + static_cast<int>(z));
    }
    return c;
}

Real forward_minimum(const Profile& p, const std::function<bool(const Real&)>& admissible) {
    Real best = Real::infinity();
    for (std::size_t i = 0; i < p.grid.size(); ++i)
        if (admissible(p.grid[i]) && p.forward[i]) best = min(best, p.forward[i]->defect);
    return best;
}

ConeDecomposition build(const Profile& p, const Choice& c, const FilteredComplex& xp) {
    const Real& m = p.grid[c.index];
    ConeDecomposition d;
    if (c.route == 1) {
        d.steps = cone_trick(p.backward[c.index]->map, xp, m);
        d.comparison = 1;
        return d;
    }
    d.steps.push_back(comparison_step(xp, m));
    d.comparison = 0;
    auto raised = d.steps[0].triangle.c;
    if (c.route == 0) {
        const auto& s = *p.forward[c.index];
        d.steps.push_back(plain(finish_step(zero_complex(xp.p), raised, s.map, s.defect)));
    } else {
        const auto& z = p.nonzero[static_cast<std::size_t>(c.route - 2)];
        const auto& s = *p.members[static_cast<std::size_t>(c.route - 2)][c.index];
        d.steps.push_back(plain(finish_step(z, raised, s.map, s.defect)));
    }
    return d;
}

std::string route_name(int route) {
    switch (route) {
        case 0: return "forward-iso";
        case 1: return "cone";
        default: return "member";
    }
}

bool nonnegative(const Real& m) { return !(m < Real(0)); }

std::vector<Real> endpoints(const Barcode& b) {
    std::vector<Real> out;
    for (const auto& bar : b.bars) {
        out.push_back(bar.birth);
        if (bar.death.is_finite()) out.push_back(bar.death);
    }
    return out;
}

std::vector<Real> difference_grid(const std::vector<Real>& xs, const std::vector<Real>& ys) {
    std::set<Real> diffs{Real(0)};
    for (const auto& a : xs)
        for (const auto& b : ys) diffs.insert(b - a);
    std::set<Real> out(diffs);
    for (auto i = diffs.begin(); i != diffs.end(); ++i)
        for (auto j = std::next(i); j != diffs.end(); ++j) out.insert((*i + *j).half());
    return with_negatives(out);
}

std::vector<Real> levels(const FilteredComplex& c) {
    std::vector<Real> out;
    for (const auto& g : c.generators) out.push_back(g.filt);
    return out;
}

std::optional<Real> identity_obstruction(const FilteredComplex& x, const FilteredComplex& xp) {
    auto k = uniform_shift(x, xp);
    if (!k) return std::nullopt;
    auto s = spectral_invariant(identity_map(x));
    if (!s || !(*s == Real(0))) return std::nullopt;
    return k->abs();
}

// Positions of the model generators of each bar, in interval_model order.
std::vector<std::size_t> bar_starts(const Barcode& b) {
    std::vector<std::size_t> out;
    std::size_t at = 0;
    for (const auto& bar : b.bars) {
        out.push_back(at);
        at += bar.death.is_pos_inf() ? 1 : 2;
    }
    return out;
}

}  // namespace

std::vector<FilteredComplex> ConeDecomposition::linearization() const {
    std::vector<FilteredComplex> out;
    for (const auto& s : steps) out.push_back(shift(s.triangle.a, -s.t));
    return out;
}

FilteredComplex ConeDecomposition::result() const {
    if (steps.empty()) return zero_complex();
    return shift(steps.back().triangle.c, steps.back().s);
}

Real decomposition_weight(const ConeDecomposition& d, WeightMode mode) {
    if (mode == WeightMode::Flat) return d.steps.empty() ? Real(0) : Real(static_cast<long long>(d.steps.size()) - 1);
    Real total(0);
    for (const auto& s : d.steps) total += s.triangle.weight;
    return total;
}

std::vector<Diagnostic> verify_decomposition(const ConeDecomposition& d, const FilteredComplex& result) {
    std::vector<Diagnostic> out;
    if (d.steps.empty()) {
        out.push_back({"empty", "decomposition has no steps"});
        return out;
    }
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const auto& s = d.steps[i];
        std::string at = "step " + std::to_string(i + 1);
        for (const auto& diag : verify_triangle(s.triangle)) out.push_back({"step", at + ": " + diag.message});
        if (s.t < Real(0) || s.q < Real(0) || s.s < s.q || s.triangle.weight < s.s)
            out.push_back({"shifts", at + ": shifts must satisfy t >= 0 and 0 <= q <= s <= weight"});
        if (i == 0) {
            if (!s.triangle.b.empty()) out.push_back({"start", "first step must start from the zero complex"});
        } else {
            const auto& prev = d.steps[i - 1];
            if (!(shift(s.triangle.b, s.q) == shift(prev.triangle.c, prev.s)))
                out.push_back({"chain", at + ": middle object does not match the previous result"});
        }
    }
    if (!(d.result() == result)) out.push_back({"final", "decomposition does not end at the given complex"});
    return out;
}

ConeDecomposition canonical_decomposition(const FilteredComplex& x) {
    ConeDecomposition d;
    d.steps.push_back(comparison_step(x, Real(0)));
    d.comparison = 0;
    return d;
}

ConeDecomposition refine(const ConeDecomposition& d, std::size_t i, const ConeDecomposition& inner) {
    if (i >= d.steps.size()) throw std::invalid_argument("refine: step index out of range");
    if (inner.steps.empty()) throw std::invalid_argument("refine: empty inner decomposition");
    if (!is_chain_level(d.steps[i]) || !std::all_of(inner.steps.begin(), inner.steps.end(), is_chain_level))
        throw std::invalid_argument("refine: middle and final shifts must be zero");
    const Real& t = d.steps[i].t;
    if (!(d.steps[i].triangle.a == shift(inner.result(), t)))
        throw std::invalid_argument("refine: inner decomposition does not end at the refined object");
    std::vector<DecompositionStep> fresh(inner.steps.size());
    WeightedTriangle current = d.steps[i].triangle;
    for (std::size_t j = inner.steps.size(); j-- > 0;) {
        auto oct = octahedral(shift_triangle(inner.steps[j].triangle, t), current);
        fresh[j] = {std::move(oct.fourth), t + inner.steps[j].t, Real(0), Real(0)};
        current = std::move(oct.third);
    }
    ConeDecomposition out;
    out.steps.assign(d.steps.begin(), d.steps.begin() + static_cast<std::ptrdiff_t>(i));
    out.steps.insert(out.steps.end(), fresh.begin(), fresh.end());
    out.steps.insert(out.steps.end(), d.steps.begin() + static_cast<std::ptrdiff_t>(i) + 1, d.steps.end());
    if (d.comparison == ConeDecomposition::npos || d.comparison < i)
        out.comparison = d.comparison;
    else if (d.comparison > i)
        out.comparison = d.comparison + inner.steps.size() - 1;
    else
        out.comparison = inner.comparison == ConeDecomposition::npos ? ConeDecomposition::npos : i + inner.comparison;
    return out;
}

ConeDecomposition translate_decomposition(const ConeDecomposition& d, int k) {
    ConeDecomposition out;
    out.comparison = d.comparison;
    for (const auto& s : d.steps) out.steps.push_back({translate_triangle(s.triangle, k), s.t, s.q, s.s});
    return out;
}

ConeDecomposition sum_decompositions(const ConeDecomposition& x, const ConeDecomposition& y) {
    if (x.comparison == ConeDecomposition::npos || y.comparison == ConeDecomposition::npos)
        throw std::invalid_argument("sum_decompositions: both decompositions need a comparison step");
    if (!std::all_of(x.steps.begin(), x.steps.end(), is_chain_level) ||
        !std::all_of(y.steps.begin(), y.steps.end(), is_chain_level))
        throw std::invalid_argument("sum_decompositions: middle and final shifts must be zero");
    if (!(x.steps[x.comparison].t == y.steps[y.comparison].t))
        throw std::invalid_argument("sum_decompositions: comparison steps are raised by different shifts");
    const Scalar p = x.steps.front().triangle.a.p;
    auto empty = zero_complex(p);
    ConeDecomposition out;
    auto built = [&](const ConeDecomposition& d, std::size_t upto) {
        return upto == 0 ? empty : d.steps[upto - 1].triangle.c;
    };
    auto push = [&](WeightedTriangle t, const Real& raise) { out.steps.push_back({std::move(t), raise, Real(0), Real(0)}); };
    for (std::size_t k = 0; k < x.comparison; ++k)
        push(sum_triangles(x.steps[k].triangle, trivial_triangle(empty)), x.steps[k].t);
    for (std::size_t k = 0; k < y.comparison; ++k)
        push(sum_triangles(trivial_triangle(built(x, x.comparison)), y.steps[k].triangle), y.steps[k].t);
    out.comparison = out.steps.size();
    push(sum_triangles(x.steps[x.comparison].triangle, y.steps[y.comparison].triangle), x.steps[x.comparison].t);
    for (std::size_t k = x.comparison + 1; k < x.steps.size(); ++k)
        push(sum_triangles(x.steps[k].triangle, trivial_triangle(built(y, y.comparison + 1))), x.steps[k].t);
    for (std::size_t k = y.comparison + 1; k < y.steps.size(); ++k)
        push(sum_triangles(trivial_triangle(x.result()), y.steps[k].triangle), y.steps[k].t);
    return out;
}

std::vector<Real> shift_grid(const FilteredComplex& x, const FilteredComplex& xp) {
    return difference_grid(levels(xp), levels(x));
}

DeltaBound delta_upper(const FilteredComplex& x, const FilteredComplex& xp, const std::vector<FilteredComplex>& family,
                       const FragOptions& opts) {
    DeltaBound out;
    if (x == xp) {
        out.value = Real(0);
        out.witness = canonical_decomposition(x);
        out.route = "canonical";
        return out;
    }
    std::vector<Real> grid;
    for (const auto& m : shift_grid(x, xp))
        if (nonnegative(m)) grid.push_back(m);
    auto prof = make_profile(x, xp, family, grid, opts);
    auto c = best_choice(prof, nonnegative);
    out.exhaustive = prof.exhaustive;
    if (c.route < 0) return out;
    out.value = c.value;
    out.witness = build(prof, c, xp);
    out.route = route_name(c.route);
    return out;
}

FragReport frag_pseudometric(const FilteredComplex& x, const FilteredComplex& xp,
                             const std::vector<FilteredComplex>& family, const FragOptions& opts) {
    FragReport rep;
    rep.grid = shift_grid(x, xp);
    std::vector<Real> grid;
    for (const auto& m : rep.grid)
        if (nonnegative(m)) grid.push_back(m);
    if (x == xp) {
        rep.lower = Real(0);
        rep.upper = Real(0);
        rep.forward = canonical_decomposition(x);
        rep.backward = canonical_decomposition(xp);
        return rep;
    }
    auto fwd = make_profile(x, xp, family, grid, opts);
    auto bwd = make_profile(xp, x, family, shift_grid(xp, x), opts);
    std::vector<Real> grid_b;
    auto cf = best_choice(fwd, nonnegative);
    auto cb = best_choice(bwd, nonnegative);
    rep.exhaustive = fwd.exhaustive && bwd.exhaustive;
    if (cf.route >= 0) rep.forward = build(fwd, cf, xp);
    if (cb.route >= 0) rep.backward = build(bwd, cb, x);
    rep.upper = max(cf.value, cb.value);

    rep.lower = Real(0);
    bool only_zero = !family.empty() && std::all_of(family.begin(), family.end(),
                                                    [](const FilteredComplex& c) { return c.empty(); });
    if (only_zero) {
        rep.lower = max(forward_minimum(fwd, nonnegative), forward_minimum(bwd, nonnegative)).half();
        rep.lower = max(rep.lower, interleaving_shift_invariant(x, xp).half());
        if (auto k = identity_obstruction(x, xp)) rep.lower = max(rep.lower, *k);
        rep.lower = min(rep.lower, rep.upper);
    }
    return rep;
}

Real interleaving_shift_invariant(const FilteredComplex& x, const FilteredComplex& y) {
    auto bx = barcode(x), by = barcode(y);
    Real best = Real::infinity();
    for (const auto& r : difference_grid(endpoints(bx), endpoints(by)))
        best = min(best, bottleneck(bx.shifted(r), by, DeletionRule::Conventional));
    return best;
}

ShiftInvariantReport shift_invariant(const std::function<Real(const FilteredComplex&, const FilteredComplex&)>& metric,
                                     const FilteredComplex& x, const FilteredComplex& y, const std::vector<Real>& grid) {
    ShiftInvariantReport rep;
    rep.grid = grid;
    rep.lower = Real(0);
    for (const auto& r : grid) {
        Real v = metric(shift(x, r), y);
        if (v < rep.upper) {
            rep.upper = v;
            rep.shift = r;
        }
    }
    return rep;
}

ShiftInvariantReport frag_shift_invariant(const FilteredComplex& x, const FilteredComplex& y, const FragOptions& opts) {
    std::vector<FilteredComplex> family{zero_complex(x.p)};
    ShiftInvariantReport rep;
    rep.grid = shift_grid(x, y);
    auto one = make_profile(x, y, family, rep.grid, opts);
    auto two = make_profile(y, x, family, rep.grid, opts);
    auto best_from = [](const Profile& p, const std::function<bool(const Real&)>& ok) { return best_choice(p, ok).value; };
    for (const auto& r : rep.grid) {
        Real a = best_from(one, [&](const Real& m) { return !(m < -r); });
        Real b = best_from(two, [&](const Real& m) { return !(m < r); });
        Real v = max(a, b);
        if (v < rep.upper) {
            rep.upper = v;
            rep.shift = r;
        }
    }
    auto any = [](const Real&) { return true; };
    rep.lower = max(forward_minimum(one, any), forward_minimum(two, any)).half();
    rep.lower = max(rep.lower, interleaving_shift_invariant(x, y).half());
    rep.lower = min(rep.lower, rep.upper);
    return rep;
}

ShiftInvariantReport q_estimate(const FilteredComplex& y, const FilteredComplex& x,
                                const std::vector<FilteredComplex>& family, const FragOptions& opts) {
    ShiftInvariantReport rep;
    rep.grid = shift_grid(y, x);
    rep.lower = Real(0);
    if (x == y) {
        rep.upper = Real(0);
        rep.shift = Real(0);
        return rep;
    }
    FragOptions o = opts;
    o.weight_zero_prefix = true;
    auto prof = make_profile(y, x, family, rep.grid, o);
    auto c = best_choice(prof, [](const Real&) { return true; });
    if (c.route >= 0) {
        rep.upper = c.value;
        rep.shift = prof.grid[c.index];
    }
    bool only_zero = !family.empty() && std::all_of(family.begin(), family.end(),
                                                    [](const FilteredComplex& z) { return z.empty(); });
    if (only_zero) {
        rep.lower = max(rep.upper.half(), interleaving_shift_invariant(x, y).half());
        rep.lower = min(rep.lower, rep.upper);
    }
    return rep;
}

Prop1Report prop1_bound(const FilteredComplex& x, const FilteredComplex& y) {
    Prop1Report rep;
    auto nx = normal_form(x), ny = normal_form(y);
    const auto& bx = nx.bars;
    const auto& by = ny.bars;
    rep.constant = Real(4 * static_cast<long long>(std::min(bx.bars.size(), by.bars.size())) + 1);
    auto matching = bottleneck_matching(bx, by, DeletionRule::Strict);
    rep.bottleneck = matching.cost;
    rep.matching = matching.pairs;
    if (!matching.cost.is_finite()) return rep;

    constexpr std::size_t none = static_cast<std::size_t>(-1);
    struct Origin {
        std::size_t ix, iy;
    };
    Barcode upper;
    std::vector<Origin> origin;
    std::vector<bool> used_x(bx.bars.size(), false), used_y(by.bars.size(), false);
    for (auto [i, j] : matching.pairs) {
        const auto& a = bx.bars[i];
        const auto& b = by.bars[j];
        upper.bars.push_back({a.degree, max(a.birth, b.birth), max(a.death, b.death)});
        origin.push_back({i, j});
        used_x[i] = used_y[j] = true;
    }
    for (std::size_t i = 0; i < bx.bars.size(); ++i)
        if (!used_x[i]) upper.bars.push_back(bx.bars[i]), origin.push_back({i, none});
    for (std::size_t j = 0; j < by.bars.size(); ++j)
        if (!used_y[j]) upper.bars.push_back(by.bars[j]), origin.push_back({none, j});
    auto m = interval_model(upper, x.p);
    auto starts = bar_starts(upper);
    auto sx = bar_starts(bx), sy = bar_starts(by);

    auto onto = [&](const NormalForm& nf, const std::vector<std::size_t>& starts_n, bool side_x) {
        SparseMatrix mat(nf.model.size(), m.size());
        for (std::size_t n = 0; n < upper.bars.size(); ++n) {
            std::size_t idx = side_x ? origin[n].ix : origin[n].iy;
            if (idx == none) continue;
            std::size_t width = upper.bars[n].death.is_pos_inf() ? 1 : 2;
            for (std::size_t k = 0; k < width; ++k) mat.set(starts_n[idx] + k, starts[n] + k, 1);
        }
        return compose(ChainMap{m, nf.model, 0, mat}, nf.from_model);
    };
    auto fx = onto(nx, sx, true);
    auto fy = onto(ny, sy, false);

    auto direction = [&](const ChainMap& to_cmp, const FilteredComplex& cmp, const ChainMap& to_target) {
        ConeDecomposition d;
        d.steps = cone_trick(to_cmp, cmp, Real(0));
        d.comparison = 1;
        d.steps.push_back(plain(finish_step(zero_complex(x.p), m, to_target, iso_defect(to_target))));
        return d;
    };
    rep.forward = direction(fy, y, fx);
    rep.backward = direction(fx, x, fy);
    rep.bound = max(decomposition_weight(*rep.forward), decomposition_weight(*rep.backward));
    return rep;
}

}  // namespace tpc
