#include "tpc/triangles.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace tpc {

namespace {

// Row echelon form over dense vectors, keyed by the first nonzero index.
class Echelon {
public:
    explicit Echelon(PrimeField f) : f_(f) {}

    bool insert(std::vector<Scalar> v) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] == 0) continue;
            auto it = rows_.find(i);
            if (it == rows_.end()) {
                Scalar inv = f_.inv(v[i]);
                for (auto& x : v) x = f_.mul(x, inv);
                rows_.emplace(i, std::move(v));
                return true;
            }
            Scalar c = v[i];
            for (std::size_t j = i; j < v.size(); ++j) v[j] = f_.sub(v[j], f_.mul(c, it->second[j]));
        }
        return false;
    }

private:
    PrimeField f_;
    std::map<std::size_t, std::vector<Scalar>> rows_;
};

std::vector<Scalar> dense(const SparseColumn& v, std::size_t n) {
    std::vector<Scalar> out(n, 0);
    for (const auto& e : v) out[e.row] = e.value;
    return out;
}

bool nonpositive(const Real& r) { return !(Real(0) < r); }

std::vector<Diagnostic> check_map(const ChainMap& f, const std::string& name) {
    std::vector<Diagnostic> out;
    if (f.degree != 0) out.push_back({"map", name + " has degree " + std::to_string(f.degree)});
    if (!is_chain_map(f)) out.push_back({"map", name + " is not a chain map"});
    if (!nonpositive(map_shift(f))) out.push_back({"shift", name + " raises levels by " + map_shift(f).str()});
    return out;
}

void append(std::vector<Diagnostic>& out, std::vector<Diagnostic> more) {
    for (auto& d : more) out.push_back(std::move(d));
}

ChainMap permutation(const FilteredComplex& source, const FilteredComplex& target,
                     const std::vector<std::size_t>& image) {
    SparseMatrix m(target.size(), source.size());
    for (std::size_t j = 0; j < image.size(); ++j) m.set(image[j], j, 1);
    return {source, target, 0, m};
}

SparseColumn offset(const SparseColumn& col, std::size_t by) {
    SparseColumn out = col;
    for (auto& e : out) e.row += by;
    return out;
}

bool is_identity_matrix(const ChainMap& f) {
    return f.source.size() == f.target.size() && f.matrix == SparseMatrix::identity(f.source.size());
}

bool sigma_of_identity_vanishes(const FilteredComplex& a) {
    if (a.empty()) return false;
    auto s = spectral_invariant(identity_map(a));
    return s && *s == Real(0);
}

}  // namespace

Acyclicity acyclicity_bound(const FilteredComplex& k) {
    Real h = min_homotopy_shift(identity_map(k), zero_map(k, k));
    return {acyclicity(k), max(Real(0), h)};
}

Real acyclicity(const FilteredComplex& k) {
    Real best(0);
    for (const auto& b : barcode(k).bars) {
        if (b.death.is_pos_inf()) return Real::infinity();
        best = max(best, b.death - b.birth);
    }
    return best;
}

Real iso_defect(const ChainMap& f) { return acyclicity(cone(f).complex); }

std::optional<ChainMap> right_inverse(const ChainMap& f, const Real& r) {
    MapProblem prob(shift(f.target, r), f.source, Real(0));
    prob.require_post(f, eta_map(f.target, r), Real(0));
    auto sol = prob.solve();
    if (!sol) return std::nullopt;
    return sol->particular;
}

std::optional<ChainMap> left_inverse(const ChainMap& f, const Real& r) {
    auto lowered = shift(f.source, -r);
    MapProblem prob(f.target, lowered, Real(0));
    prob.require_pre(f, eta_map(lowered, r), Real(0));
    auto sol = prob.solve();
    if (!sol) return std::nullopt;
    return sol->particular;
}

std::vector<ChainMap> independent_classes(const std::vector<ChainMap>& maps) {
    if (maps.empty()) return {};
    const auto& x = maps.front().source;
    const auto& y = maps.front().target;
    auto hom = hom_complex(x, y);
    Echelon ech(hom.field());
    for (std::size_t j = 0; j < hom.size(); ++j) {
        const auto& g = hom.generators[j];
        if (g.degree == -1 && nonpositive(g.filt)) ech.insert(dense(hom.boundary.column(j), hom.size()));
    }
    std::vector<ChainMap> out;
    for (const auto& m : maps)
        if (ech.insert(dense(map_to_hom(m), hom.size()))) out.push_back(m);
    return out;
}

std::optional<IsoSearch> min_r_iso(const FilteredComplex& xp, const FilteredComplex& y, const std::vector<Real>& shifts,
                                   std::size_t budget, bool heuristic) {
    std::optional<IsoSearch> best;
    std::size_t used = 0;
    auto consider = [&](const ChainMap& m, const Real& k, bool exhaustive) {
        Real d = iso_defect(m);
        if (!best || d < best->defect) best = IsoSearch{d, k, m, exhaustive};
        else if (!exhaustive) best->exhaustive = false;
    };
    for (const auto& k : shifts) {
        auto src = shift(xp, k);
        auto classes = chain_map_classes(src, y, Real(0));
        auto base = zero_map(src, y);
        std::size_t remaining = budget > used ? budget - used : 0;
        std::size_t visited = 0;
        bool complete = for_each_combination(classes, base, remaining, [&](const ChainMap& m) {
            ++visited;
            consider(m, k, true);
            return true;
        });
        used += visited;
        if (complete) continue;
        if (!heuristic) throw BudgetExceeded("min_r_iso: enumeration budget exceeded");
        consider(base, k, false);
        ChainMap all = base;
        for (const auto& c : classes) {
            consider(c, k, false);
            all = add_maps(all, c);
        }
        consider(all, k, false);
        if (best) best->exhaustive = false;
    }
    return best;
}

std::vector<Diagnostic> verify_triangle(const WeightedTriangle& t) {
    std::vector<Diagnostic> out;
    auto object = [&](bool ok, const std::string& what) {
        if (!ok) out.push_back({"object", what});
    };
    object(t.u.source == t.a && t.u.target == t.b, "u does not run from a to b");
    object(t.v.source == t.b && t.v.target == t.c, "v does not run from b to c");
    if (!t.weight.is_finite() || t.weight < Real(0)) {
        out.push_back({"weight", "weight must be a finite nonnegative number"});
        return out;
    }
    object(t.w.source == t.c && t.w.target == shift(translate(t.a, 1), -t.weight),
           "w does not run from c to the lowered translate of a");
    if (!out.empty()) return out;
    append(out, check_map(t.u, "u"));
    if (!out.empty()) return out;
    auto cu = cone(t.u);
    object(t.phi.source == cu.complex && t.phi.target == t.c, "phi does not run from Cone(u) to c");
    object(t.psi.source == shift(t.c, t.weight) && t.psi.target == cu.complex,
           "psi does not run from the raised c to Cone(u)");
    if (!out.empty()) return out;
    append(out, check_map(t.v, "v"));
    append(out, check_map(t.w, "w"));
    append(out, check_map(t.phi, "phi"));
    append(out, check_map(t.psi, "psi"));
    if (!out.empty()) return out;

    Real d = iso_defect(t.phi);
    if (t.weight < d)
        out.push_back({"phi-defect", "phi is only a " + d.str() + "-isomorphism, above weight " + t.weight.str()});
    if (!homotopic(compose(t.psi, t.phi), eta_map(t.c, t.weight), Real(0)))
        out.push_back({"phi-psi", "phi o psi is not homotopic to the comparison map"});
    if (!homotopic(t.v, compose(cu.incl, t.phi), Real(0)))
        out.push_back({"v-square", "v is not homotopic to phi o incl"});
    auto raised_w = rebase(t.w, shift(t.c, t.weight), translate(t.a, 1));
    if (!homotopic(raised_w, compose(t.psi, cu.proj), Real(0)))
        out.push_back({"w-square", "raised w is not homotopic to proj o psi"});
    return out;
}

WeightedTriangle triangle_from_map(const ChainMap& f) {
    auto m = cone(f);
    WeightedTriangle t;
    t.a = f.source;
    t.b = f.target;
    t.c = m.complex;
    t.u = f;
    t.v = m.incl;
    t.w = rebase(m.proj, t.c, shift(translate(t.a, 1), Real(0)));
    t.weight = Real(0);
    t.phi = identity_map(t.c);
    t.psi = rebase(t.phi, shift(t.c, Real(0)), t.c);
    return t;
}

WeightedTriangle eta_triangle(const FilteredComplex& a, const Real& r) {
    auto u = eta_map(a, r);
    auto m = cone(u);
    WeightedTriangle t;
    t.a = u.source;
    t.b = a;
    t.c = m.complex;
    t.u = u;
    t.v = m.incl;
    t.w = zero_map(t.c, shift(translate(t.a, 1), -r));
    t.weight = r;
    t.phi = identity_map(t.c);
    t.psi = eta_map(t.c, r);
    return t;
}

WeightedTriangle with_weight(const WeightedTriangle& t, const Real& r) {
    WeightedTriangle out = t;
    out.weight = r;
    out.w = rebase(t.w, t.c, shift(translate(t.a, 1), -r));
    out.psi = rebase(t.psi, shift(t.c, r), t.psi.target);
    return out;
}

WeightedTriangle trivial_triangle(const FilteredComplex& y) { return triangle_from_map(zero_map(zero_complex(y.p), y)); }

WeightedTriangle rotate(const WeightedTriangle& t) {
    if (!verify_triangle(t).empty()) throw std::invalid_argument("rotate: input is not a strict exact triangle");
    const Real& r = t.weight;
    auto fld = t.a.field();
    auto cu = cone(t.u);
    auto cv = cone(t.v);
    auto h = find_homotopy(compose(cu.incl, t.phi), t.v, Real(0));
    if (!h) throw std::logic_error("rotate: square does not commute");

    auto ta = translate(t.a, 1);
    ChainMap bar{ta, cv.complex, 0, SparseMatrix(cv.complex.size(), ta.size())};
    for (std::size_t j = 0; j < ta.size(); ++j) {
        const auto& ua = t.u.matrix.column(j);
        SparseColumn left = axpy(t.phi.matrix.column(cu.right_index(j)), fld.neg(1), apply(h->matrix, ua, fld), fld);
        SparseColumn col = left;
        for (const auto& e : scale(ua, fld.neg(1), fld)) col.push_back({cv.right_index(e.row), e.value});
        bar.matrix.set_column(j, std::move(col));
    }

    auto lowered = shift(ta, -r);
    MapProblem prob(cv.complex, lowered, Real(0));
    prob.require_pre(bar, eta_map(lowered, r), Real(0));
    auto sol = prob.solve();
    if (!sol) throw std::logic_error("rotate: no left inverse");
    const ChainMap& left = sol->particular;

    WeightedTriangle out;
    out.a = t.b;
    out.b = t.c;
    out.c = lowered;
    out.u = t.v;
    out.v = compose(cv.incl, left);
    out.weight = r + r;
    out.w = rebase(compose(bar, cv.proj), lowered, shift(translate(t.b, 1), -out.weight));
    out.phi = left;
    out.psi = rebase(bar, shift(lowered, out.weight), cv.complex);
    return out;
}

Octahedron octahedral(const WeightedTriangle& first, const WeightedTriangle& second) {
    if (!(first.c == second.a)) throw std::invalid_argument("octahedral: third object of the first triangle is not the first of the second");
    const Real& r = first.weight;
    const Real& s = second.weight;
    auto fld = first.a.field();
    auto c1 = cone(first.u);
    auto g = compose(first.phi, second.u);
    auto alpha = compose(c1.incl, g);
    Octahedron out;
    out.third = triangle_from_map(alpha);
    const auto& cc = out.third.c;
    const std::size_t na = second.b.size();
    const std::size_t nf = first.b.size();

    auto te = translate(first.a, 1);
    ChainMap mu{te, cc, 0, SparseMatrix(cc.size(), te.size())};
    for (std::size_t j = 0; j < te.size(); ++j) {
        SparseColumn col = g.matrix.column(c1.right_index(j));
        for (const auto& e : scale(first.u.matrix.column(j), fld.neg(1), fld)) col.push_back({na + e.row, e.value});
        mu.matrix.set_column(j, std::move(col));
    }
    auto k = cone(mu);
    auto cu = cone(second.u);

    ChainMap phi{k.complex, cu.complex, 0, SparseMatrix(cu.complex.size(), k.complex.size())};
    for (std::size_t j = 0; j < na; ++j) phi.matrix.set(j, j, 1);
    for (std::size_t j = 0; j < nf + te.size(); ++j)
        phi.matrix.set_column(na + j, offset(first.phi.matrix.column(j), na));

    MapProblem prob(shift(cu.complex, r), k.complex, Real(0));
    prob.require_post(phi, eta_map(cu.complex, r), Real(0));
    auto sol = prob.solve();
    if (!sol) throw std::logic_error("octahedral: no right inverse");

    auto phi2 = compose(phi, second.phi);
    auto psi2 = compose(shift_map(second.psi, r, r), sol->particular);

    WeightedTriangle& d = out.fourth;
    d.a = te;
    d.b = cc;
    d.c = second.c;
    d.u = mu;
    d.v = compose(k.incl, phi2);
    d.weight = r + s;
    d.w = rebase(compose(psi2, k.proj), d.c, shift(translate(te, 1), -d.weight));
    d.phi = phi2;
    d.psi = rebase(psi2, shift(d.c, d.weight), k.complex);
    return out;
}

WeightedTriangle translate_triangle(const WeightedTriangle& t, int k) {
    WeightedTriangle out;
    out.weight = t.weight;
    out.a = translate(t.a, k);
    out.b = translate(t.b, k);
    out.c = translate(t.c, k);
    out.u = translate_map(t.u, k);
    out.v = translate_map(t.v, k);
    out.w = rebase(translate_map(t.w, k), out.c, shift(translate(out.a, 1), -t.weight));
    auto cu = cone(out.u);
    auto moved = translate(t.phi.source, k);
    auto fld = t.a.field();
    SparseMatrix sign(cu.complex.size(), cu.complex.size());
    for (std::size_t i = 0; i < cu.complex.size(); ++i)
        sign.set(i, i, i < out.b.size() || k % 2 == 0 ? 1 : fld.neg(1));
    ChainMap to{cu.complex, moved, 0, sign};
    ChainMap from{moved, cu.complex, 0, sign};
    out.phi = compose(to, translate_map(t.phi, k));
    out.psi = compose(translate_map(t.psi, k), from);
    out.psi = rebase(out.psi, shift(out.c, t.weight), cu.complex);
    return out;
}

WeightedTriangle sum_triangles(const WeightedTriangle& x, const WeightedTriangle& y) {
    WeightedTriangle t;
    t.weight = max(x.weight, y.weight);
    t.a = direct_sum(x.a, y.a);
    t.b = direct_sum(x.b, y.b);
    t.c = direct_sum(x.c, y.c);
    t.u = rebase(direct_sum_maps(x.u, y.u), t.a, t.b);
    t.v = rebase(direct_sum_maps(x.v, y.v), t.b, t.c);
    auto wx = rebase(x.w, x.c, shift(translate(x.a, 1), -t.weight));
    auto wy = rebase(y.w, y.c, shift(translate(y.a, 1), -t.weight));
    t.w = rebase(direct_sum_maps(wx, wy), t.c, shift(translate(t.a, 1), -t.weight));

    auto cu = cone(t.u);
    auto split = direct_sum(x.phi.source, y.phi.source);
    const std::size_t bx = x.b.size(), by = y.b.size(), ax = x.a.size();
    std::vector<std::size_t> image(cu.complex.size());
    const std::size_t cx = x.phi.source.size();
    for (std::size_t i = 0; i < bx; ++i) image[i] = i;
    for (std::size_t i = 0; i < by; ++i) image[bx + i] = cx + i;
    for (std::size_t i = 0; i < ax; ++i) image[bx + by + i] = bx + i;
    for (std::size_t i = 0; i < y.a.size(); ++i) image[bx + by + ax + i] = cx + by + i;
    auto to_split = permutation(cu.complex, split, image);
    std::vector<std::size_t> inverse(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) inverse[image[i]] = i;
    auto from_split = permutation(split, cu.complex, inverse);

    t.phi = rebase(compose(to_split, direct_sum_maps(x.phi, y.phi)), cu.complex, t.c);
    auto px = rebase(x.psi, shift(x.c, t.weight), x.psi.target);
    auto py = rebase(y.psi, shift(y.c, t.weight), y.psi.target);
    auto ps = direct_sum_maps(px, py);
    t.psi = rebase(compose(rebase(ps, ps.source, split), from_split), shift(t.c, t.weight), cu.complex);
    return t;
}

std::optional<Real> uniform_shift(const FilteredComplex& x, const FilteredComplex& y) {
    if (x.empty() || x.size() != y.size() || x.p != y.p || !(x.boundary == y.boundary)) return std::nullopt;
    std::optional<Real> r;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto& a = x.generators[i];
        const auto& b = y.generators[i];
        if (a.id != b.id || a.degree != b.degree) return std::nullopt;
        Real d = b.filt - a.filt;
        if (r && !(*r == d)) return std::nullopt;
        r = d;
    }
    return r;
}

namespace {

void add_obstructions(const LooseTriangle& t, WeightCertificate& cert) {
    if (t.b.empty() && !t.a.empty()) {
        auto k = uniform_shift(translate(t.a, 1), t.c);
        if (!k || !is_identity_matrix(t.w) || !sigma_of_identity_vanishes(t.a)) return;
        if (!(Real(0) < *k)) {
            cert.lower_unstable = -*k;
            cert.lower_stable = -*k;
            cert.obstruction = "identity-rigid";
        } else {
            cert.lower_unstable = *k;
            cert.obstruction = "shifted-identity";
        }
    } else if (t.a.empty() && !t.b.empty()) {
        auto k = uniform_shift(t.b, t.c);
        if (!k || !is_identity_matrix(t.v) || !sigma_of_identity_vanishes(t.b)) return;
        cert.lower_unstable = k->abs();
        cert.obstruction = "sequence";
    }
}

std::vector<Real> search_grid(const LooseTriangle& t, const Real& r) {
    std::set<Real> base{Real(0), r};
    for (const auto* f : {&t.u, &t.v, &t.w}) {
        Real l = map_shift(*f);
        if (!l.is_finite()) continue;
        base.insert(l);
        base.insert(-l);
    }
    std::set<Real> out(base);
    for (const auto& x : base)
        for (const auto& y : base) out.insert(x + y);
    return {out.begin(), out.end()};
}

}  // namespace

WeightCertificate certify_weight(const LooseTriangle& t, const Real& r, bool stable, std::size_t budget) {
    WeightCertificate cert;
    add_obstructions(t, cert);
    auto grid = search_grid(t, r);
    std::vector<Real> ps;
    for (const auto& x : grid)
        if (!(x < Real(0)) && (stable || x == Real(0))) ps.push_back(x);
    std::size_t used = 0;

    for (const auto& weight : grid) {
        if (weight < Real(0) || r < weight) continue;
        for (const auto& p : ps)
            for (const auto& s : grid) {
                if (s < Real(0) || weight < s) continue;
                for (const auto& q : grid) {
                    if (q < Real(0) || s < q) continue;
                    auto a = shift(t.a, p);
                    auto b = shift(t.b, -q);
                    auto c = shift(t.c, -s);
                    auto top = shift(translate(a, 1), -weight);
                    auto u = rebase(t.u, a, b);
                    auto v = rebase(t.v, b, c);
                    auto w = rebase(t.w, c, top);
                    if (Real(0) < map_shift(u) || Real(0) < map_shift(v) || Real(0) < map_shift(w)) continue;
                    auto cu = cone(u);
                    MapProblem phis(cu.complex, c, Real(0));
                    phis.require_pre(cu.incl, v, Real(0));
                    auto sol = phis.solve();
                    if (!sol) continue;
                    auto dirs = independent_classes(sol->directions);
                    auto raised = shift(c, weight);
                    auto raised_w = rebase(w, raised, translate(a, 1));
                    std::optional<WeightedTriangle> found;
                    std::size_t remaining = budget > used ? budget - used : 0;
                    bool complete = for_each_combination(dirs, sol->particular, remaining, [&](const ChainMap& phi) {
                        ++used;
                        if (weight < iso_defect(phi)) return true;
                        MapProblem psis(raised, cu.complex, Real(0));
                        psis.require_post(phi, eta_map(c, weight), Real(0));
                        psis.require_post(cu.proj, raised_w, Real(0));
                        auto psi = psis.solve();
                        if (!psi) return true;
                        found = WeightedTriangle{a, b, c, u, v, w, weight, phi, psi->particular};
                        return false;
                    });
                    if (found) {
                        cert.upper = weight;
                        cert.p = p;
                        cert.q = q;
                        cert.s = s;
                        cert.witness = std::move(found);
                        return cert;
                    }
                    if (!complete) {
                        cert.budget_hit = true;
                        return cert;
                    }
                }
            }
    }
    return cert;
}

}  // namespace tpc
