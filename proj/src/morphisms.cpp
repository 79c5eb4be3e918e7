#include "tpc/morphisms.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tpc {

namespace {

SparseColumn normalize(std::vector<MatrixEntry> entries, const PrimeField& f) {
    std::sort(entries.begin(), entries.end(), [](const MatrixEntry& a, const MatrixEntry& b) { return a.row < b.row; });
    SparseColumn out;
    for (const auto& e : entries) {
        if (!out.empty() && out.back().row == e.row)
            out.back().value = f.add(out.back().value, e.value);
        else
            out.push_back(e);
        if (out.back().value == 0) out.pop_back();
    }
    return out;
}

/// Column of the hom differential for the elementary map x_j -> y_i.
SparseColumn hom_boundary_column(const FilteredComplex& x, const SparseMatrix& dx_t, const FilteredComplex& y,
                                 std::size_t j, std::size_t i) {
    PrimeField f = x.field();
    const std::size_t ny = y.size();
    int degree = y.generators[i].degree - x.generators[j].degree;
    Scalar s = f.neg(f.sign(degree));
    std::vector<MatrixEntry> entries;
    for (const auto& e : y.boundary.column(i)) entries.push_back({j * ny + e.row, e.value});
    for (const auto& e : dx_t.column(j)) entries.push_back({e.row * ny + i, f.mul(s, e.value)});
    return normalize(std::move(entries), f);
}

std::vector<Scalar> dense(const SparseColumn& v, std::size_t n) {
    std::vector<Scalar> out(n, 0);
    for (const auto& e : v) out[e.row] = e.value;
    return out;
}

/// Keeps a linearly independent subset (in order) of the given vectors.
std::vector<std::vector<Scalar>> independent(const std::vector<std::vector<Scalar>>& vs, const PrimeField& f) {
    std::vector<std::vector<Scalar>> echelon;
    std::vector<std::size_t> pivot;
    std::vector<std::vector<Scalar>> kept;
    for (const auto& v : vs) {
        auto w = v;
        for (std::size_t k = 0; k < echelon.size(); ++k) {
            Scalar c = w[pivot[k]];
            if (c == 0) continue;
            for (std::size_t t = 0; t < w.size(); ++t) w[t] = f.sub(w[t], f.mul(c, echelon[k][t]));
        }
        auto it = std::find_if(w.begin(), w.end(), [](Scalar s) { return s != 0; });
        if (it == w.end()) continue;
        std::size_t piv = static_cast<std::size_t>(it - w.begin());
        Scalar inv = f.inv(w[piv]);
        for (auto& t : w) t = f.mul(t, inv);
        for (std::size_t k = 0; k < echelon.size(); ++k) {
            Scalar c = echelon[k][piv];
            if (c == 0) continue;
            for (std::size_t t = 0; t < w.size(); ++t) echelon[k][t] = f.sub(echelon[k][t], f.mul(c, w[t]));
        }
        echelon.push_back(std::move(w));
        pivot.push_back(piv);
        kept.push_back(v);
    }
    return kept;
}

void check_same_endpoints(const ChainMap& f, const ChainMap& g) {
    if (!(f.source == g.source) || !(f.target == g.target) || f.degree != g.degree)
        throw std::invalid_argument("maps do not share endpoints and degree");
}

}  // namespace

FilteredComplex hom_complex(const FilteredComplex& x, const FilteredComplex& y) {
    if (x.p != y.p) throw std::invalid_argument("hom_complex: characteristic mismatch");
    FilteredComplex h;
    h.p = x.p;
    const std::size_t nx = x.size(), ny = y.size();
    h.generators.reserve(nx * ny);
    for (std::size_t j = 0; j < nx; ++j)
        for (std::size_t i = 0; i < ny; ++i) {
            const auto& a = x.generators[j];
            const auto& b = y.generators[i];
            h.generators.push_back({a.id + "->" + b.id, b.degree - a.degree, b.filt - a.filt});
        }
    h.boundary = SparseMatrix(nx * ny, nx * ny);
    auto dx_t = x.boundary.transposed();
    for (std::size_t j = 0; j < nx; ++j)
        for (std::size_t i = 0; i < ny; ++i) h.boundary.set_column(j * ny + i, hom_boundary_column(x, dx_t, y, j, i));
    return h;
}

SparseColumn map_to_hom(const ChainMap& f) {
    SparseColumn v;
    const std::size_t ny = f.target.size();
    for (std::size_t j = 0; j < f.matrix.cols(); ++j)
        for (const auto& e : f.matrix.column(j)) v.push_back({j * ny + e.row, e.value});
    return v;
}

ChainMap hom_to_map(const SparseColumn& v, const FilteredComplex& x, const FilteredComplex& y, int degree) {
    ChainMap f{x, y, degree, SparseMatrix(y.size(), x.size())};
    const std::size_t ny = y.size();
    for (const auto& e : v) f.matrix.set(e.row % ny, e.row / ny, e.value);
    return f;
}

namespace {

struct HomotopySystem {
    FilteredComplex hom;
    std::vector<Scalar> rhs;
    int degree;

    HomotopySystem(const ChainMap& f, const ChainMap& g)
        : hom(hom_complex(f.source, f.target)),
          rhs(dense(map_to_hom(add_maps(f, g, f.field().neg(1))), f.source.size() * f.target.size())),
          degree(f.degree - 1) {}

    std::optional<ChainMap> solve(const ChainMap& f, const Real& s) const {
        std::vector<bool> mask(hom.size());
        for (std::size_t k = 0; k < hom.size(); ++k)
            mask[k] = hom.generators[k].degree == degree && hom.generators[k].filt <= s;
        auto x = solve_masked(hom.boundary, rhs, mask, hom.field());
        if (!x) return std::nullopt;
        SparseColumn v;
        for (std::size_t k = 0; k < x->size(); ++k)
            if ((*x)[k] != 0) v.push_back({k, (*x)[k]});
        return hom_to_map(v, f.source, f.target, degree);
    }
};

}  // namespace

std::optional<ChainMap> find_homotopy(const ChainMap& f, const ChainMap& g, const Real& s) {
    check_same_endpoints(f, g);
    if (f.matrix == g.matrix) return zero_map(f.source, f.target, f.degree - 1);
    return HomotopySystem(f, g).solve(f, s);
}

bool homotopic(const ChainMap& f, const ChainMap& g, const Real& s) { return find_homotopy(f, g, s).has_value(); }

std::vector<Real> shift_candidates(const FilteredComplex& x, const FilteredComplex& y) {
    std::set<Real> s;
    for (const auto& a : x.generators)
        for (const auto& b : y.generators) s.insert(b.filt - a.filt);
    return {s.begin(), s.end()};
}

Real min_homotopy_shift(const ChainMap& f, const ChainMap& g) {
    check_same_endpoints(f, g);
    if (f.matrix == g.matrix) return Real::neg_infinity();
    auto cands = shift_candidates(f.source, f.target);
    HomotopySystem sys(f, g);
    if (cands.empty() || !sys.solve(f, cands.back())) return Real::infinity();
    std::size_t lo = 0, hi = cands.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (sys.solve(f, cands[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return cands[lo];
}

MappingCone cone(const ChainMap& f) {
    if (f.degree != 0) throw std::invalid_argument("cone: map must have degree 0");
    if (Real(0) < map_shift(f)) throw std::invalid_argument("cone: map shift " + map_shift(f).str() + " exceeds 0");
    if (!is_chain_map(f)) throw std::invalid_argument("cone: not a chain map");
    MappingCone mc;
    const std::size_t ny = f.target.size(), nx = f.source.size();
    mc.complex = direct_sum(f.target, translate(f.source, 1));
    if (ny > 0 && nx > 0) {
        PrimeField fld = f.field();
        for (std::size_t j = 0; j < nx; ++j) {
            SparseColumn col = mc.complex.boundary.column(ny + j);
            col = axpy(col, 1, f.matrix.column(j), fld);
            mc.complex.boundary.set_column(ny + j, std::move(col));
        }
    }
    mc.incl = {f.target, mc.complex, 0, SparseMatrix(mc.complex.size(), ny)};
    for (std::size_t i = 0; i < ny; ++i) mc.incl.matrix.set(i, i, 1);
    mc.proj = {mc.complex, translate(f.source, 1), 0, SparseMatrix(nx, mc.complex.size())};
    for (std::size_t j = 0; j < nx; ++j) mc.proj.matrix.set(j, ny + j, 1);
    return mc;
}

std::optional<Real> spectral_invariant(const ChainMap& f) {
    if (f.degree != 0) throw std::invalid_argument("spectral_invariant: map must have degree 0");
    if (!is_chain_map(f)) throw std::invalid_argument("spectral_invariant: not a chain map");
    auto hom = hom_complex(f.source, f.target);
    auto basis = persistence_basis(hom);
    auto coords = basis.coordinates(map_to_hom(f));
    std::optional<Real> sigma;
    for (std::size_t e = 0; e < coords.size(); ++e) {
        const auto& el = basis.elements[e];
        if (coords[e] == 0 || el.kind != PersistenceBasis::Kind::Essential) continue;
        const Real& level = hom.generators[el.lead].filt;
        if (!sigma || *sigma < level) sigma = level;
    }
    return sigma;
}

std::vector<ChainMap> chain_map_classes(const FilteredComplex& x, const FilteredComplex& y, const Real& level) {
    auto hom = hom_complex(x, y);
    auto basis = persistence_basis(hom);
    std::vector<ChainMap> out;
    for (const auto& el : basis.elements) {
        const auto& g = hom.generators[el.lead];
        if (g.degree != 0 || level < g.filt) continue;
        if (el.kind == PersistenceBasis::Kind::Essential ||
            (el.kind == PersistenceBasis::Kind::Birth &&
             level < hom.generators[basis.elements[el.partner].lead].filt))
            out.push_back(hom_to_map(el.vector, x, y, 0));
    }
    return out;
}

bool for_each_combination(const std::vector<ChainMap>& maps, const ChainMap& base, std::size_t limit,
                          const std::function<bool(const ChainMap&)>& visit) {
    const Scalar p = base.source.p;
    std::size_t total = 1;
    for (std::size_t k = 0; k < maps.size(); ++k) {
        if (total > limit / p) return false;
        total *= p;
    }
    std::vector<Scalar> coeff(maps.size(), 0);
    for (std::size_t n = 0; n < total; ++n) {
        ChainMap m = base;
        for (std::size_t k = 0; k < maps.size(); ++k)
            if (coeff[k] != 0) m = add_maps(m, maps[k], coeff[k]);
        if (!visit(m)) return true;
        for (std::size_t k = 0; k < coeff.size(); ++k) {
            if (++coeff[k] < p) break;
            coeff[k] = 0;
        }
    }
    return true;
}

MapProblem::MapProblem(FilteredComplex source, FilteredComplex target, Real shift)
    : source_(std::move(source)), target_(std::move(target)), shift_(std::move(shift)) {}

void MapProblem::require_post(const ChainMap& left, const ChainMap& g, const Real& s) {
    require(left, std::nullopt, g, s);
}

void MapProblem::require_pre(const ChainMap& right, const ChainMap& g, const Real& s) {
    require(std::nullopt, right, g, s);
}

void MapProblem::require(const std::optional<ChainMap>& left, const std::optional<ChainMap>& right, const ChainMap& g,
                         const Real& s) {
    if (left && !(left->source == target_)) throw std::invalid_argument("MapProblem: left factor does not match");
    if (right && !(right->target == source_)) throw std::invalid_argument("MapProblem: right factor does not match");
    const auto& dom = right ? right->source : source_;
    const auto& cod = left ? left->target : target_;
    if (!(g.source == dom) || !(g.target == cod) || g.degree != 0)
        throw std::invalid_argument("MapProblem: target map has wrong endpoints");
    constraints_.push_back({left, right, g, s});
}

std::optional<MapProblem::Solutions> MapProblem::solve() const {
    PrimeField f = source_.field();
    const std::size_t ns = source_.size(), nt = target_.size();
    const std::size_t nx = ns * nt;

    std::size_t unknowns = nx, rows = nx;
    std::vector<std::size_t> h_offset, r_offset;
    for (const auto& c : constraints_) {
        std::size_t sz = c.g.source.size() * c.g.target.size();
        h_offset.push_back(unknowns);
        r_offset.push_back(rows);
        unknowns += sz;
        rows += sz;
    }

    SparseMatrix a(rows, unknowns);
    std::vector<Scalar> b(rows, 0);
    std::vector<bool> mask(unknowns, false);

    auto chain_hom = hom_complex(source_, target_);
    for (std::size_t k = 0; k < nx; ++k) {
        const auto& g = chain_hom.generators[k];
        mask[k] = g.degree == 0 && g.filt <= shift_;
    }

    std::vector<std::vector<MatrixEntry>> cols(unknowns);
    for (std::size_t k = 0; k < nx; ++k)
        if (mask[k]) cols[k] = chain_hom.boundary.column(k);

    for (std::size_t c = 0; c < constraints_.size(); ++c) {
        const auto& con = constraints_[c];
        const auto& dom = con.g.source;
        const auto& cod = con.g.target;
        const std::size_t ncod = cod.size();
        const std::size_t off = r_offset[c];
        std::optional<SparseMatrix> right_t;
        if (con.right) right_t = con.right->matrix.transposed();

        // L X R contributions.
        for (std::size_t j = 0; j < ns; ++j)
            for (std::size_t i = 0; i < nt; ++i) {
                std::size_t k = j * nt + i;
                if (!mask[k]) continue;
                SparseColumn rrow = right_t ? right_t->column(j) : SparseColumn{{j, 1}};
                SparseColumn lcol = con.left ? con.left->matrix.column(i) : SparseColumn{{i, 1}};
                for (const auto& re : rrow)
                    for (const auto& le : lcol)
                        cols[k].push_back({off + re.row * ncod + le.row, f.mul(re.value, le.value)});
            }

        // Homotopy contributions: -(d H + H d).
        auto hom = hom_complex(dom, cod);
        for (std::size_t k = 0; k < hom.size(); ++k) {
            const auto& g = hom.generators[k];
            if (g.degree != -1 || !(g.filt <= con.s)) continue;
            std::size_t u = h_offset[c] + k;
            mask[u] = true;
            for (const auto& e : hom.boundary.column(k)) cols[u].push_back({off + e.row, f.neg(e.value)});
        }

        for (const auto& e : map_to_hom(con.g)) b[off + e.row] = e.value;
    }

    for (std::size_t u = 0; u < unknowns; ++u)
        if (!cols[u].empty()) a.set_column(u, normalize(std::move(cols[u]), f));

    auto sol = solve_affine(a, b, mask, f);
    if (!sol) return std::nullopt;

    auto to_map = [&](const std::vector<Scalar>& v) {
        SparseColumn col;
        for (std::size_t k = 0; k < nx; ++k)
            if (v[k] != 0) col.push_back({k, v[k]});
        return hom_to_map(col, source_, target_, 0);
    };
    Solutions out{to_map(sol->particular), {}};
    std::vector<std::vector<Scalar>> projected;
    for (const auto& k : sol->kernel) projected.emplace_back(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(nx));
    for (const auto& v : independent(projected, f)) out.directions.push_back(to_map(v));
    return out;
}

namespace {

bool interleaved_at(const FilteredComplex& x, const FilteredComplex& y, const Real& r, std::size_t limit) {
    auto classes = chain_map_classes(x, y, r);
    auto id_x = identity_map(x);
    auto id_y = identity_map(y);
    bool found = false;
    bool complete = for_each_combination(classes, zero_map(x, y), limit, [&](const ChainMap& phi) {
        MapProblem prob(y, x, r);
        prob.require_pre(phi, id_x, r * Real(2));
        prob.require_post(phi, id_y, r * Real(2));
        found = prob.solve().has_value();
        return !found;
    });
    if (!complete) throw BudgetExceeded("interleaving_chain_level: enumeration budget exceeded");
    return found;
}

}  // namespace

Real interleaving_chain_level(const FilteredComplex& x, const FilteredComplex& y, std::size_t limit) {
    std::vector<Real> levels;
    for (const auto& g : x.generators) levels.push_back(g.filt);
    for (const auto& g : y.generators) levels.push_back(g.filt);
    std::set<Real> cands{Real(0)};
    for (const auto& a : levels)
        for (const auto& b : levels) {
            Real d = (a - b).abs();
            cands.insert(d);
            cands.insert(d.half());
        }
    std::vector<Real> sorted(cands.begin(), cands.end());
    if (!interleaved_at(x, y, sorted.back(), limit)) return Real::infinity();
    std::size_t lo = 0, hi = sorted.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (interleaved_at(x, y, sorted[mid], limit))
            hi = mid;
        else
            lo = mid + 1;
    }
    return sorted[lo];
}

}  // namespace tpc
