#include "tpc/persistence.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>

namespace tpc {

std::size_t Barcode::count_at(const Real& r, int degree) const {
    std::size_t n = 0;
    for (const auto& b : bars)
        if (b.degree == degree && b.birth <= r && r < b.death) ++n;
    return n;
}

std::vector<int> Barcode::degrees() const {
    std::vector<int> out;
    for (const auto& b : bars)
        if (out.empty() || out.back() != b.degree) out.push_back(b.degree);
    return out;
}

Barcode Barcode::in_degree(int degree) const {
    Barcode out;
    for (const auto& b : bars)
        if (b.degree == degree) out.bars.push_back(b);
    return out;
}

Barcode Barcode::shifted(const Real& r) const {
    Barcode out = *this;
    for (auto& b : out.bars) {
        b.birth += r;
        b.death += r;
    }
    return out;
}

Barcode make_barcode(std::vector<Bar> bars) {
    std::erase_if(bars, [](const Bar& b) { return !(b.birth < b.death); });
    std::sort(bars.begin(), bars.end());
    return {std::move(bars)};
}

std::vector<Scalar> PersistenceBasis::coordinates(const SparseColumn& v) const {
    PrimeField f(p);
    std::vector<Scalar> out(elements.size(), 0);
    SparseColumn rest = v;
    while (!rest.empty()) {
        auto top = std::max_element(rest.begin(), rest.end(), [&](const MatrixEntry& a, const MatrixEntry& b) {
            return position[a.row] < position[b.row];
        });
        std::size_t e = by_lead[top->row];
        const auto& el = elements[e];
        Scalar lead_coeff = lookup(el.vector, el.lead);
        Scalar c = f.mul(top->value, f.inv(lead_coeff));
        out[e] = f.add(out[e], c);
        rest = axpy(rest, f.neg(c), el.vector, f);
    }
    return out;
}

PersistenceBasis persistence_basis(const FilteredComplex& c) {
    PrimeField f = c.field();
    const std::size_t n = c.size();
    PersistenceBasis basis;
    basis.p = c.p;
    auto order = canonical_order(c);
    basis.position.assign(n, 0);
    for (std::size_t k = 0; k < n; ++k) basis.position[order[k]] = k;

    SparseMatrix permuted(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        SparseColumn col;
        for (const auto& e : c.boundary.column(order[k])) col.push_back({basis.position[e.row], e.value});
        std::sort(col.begin(), col.end(), [](const MatrixEntry& a, const MatrixEntry& b) { return a.row < b.row; });
        permuted.set_column(k, std::move(col));
    }
    auto red = reduce_columns(permuted, f);

    auto to_original = [&](const SparseColumn& col) {
        SparseColumn out;
        for (const auto& e : col) out.push_back({order[e.row], e.value});
        std::sort(out.begin(), out.end(), [](const MatrixEntry& a, const MatrixEntry& b) { return a.row < b.row; });
        return out;
    };

    std::vector<bool> is_pivot_row(n, false);
    for (const auto& [col, row] : red.pivots) is_pivot_row[row] = true;

    basis.by_lead.assign(n, PersistenceBasis::npos);
    for (std::size_t k = 0; k < n; ++k) {
        if (red.pivots.count(k)) {
            std::size_t row = red.pivots.at(k);
            std::size_t death = basis.elements.size();
            basis.elements.push_back({PersistenceBasis::Kind::Death, order[k], death + 1, to_original(red.transform.column(k))});
            basis.elements.push_back({PersistenceBasis::Kind::Birth, order[row], death, to_original(red.reduced.column(k))});
            basis.by_lead[order[k]] = death;
            basis.by_lead[order[row]] = death + 1;
        } else if (!is_pivot_row[k]) {
            basis.by_lead[order[k]] = basis.elements.size();
            basis.elements.push_back({PersistenceBasis::Kind::Essential, order[k], PersistenceBasis::npos,
                                      to_original(red.transform.column(k))});
        }
    }
    return basis;
}

Barcode barcode_from_basis(const FilteredComplex& c, const PersistenceBasis& basis) {
    std::vector<Bar> bars;
    for (const auto& el : basis.elements) {
        const auto& g = c.generators[el.lead];
        if (el.kind == PersistenceBasis::Kind::Essential) {
            bars.push_back({g.degree, g.filt, Real::infinity()});
        } else if (el.kind == PersistenceBasis::Kind::Birth) {
            const auto& killer = c.generators[basis.elements[el.partner].lead];
            bars.push_back({g.degree, g.filt, killer.filt});
        }
    }
    return make_barcode(std::move(bars));
}

Barcode barcode(const FilteredComplex& c) { return barcode_from_basis(c, persistence_basis(c)); }

std::size_t persistence_dims(const FilteredComplex& c, const Real& r, int degree) {
    auto block_rank = [&](int from) {
        std::vector<std::size_t> cols, rows;
        std::vector<std::size_t> row_index(c.size(), 0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            const auto& g = c.generators[i];
            if (!(g.filt <= r)) continue;
            if (g.degree == from) cols.push_back(i);
            if (g.degree == from + 1) {
                row_index[i] = rows.size();
                rows.push_back(i);
            }
        }
        SparseMatrix m(rows.size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (const auto& e : c.boundary.column(cols[j])) {
                const auto& g = c.generators[e.row];
                if (g.degree == from + 1 && g.filt <= r) m.set(row_index[e.row], j, e.value);
            }
        return rank(m, c.field());
    };
    std::size_t cells = 0;
    for (const auto& g : c.generators)
        if (g.degree == degree && g.filt <= r) ++cells;
    return cells - block_rank(degree) - block_rank(degree - 1);
}

FilteredComplex interval_model(const Barcode& b, Scalar p) {
    std::vector<Generator> gens;
    std::vector<BoundaryTerm> terms;
    for (std::size_t n = 0; n < b.bars.size(); ++n) {
        const auto& bar = b.bars[n];
        std::string stem = "I" + std::to_string(n);
        if (bar.death.is_pos_inf()) {
            gens.push_back({stem + ".e", bar.degree, bar.birth});
        } else {
            gens.push_back({stem + ".y", bar.degree - 1, bar.death});
            gens.push_back({stem + ".x", bar.degree, bar.birth});
            terms.push_back({stem + ".y", stem + ".x", 1});
        }
    }
    return make_complex(std::move(gens), terms, p);
}

NormalForm normal_form(const FilteredComplex& c) {
    PrimeField f = c.field();
    auto basis = persistence_basis(c);
    NormalForm nf;

    // Kept elements, ordered like the bars of the model.
    struct Kept {
        Bar bar;
        std::size_t top;     // Death or Essential element
        std::size_t bottom;  // Birth element, npos for essential
    };
    std::vector<Kept> kept;
    std::vector<std::size_t> dropped_births;
    for (std::size_t e = 0; e < basis.elements.size(); ++e) {
        const auto& el = basis.elements[e];
        const auto& g = c.generators[el.lead];
        if (el.kind == PersistenceBasis::Kind::Essential) {
            kept.push_back({{g.degree, g.filt, Real::infinity()}, e, PersistenceBasis::npos});
        } else if (el.kind == PersistenceBasis::Kind::Birth) {
            const auto& killer = c.generators[basis.elements[el.partner].lead];
            if (g.filt < killer.filt)
                kept.push_back({{g.degree, g.filt, killer.filt}, el.partner, e});
            else
                dropped_births.push_back(e);
        }
    }
    std::stable_sort(kept.begin(), kept.end(), [](const Kept& a, const Kept& b) { return a.bar < b.bar; });
    for (const auto& k : kept) nf.bars.bars.push_back(k.bar);
    nf.model = interval_model(nf.bars, c.p);

    // Model generator index for each kept element.
    std::vector<std::size_t> slot(basis.elements.size(), PersistenceBasis::npos);
    std::size_t next = 0;
    for (const auto& k : kept) {
        if (k.bottom == PersistenceBasis::npos) {
            slot[k.top] = next++;
        } else {
            slot[k.top] = next++;
            slot[k.bottom] = next++;
        }
    }

    SparseMatrix g(c.size(), nf.model.size());
    for (std::size_t e = 0; e < basis.elements.size(); ++e)
        if (slot[e] != PersistenceBasis::npos) g.set_column(slot[e], basis.elements[e].vector);

    SparseMatrix to(nf.model.size(), c.size());
    SparseMatrix h(c.size(), c.size());
    for (std::size_t j = 0; j < c.size(); ++j) {
        auto coords = basis.coordinates({{j, 1}});
        for (std::size_t e = 0; e < coords.size(); ++e)
            if (coords[e] != 0 && slot[e] != PersistenceBasis::npos) to.set(slot[e], j, coords[e]);
        SparseColumn hj;
        for (std::size_t b : dropped_births)
            if (coords[b] != 0) hj = axpy(hj, coords[b], basis.elements[basis.elements[b].partner].vector, f);
        h.set_column(j, std::move(hj));
    }

    nf.to_model = {c, nf.model, 0, std::move(to)};
    nf.from_model = {nf.model, c, 0, std::move(g)};
    nf.homotopy = {c, c, -1, std::move(h)};
    return nf;
}

namespace {

/// Maximum bipartite matching size (Hopcroft-Karp).
class BipartiteMatcher {
public:
    BipartiteMatcher(std::size_t left, std::size_t right) : adj_(left), match_l_(left, none), match_r_(right, none) {}

    void add_edge(std::size_t l, std::size_t r) { adj_[l].push_back(r); }

    std::size_t solve() {
        std::size_t result = 0;
        while (bfs())
            for (std::size_t l = 0; l < adj_.size(); ++l)
                if (match_l_[l] == none && dfs(l)) ++result;
        return result;
    }

    /// Right vertex matched to l, or none.
    std::size_t partner(std::size_t l) const { return match_l_[l]; }

private:
    static constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

    bool bfs() {
        dist_.assign(adj_.size(), none);
        std::queue<std::size_t> q;
        for (std::size_t l = 0; l < adj_.size(); ++l)
            if (match_l_[l] == none) {
                dist_[l] = 0;
                q.push(l);
            }
        bool found = false;
        while (!q.empty()) {
            std::size_t l = q.front();
            q.pop();
            for (std::size_t r : adj_[l]) {
                std::size_t next = match_r_[r];
                if (next == none) {
                    found = true;
                } else if (dist_[next] == none) {
                    dist_[next] = dist_[l] + 1;
                    q.push(next);
                }
            }
        }
        return found;
    }

    bool dfs(std::size_t l) {
        for (std::size_t r : adj_[l]) {
            std::size_t next = match_r_[r];
            if (next == none || (dist_[next] == dist_[l] + 1 && dfs(next))) {
                match_l_[l] = r;
                match_r_[r] = l;
                return true;
            }
        }
        dist_[l] = none;
        return false;
    }

    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::size_t> match_l_, match_r_, dist_;
};

Real match_cost(const Bar& a, const Bar& b) {
    bool ia = a.death.is_pos_inf(), ib = b.death.is_pos_inf();
    if (ia != ib) return Real::infinity();
    Real start = (a.birth - b.birth).abs();
    if (ia) return start;
    return max(start, (a.death - b.death).abs());
}

Real deletion_cost(const Bar& a, DeletionRule rule) {
    if (a.death.is_pos_inf()) return Real::infinity();
    Real len = a.death - a.birth;
    return rule == DeletionRule::Strict ? len * Real(2) : len.half();
}

std::optional<std::vector<std::pair<std::size_t, std::size_t>>> match_at(const std::vector<Bar>& x,
                                                                          const std::vector<Bar>& y, const Real& tau,
                                                                          DeletionRule rule) {
    const std::size_t n = x.size(), m = y.size();
    BipartiteMatcher bm(n + m, m + n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j)
            if (match_cost(x[i], y[j]) <= tau) bm.add_edge(i, j);
        if (deletion_cost(x[i], rule) <= tau) bm.add_edge(i, m + i);
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (deletion_cost(y[j], rule) <= tau) bm.add_edge(n + j, j);
        for (std::size_t i = 0; i < n; ++i) bm.add_edge(n + j, m + i);
    }
    if (bm.solve() != n + m) return std::nullopt;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        if (bm.partner(i) < m) pairs.emplace_back(i, bm.partner(i));
    return pairs;
}

bool feasible(const std::vector<Bar>& x, const std::vector<Bar>& y, const Real& tau, DeletionRule rule) {
    return match_at(x, y, tau, rule).has_value();
}

Real bottleneck_degree(const std::vector<Bar>& x, const std::vector<Bar>& y, DeletionRule rule) {
    auto infinite = [](const std::vector<Bar>& v) {
        return std::count_if(v.begin(), v.end(), [](const Bar& b) { return b.death.is_pos_inf(); });
    };
    if (infinite(x) != infinite(y)) return Real::infinity();
    std::set<Real> cands{Real(0)};
    for (const auto& a : x)
        for (const auto& b : y) {
            Real c = match_cost(a, b);
            if (c.is_finite()) cands.insert(c);
        }
    for (const auto* v : {&x, &y})
        for (const auto& a : *v) {
            Real c = deletion_cost(a, rule);
            if (c.is_finite()) cands.insert(c);
        }
    std::vector<Real> sorted(cands.begin(), cands.end());
    std::size_t lo = 0, hi = sorted.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (feasible(x, y, sorted[mid], rule))
            hi = mid;
        else
            lo = mid + 1;
    }
    return sorted[lo];
}

}  // namespace

Real bottleneck(const Barcode& a, const Barcode& b, DeletionRule rule) {
    std::set<int> degrees;
    for (const auto& bar : a.bars) degrees.insert(bar.degree);
    for (const auto& bar : b.bars) degrees.insert(bar.degree);
    Real out(0);
    for (int d : degrees) out = max(out, bottleneck_degree(a.in_degree(d).bars, b.in_degree(d).bars, rule));
    return out;
}

BarMatching bottleneck_matching(const Barcode& a, const Barcode& b, DeletionRule rule) {
    BarMatching out;
    out.cost = bottleneck(a, b, rule);
    if (!out.cost.is_finite()) return out;
    std::set<int> degrees;
    for (const auto& bar : a.bars) degrees.insert(bar.degree);
    for (const auto& bar : b.bars) degrees.insert(bar.degree);
    for (int d : degrees) {
        std::vector<std::size_t> ia, ib;
        std::vector<Bar> xa, xb;
        for (std::size_t i = 0; i < a.bars.size(); ++i)
            if (a.bars[i].degree == d) ia.push_back(i), xa.push_back(a.bars[i]);
        for (std::size_t j = 0; j < b.bars.size(); ++j)
            if (b.bars[j].degree == d) ib.push_back(j), xb.push_back(b.bars[j]);
        auto pairs = match_at(xa, xb, out.cost, rule);
        if (!pairs) throw std::logic_error("bottleneck_matching: no matching at the optimal cost");
        for (auto [i, j] : *pairs) out.pairs.emplace_back(ia[i], ib[j]);
    }
    return out;
}

Real interleaving(const FilteredComplex& x, const FilteredComplex& y) {
    return bottleneck(barcode(x), barcode(y), DeletionRule::Conventional);
}

}  // namespace tpc
