#include "tpc/ingestion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

namespace tpc {

namespace {

struct RawSimplex {
    std::vector<std::size_t> verts;  // increasing
    Real level;
};

std::string join(const std::vector<std::size_t>& verts, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (i) out += ',';
        out += names[verts[i]];
    }
    return out;
}

FilteredComplex reduced_chains(const std::vector<std::string>& names, std::vector<RawSimplex> simplices, Scalar p) {
    std::stable_sort(simplices.begin(), simplices.end(),
                     [](const RawSimplex& a, const RawSimplex& b) { return a.verts.size() < b.verts.size(); });
    std::optional<std::size_t> root;
    for (std::size_t i = 0; i < simplices.size(); ++i) {
        if (simplices[i].verts.size() != 1) break;
        auto key = [&](std::size_t k) { return std::pair(simplices[k].level, names[simplices[k].verts[0]]); };
        if (!root || key(i) < key(*root)) root = i;
    }
    PrimeField fld(p);
    FilteredComplex c;
    c.p = p;
    std::map<std::vector<std::size_t>, std::size_t> index;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < simplices.size(); ++i) {
        if (root && i == *root) continue;
        const auto& s = simplices[i];
        index[s.verts] = c.generators.size();
        c.generators.push_back({join(s.verts, names), -static_cast<int>(s.verts.size() - 1), s.level});
        kept.push_back(i);
    }
    auto root_verts = root ? simplices[*root].verts : std::vector<std::size_t>{};
    c.boundary = SparseMatrix(c.size(), c.size());
    for (std::size_t j = 0; j < kept.size(); ++j) {
        const auto& s = simplices[kept[j]];
        if (s.verts.size() < 2) continue;
        for (std::size_t i = 0; i < s.verts.size(); ++i) {
            auto face = s.verts;
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
            if (face == root_verts) continue;
            auto it = index.find(face);
            if (it == index.end())
                throw std::invalid_argument("missing face " + join(face, names) + " of " + join(s.verts, names));
            if (s.level < c.generators[it->second].filt)
                throw std::invalid_argument("face " + join(face, names) + " sits above " + join(s.verts, names));
            c.boundary.add_to(it->second, j, fld.sign(static_cast<long long>(i)), fld);
        }
    }
    return c;
}

Real floor_level(double x) {
    if (std::isinf(x)) return x > 0 ? Real::infinity() : Real::neg_infinity();
    return Real(static_cast<long long>(std::floor(x * 1e12)), 1000000000000LL);
}

Real ceil_level(double x) {
    if (std::isinf(x)) return x > 0 ? Real::infinity() : Real::neg_infinity();
    return Real(static_cast<long long>(std::ceil(x * 1e12)), 1000000000000LL);
}

std::string point_label(const std::string& x, double t) { return x + "@" + Real::from_double(t).str(); }

void check_grid(const std::vector<double>& grid, double lo, double hi, const char* what) {
    for (double t : grid)
        if (!(t >= lo && t <= hi)) throw std::invalid_argument(std::string(what) + ": grid value out of range");
}

std::vector<double> sorted_unique(std::vector<double> g) {
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

double cone_distance(double half_diam, double d, double t, double tp) {
    return half_diam * std::fabs(t - tp) + std::min(t, tp) * d;
}

double suspension_distance(double half_diam, double d, double t, double tp) {
    return half_diam * std::fabs(t - tp) + std::min(0.5 - std::fabs(t), 0.5 - std::fabs(tp)) * d;
}

// Point of a sampled space: a base index and a height; base is ignored at collapsed heights.
struct Sample {
    std::size_t x;
    double t;
};

FiniteMetricSpace tabulate(const std::vector<std::string>& ids, const std::vector<Sample>& pts,
                           const std::function<double(const Sample&, const Sample&)>& d) {
    FiniteMetricSpace out;
    out.ids = ids;
    out.dist.assign(pts.size(), std::vector<double>(pts.size(), 0.0));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) out.dist[i][j] = out.dist[j][i] = d(pts[i], pts[j]);
    return out;
}

}  // namespace

std::vector<Diagnostic> validate_simplicial(const SimplicialComplex& k) {
    std::vector<Diagnostic> out;
    std::set<std::vector<std::string>> seen;
    for (const auto& s : k.simplices) {
        if (s.verts.empty()) {
            out.push_back({"empty-simplex", "simplex without vertices"});
            continue;
        }
        auto sorted = s.verts;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            out.push_back({"repeated-vertex", "simplex repeats a vertex"});
        if (!seen.insert(sorted).second) out.push_back({"duplicate", "simplex listed twice"});
    }
    for (const auto& verts : seen) {
        if (verts.size() < 2) continue;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            auto face = verts;
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
            if (!seen.count(face)) {
                std::string name;
                for (const auto& v : face) name += (name.empty() ? "" : ",") + v;
                out.push_back({"missing-face", "face " + name + " is not listed"});
            }
        }
    }
    return out;
}

FilteredComplex sublevel_complex(const SimplicialComplex& k, const std::map<std::string, Real>& f, Scalar p) {
    auto diags = validate_simplicial(k);
    if (!diags.empty()) throw std::invalid_argument(diags.front().message);
    std::set<std::string> vertex_set;
    for (const auto& s : k.simplices) vertex_set.insert(s.verts.begin(), s.verts.end());
    std::vector<std::string> names(vertex_set.begin(), vertex_set.end());
    std::vector<RawSimplex> raw;
    for (const auto& s : k.simplices) {
        RawSimplex r;
        for (const auto& v : s.verts)
            r.verts.push_back(static_cast<std::size_t>(std::lower_bound(names.begin(), names.end(), v) - names.begin()));
        std::sort(r.verts.begin(), r.verts.end());
        if (s.filt) {
            r.level = *s.filt;
        } else {
            r.level = Real::neg_infinity();
            for (const auto& v : s.verts) {
                auto it = f.find(v);
                if (it == f.end()) throw std::invalid_argument("no value for vertex " + v);
                r.level = max(r.level, it->second);
            }
        }
        raw.push_back(std::move(r));
    }
    return reduced_chains(names, std::move(raw), p);
}

double FiniteMetricSpace::diameter() const {
    double d = 0;
    for (const auto& row : dist)
        for (double x : row) d = std::max(d, x);
    return d;
}

std::vector<Diagnostic> validate_metric(const FiniteMetricSpace& m, double tol) {
    std::vector<Diagnostic> out;
    const std::size_t n = m.size();
    if (m.dist.size() != n ||
        std::any_of(m.dist.begin(), m.dist.end(), [&](const std::vector<double>& r) { return r.size() != n; })) {
        out.push_back({"shape", "distance matrix is not " + std::to_string(n) + " x " + std::to_string(n)});
        return out;
    }
    std::set<std::string> ids(m.ids.begin(), m.ids.end());
    if (ids.size() != n) out.push_back({"shape", "point ids repeat"});
    for (std::size_t i = 0; i < n; ++i) {
        if (std::fabs(m.dist[i][i]) > tol) out.push_back({"diagonal", "d(" + m.ids[i] + ", itself) is not 0"});
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (!std::isfinite(m.dist[i][j]) || m.dist[i][j] < 0)
                out.push_back({"negative", "d(" + m.ids[i] + ", " + m.ids[j] + ") is negative or not finite"});
            else if (m.dist[i][j] <= tol)
                out.push_back({"positivity", m.ids[i] + " and " + m.ids[j] + " are at distance 0"});
            if (i < j && std::fabs(m.dist[i][j] - m.dist[j][i]) > tol)
                out.push_back({"symmetry", "d(" + m.ids[i] + ", " + m.ids[j] + ") is not symmetric"});
        }
    }
    if (!out.empty()) return out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (m.dist[i][k] > m.dist[i][j] + m.dist[j][k] + tol) {
                    out.push_back({"triangle", "d(" + m.ids[i] + ", " + m.ids[k] + ") exceeds the path through " + m.ids[j]});
                    return out;
                }
    return out;
}

Real lipschitz_shift(const MetricMap& u) {
    double best = 0;
    const auto n = u.source.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            best = std::max(best, u.target.dist[u.image[i]][u.image[j]] / u.source.dist[i][j]);
    if (best == 0) return Real::neg_infinity();
    return ceil_level(std::log(best) + 1e-15);
}

FiniteMetricSpace rescale(const FiniteMetricSpace& a, double s) {
    auto out = a;
    double k = std::exp(s);
    for (auto& row : out.dist)
        for (auto& x : row) x *= k;
    return out;
}

FiniteMetricSpace metric_cone(const FiniteMetricSpace& a, const std::vector<double>& t_grid) {
    check_grid(t_grid, 0.0, 1.0, "metric_cone");
    const double h = a.diameter() / 2;
    std::vector<std::string> ids{"apex"};
    std::vector<Sample> pts{{0, 0.0}};
    for (double t : sorted_unique(t_grid)) {
        if (t == 0.0) continue;
        for (std::size_t x = 0; x < a.size(); ++x) {
            ids.push_back(point_label(a.ids[x], t));
            pts.push_back({x, t});
        }
    }
    return tabulate(ids, pts, [&](const Sample& p, const Sample& q) {
        double d = (p.t == 0.0 || q.t == 0.0) ? 0.0 : a.dist[p.x][q.x];
        return cone_distance(h, d, p.t, q.t);
    });
}

FiniteMetricSpace metric_suspension(const FiniteMetricSpace& a, const std::vector<double>& t_grid) {
    check_grid(t_grid, -0.5, 0.5, "metric_suspension");
    const double h = a.diameter() / 2;
    std::vector<std::string> ids{"south", "north"};
    std::vector<Sample> pts{{0, -0.5}, {0, 0.5}};
    for (double t : sorted_unique(t_grid)) {
        if (std::fabs(t) == 0.5) continue;
        for (std::size_t x = 0; x < a.size(); ++x) {
            ids.push_back(point_label(a.ids[x], t));
            pts.push_back({x, t});
        }
    }
    return tabulate(ids, pts, [&](const Sample& p, const Sample& q) {
        bool pole = std::fabs(p.t) == 0.5 || std::fabs(q.t) == 0.5;
        return suspension_distance(h, pole ? 0.0 : a.dist[p.x][q.x], p.t, q.t);
    });
}

FiniteMetricSpace metric_mapping_cone(const MetricMap& u, const std::vector<double>& t_grid) {
    check_grid(t_grid, 0.0, 1.0, "metric_mapping_cone");
    const auto& a = u.source;
    const auto& b = u.target;
    const double ha = a.diameter() / 2, hb = b.diameter() / 2;
    // Image in the cone on B (base index into B, height) and in the suspension of A.
    struct Point {
        std::size_t bx;
        double bt;
        std::size_t ax;
        double at;
    };
    std::vector<std::string> ids;
    std::vector<Point> pts;
    for (std::size_t y = 0; y < b.size(); ++y) {
        ids.push_back("b:" + b.ids[y]);
        pts.push_back({y, 1.0, 0, -0.5});
    }
    ids.push_back("apex");
    pts.push_back({0, 0.0, 0, 0.5});
    for (double t : sorted_unique(t_grid)) {
        if (t == 0.0 || t == 1.0) continue;
        for (std::size_t x = 0; x < a.size(); ++x) {
            ids.push_back("a:" + point_label(a.ids[x], t));
            pts.push_back({u.image[x], 1.0 - t, x, t - 0.5});
        }
    }
    FiniteMetricSpace out;
    out.ids = ids;
    out.dist.assign(pts.size(), std::vector<double>(pts.size(), 0.0));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const auto& p = pts[i];
            const auto& q = pts[j];
            bool b_apex = p.bt == 0.0 || q.bt == 0.0;
            bool pole = std::fabs(p.at) == 0.5 || std::fabs(q.at) == 0.5;
            double d = cone_distance(hb, b_apex ? 0.0 : b.dist[p.bx][q.bx], p.bt, q.bt) +
                       suspension_distance(ha, pole ? 0.0 : a.dist[p.ax][q.ax], p.at, q.at);
            out.dist[i][j] = out.dist[j][i] = d;
        }
    return out;
}

FilteredComplex diameter_filtered_complex(const FiniteMetricSpace& a, int max_dim, std::optional<Real> floor, Scalar p) {
    if (max_dim < 0) throw std::invalid_argument("max_dim must be nonnegative");
    const std::size_t n = a.size();
    Real least = Real::infinity();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) least = min(least, floor_level(std::log(a.dist[i][j])));
    Real base;
    if (floor) {
        base = *floor;
        if (least < base) throw std::invalid_argument("floor sits above an edge level");
    } else if (least.is_finite()) {
        base = Real(static_cast<long long>(std::floor(least.to_double())) - 1);
    } else {
        base = Real(0);
    }
    std::vector<RawSimplex> raw;
    std::vector<std::size_t> current;
    std::function<void(std::size_t, double)> grow = [&](std::size_t from, double diam) {
        for (std::size_t v = from; v < n; ++v) {
            double d = diam;
            for (auto w : current) d = std::max(d, a.dist[v][w]);
            current.push_back(v);
            raw.push_back({current, current.size() == 1 ? base : floor_level(std::log(d))});
            if (static_cast<int>(current.size()) <= max_dim) grow(v + 1, d);
            current.pop_back();
        }
    };
    grow(0, 0.0);
    return reduced_chains(a.ids, std::move(raw), p);
}

ChainMap induced_map(const MetricMap& u, const FilteredComplex& source, const FilteredComplex& target) {
    PrimeField fld(source.p);
    auto root_of = [](const FiniteMetricSpace& m, const FilteredComplex& c) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < m.size(); ++i)
            if (!c.find(m.ids[i])) return i;
        return std::nullopt;
    };
    auto ra = root_of(u.source, source);
    auto rb = root_of(u.target, target);
    std::map<std::string, std::size_t> src_index;
    for (std::size_t i = 0; i < u.source.size(); ++i) src_index[u.source.ids[i]] = i;

    ChainMap f{source, target, 0, SparseMatrix(target.size(), source.size())};
    auto add_simplex = [&](std::size_t col, std::vector<std::size_t> verts, Scalar coeff) {
        if (verts.size() == 1 && rb && verts[0] == *rb) return;
        // sign of the sorting permutation
        long long swaps = 0;
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j) {
                if (verts[i] == verts[j]) return;
                if (verts[i] > verts[j]) ++swaps;
            }
        std::sort(verts.begin(), verts.end());
        auto row = target.find(join(verts, u.target.ids));
        if (!row) throw std::invalid_argument("image simplex missing from the target complex");
        f.matrix.add_to(*row, col, fld.mul(coeff, fld.sign(swaps)), fld);
    };
    for (std::size_t j = 0; j < source.size(); ++j) {
        const auto& id = source.generators[j].id;
        std::vector<std::size_t> image;
        std::size_t start = 0;
        while (start <= id.size()) {
            auto end = id.find(',', start);
            if (end == std::string::npos) end = id.size();
            image.push_back(u.image[src_index.at(id.substr(start, end - start))]);
            start = end + 1;
        }
        add_simplex(j, image, 1);
        if (image.size() == 1 && ra) add_simplex(j, {u.image[*ra]}, fld.neg(1));
    }
    return f;
}

Real shift_above(const ChainMap& f, const Real& floor) {
    Real out = Real::neg_infinity();
    for (std::size_t j = 0; j < f.source.size(); ++j) {
        const auto& lvl = f.source.generators[j].filt;
        if (!(floor < lvl)) continue;
        for (const auto& e : f.matrix.column(j)) out = max(out, f.target.generators[e.row].filt - lvl);
    }
    return out;
}

}  // namespace tpc
