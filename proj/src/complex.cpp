#include "tpc/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace tpc {

std::optional<std::size_t> FilteredComplex::find(std::string_view id) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i].id == id) return i;
    return std::nullopt;
}

FilteredComplex make_complex(std::vector<Generator> gens, const std::vector<BoundaryTerm>& terms, Scalar p) {
    PrimeField f(p);
    FilteredComplex c;
    c.p = p;
    c.generators = std::move(gens);
    c.boundary = SparseMatrix(c.size(), c.size());
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < c.size(); ++i) index.emplace(c.generators[i].id, i);
    for (const auto& t : terms) {
        auto from = index.find(t.from);
        auto to = index.find(t.to);
        if (from == index.end() || to == index.end())
            throw std::invalid_argument("boundary term references unknown generator: " + t.from + " -> " + t.to);
        c.boundary.add_to(to->second, from->second, f.from_int(t.coeff), f);
    }
    return c;
}

std::vector<Diagnostic> validate(const FilteredComplex& c) {
    std::vector<Diagnostic> out;
    if (!is_prime(c.p)) {
        out.push_back({"characteristic", "p = " + std::to_string(c.p) + " is not prime"});
        return out;
    }
    if (c.boundary.rows() != c.size() || c.boundary.cols() != c.size()) {
        out.push_back({"shape", "boundary matrix does not match generator count"});
        return out;
    }
    std::set<std::string> seen;
    for (const auto& g : c.generators) {
        if (!seen.insert(g.id).second) out.push_back({"duplicate-id", "generator id '" + g.id + "' repeats"});
        if (!g.filt.is_finite()) out.push_back({"filtration", "generator '" + g.id + "' has infinite level"});
    }
    for (std::size_t j = 0; j < c.size(); ++j) {
        const auto& src = c.generators[j];
        for (const auto& e : c.boundary.column(j)) {
            const auto& dst = c.generators[e.row];
            if (e.value >= c.p)
                out.push_back({"characteristic", "coefficient out of range in d(" + src.id + ")"});
            if (dst.degree != src.degree + 1)
                out.push_back({"degree", "d(" + src.id + ") hits " + dst.id + " in degree " +
                                             std::to_string(dst.degree) + ", expected " +
                                             std::to_string(src.degree + 1)});
            if (src.filt < dst.filt)
                out.push_back({"filtration", "d(" + src.id + ") at level " + src.filt.str() + " hits " + dst.id +
                                                 " at higher level " + dst.filt.str()});
        }
    }
    auto sq = multiply(c.boundary, c.boundary, c.field());
    if (!sq.is_zero()) out.push_back({"d-squared", "d o d has " + std::to_string(sq.nonzeros()) + " nonzero entries"});
    return out;
}

FilteredComplex zero_complex(Scalar p) {
    FilteredComplex c;
    c.p = p;
    c.boundary = SparseMatrix(0, 0);
    return c;
}

FilteredComplex shift(const FilteredComplex& c, const Real& r) {
    FilteredComplex out = c;
    for (auto& g : out.generators) g.filt += r;
    return out;
}

FilteredComplex translate(const FilteredComplex& c, int k) {
    FilteredComplex out = c;
    for (auto& g : out.generators) g.degree -= k;
    if (k % 2 != 0) out.boundary = scale(c.boundary, c.field().neg(1), c.field());
    return out;
}

FilteredComplex relabel(const FilteredComplex& c, const std::string& prefix) {
    FilteredComplex out = c;
    for (auto& g : out.generators) g.id = prefix + g.id;
    return out;
}

FilteredComplex direct_sum(const FilteredComplex& a, const FilteredComplex& b) {
    if (a.p != b.p) throw std::invalid_argument("direct_sum: characteristic mismatch");
    if (b.empty()) return a;
    if (a.empty()) return b;
    FilteredComplex out;
    out.p = a.p;
    for (const auto& g : a.generators) out.generators.push_back({"L." + g.id, g.degree, g.filt});
    for (const auto& g : b.generators) out.generators.push_back({"R." + g.id, g.degree, g.filt});
    std::size_t n = a.size();
    out.boundary = SparseMatrix(out.size(), out.size());
    for (std::size_t j = 0; j < a.size(); ++j) out.boundary.set_column(j, a.boundary.column(j));
    for (std::size_t j = 0; j < b.size(); ++j) {
        SparseColumn col = b.boundary.column(j);
        for (auto& e : col) e.row += n;
        out.boundary.set_column(n + j, std::move(col));
    }
    return out;
}

FilteredComplex interval_e1(const Real& a, int degree, Scalar p) {
    return make_complex({{"x", degree, a}}, {}, p);
}

FilteredComplex interval_e2(const Real& c, const Real& d, int degree, Scalar kappa, Scalar p) {
    if (c < d) throw std::invalid_argument("interval_e2: need c >= d, got c=" + c.str() + " d=" + d.str());
    if (kappa % p == 0) throw std::invalid_argument("interval_e2: kappa must be nonzero");
    return make_complex({{"y", degree, c}, {"x", degree + 1, d}}, {{"y", "x", static_cast<long long>(kappa)}}, p);
}

std::vector<std::size_t> canonical_order(const FilteredComplex& c) {
    std::vector<std::size_t> order(c.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        const auto& a = c.generators[i];
        const auto& b = c.generators[j];
        if (a.degree != b.degree) return a.degree < b.degree;
        if (a.filt != b.filt) return a.filt < b.filt;
        return a.id < b.id;
    });
    return order;
}

}  // namespace tpc
