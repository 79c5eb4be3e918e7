#include "tpc/chain_map.hpp"

#include <stdexcept>

namespace tpc {

namespace {

bool same_shape(const FilteredComplex& a, const FilteredComplex& b) {
    if (a.size() != b.size() || a.p != b.p) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.generators[i].id != b.generators[i].id || a.generators[i].degree != b.generators[i].degree)
            return false;
    return true;
}

}  // namespace

ChainMap identity_map(const FilteredComplex& c) { return {c, c, 0, SparseMatrix::identity(c.size())}; }

ChainMap zero_map(const FilteredComplex& source, const FilteredComplex& target, int degree) {
    return {source, target, degree, SparseMatrix(target.size(), source.size())};
}

ChainMap eta_map(const FilteredComplex& a, const Real& r) { return {shift(a, r), a, 0, SparseMatrix::identity(a.size())}; }

ChainMap rebase(const ChainMap& f, const FilteredComplex& source, const FilteredComplex& target) {
    if (!same_shape(f.source, source) || !same_shape(f.target, target))
        throw std::invalid_argument("rebase: endpoints do not correspond");
    return {source, target, f.degree, f.matrix};
}

Real map_shift(const ChainMap& f) {
    Real best = Real::neg_infinity();
    for (std::size_t j = 0; j < f.matrix.cols(); ++j)
        for (const auto& e : f.matrix.column(j)) {
            Real d = f.target.generators[e.row].filt - f.source.generators[j].filt;
            if (best < d) best = d;
        }
    return best;
}

bool is_chain_map(const ChainMap& f) {
    auto fld = f.field();
    auto lhs = multiply(f.target.boundary, f.matrix, fld);
    auto rhs = multiply(f.matrix, f.source.boundary, fld);
    return add(lhs, rhs, fld, fld.neg(fld.sign(f.degree))).is_zero();
}

std::vector<Diagnostic> validate_map(const ChainMap& f) {
    std::vector<Diagnostic> out;
    if (f.source.p != f.target.p) out.push_back({"characteristic", "source and target fields differ"});
    if (f.matrix.rows() != f.target.size() || f.matrix.cols() != f.source.size()) {
        out.push_back({"shape", "matrix does not match endpoint sizes"});
        return out;
    }
    for (const auto& t : f.matrix.triplets()) {
        const auto& s = f.source.generators[t.col];
        const auto& d = f.target.generators[t.row];
        if (d.degree != s.degree + f.degree)
            out.push_back({"degree", "entry " + s.id + " -> " + d.id + " breaks degree " + std::to_string(f.degree)});
    }
    return out;
}

ChainMap compose(const ChainMap& f, const ChainMap& g) {
    if (!(f.target == g.source)) throw std::invalid_argument("compose: endpoints do not match");
    return {f.source, g.target, f.degree + g.degree, multiply(g.matrix, f.matrix, f.field())};
}

ChainMap add_maps(const ChainMap& f, const ChainMap& g, Scalar s) {
    if (!(f.source == g.source) || !(f.target == g.target) || f.degree != g.degree)
        throw std::invalid_argument("add_maps: endpoints do not match");
    return {f.source, f.target, f.degree, add(f.matrix, g.matrix, f.field(), s)};
}

ChainMap direct_sum_maps(const ChainMap& f, const ChainMap& g) {
    if (f.degree != g.degree) throw std::invalid_argument("direct_sum_maps: degree mismatch");
    ChainMap out;
    out.source = direct_sum(f.source, g.source);
    out.target = direct_sum(f.target, g.target);
    out.degree = f.degree;
    out.matrix = SparseMatrix(out.target.size(), out.source.size());
    for (std::size_t j = 0; j < f.source.size(); ++j) out.matrix.set_column(j, f.matrix.column(j));
    std::size_t off_row = f.target.size();
    std::size_t off_col = f.source.size();
    for (std::size_t j = 0; j < g.source.size(); ++j) {
        SparseColumn col = g.matrix.column(j);
        for (auto& e : col) e.row += off_row;
        out.matrix.set_column(off_col + j, std::move(col));
    }
    return out;
}

ChainMap translate_map(const ChainMap& f, int k) {
    auto fld = f.field();
    SparseMatrix m = (k % 2 != 0 && f.degree % 2 != 0) ? scale(f.matrix, fld.neg(1), fld) : f.matrix;
    return {translate(f.source, k), translate(f.target, k), f.degree, m};
}

ChainMap shift_map(const ChainMap& f, const Real& source_shift, const Real& target_shift) {
    return {shift(f.source, source_shift), shift(f.target, target_shift), f.degree, f.matrix};
}

}  // namespace tpc
