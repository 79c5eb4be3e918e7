#include "tpc/field.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tpc {

bool is_prime(Scalar p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

PrimeField::PrimeField(Scalar p) : p_(p) {
    if (!is_prime(p) || p > (Scalar{1} << 30))
        throw std::invalid_argument("characteristic must be a prime below 2^30, got " + std::to_string(p));
}

Scalar PrimeField::inv(Scalar a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    Scalar result = 1, base = a;
    for (Scalar e = p_ - 2; e > 0; e >>= 1) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
    }
    return result;
}

Scalar PrimeField::from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<Scalar>(r);
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

SparseMatrix SparseMatrix::identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.columns_[i].push_back({i, 1});
    return m;
}

void SparseMatrix::set_column(std::size_t j, SparseColumn col) {
    for (const auto& e : col)
        if (e.row >= rows_) throw std::out_of_range("SparseMatrix::set_column: row out of range");
    columns_.at(j) = std::move(col);
}

Scalar SparseMatrix::at(std::size_t i, std::size_t j) const { return lookup(columns_.at(j), i); }

void SparseMatrix::set(std::size_t i, std::size_t j, Scalar v) {
    if (i >= rows_) throw std::out_of_range("SparseMatrix::set: row out of range");
    auto& col = columns_.at(j);
    auto it = std::lower_bound(col.begin(), col.end(), i,
                               [](const MatrixEntry& e, std::size_t r) { return e.row < r; });
    if (it != col.end() && it->row == i) {
        if (v == 0)
            col.erase(it);
        else
            it->value = v;
    } else if (v != 0) {
        col.insert(it, {i, v});
    }
}

void SparseMatrix::add_to(std::size_t i, std::size_t j, Scalar v, const PrimeField& f) {
    set(i, j, f.add(at(i, j), v));
}

std::size_t SparseMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
}

SparseMatrix SparseMatrix::transposed() const {
    SparseMatrix t(cols(), rows_);
    for (std::size_t j = 0; j < cols(); ++j)
        for (const auto& e : columns_[j]) t.columns_[e.row].push_back({j, e.value});
    return t;
}

std::vector<SparseMatrix::Triplet> SparseMatrix::triplets() const {
    std::vector<Triplet> out;
    for (std::size_t j = 0; j < cols(); ++j)
        for (const auto& e : columns_[j]) out.push_back({e.row, j, e.value});
    return out;
}

Scalar lookup(const SparseColumn& x, std::size_t row) {
    auto it = std::lower_bound(x.begin(), x.end(), row,
                               [](const MatrixEntry& e, std::size_t r) { return e.row < r; });
    return (it != x.end() && it->row == row) ? it->value : 0;
}

SparseColumn axpy(const SparseColumn& x, Scalar a, const SparseColumn& y, const PrimeField& f) {
    if (a == 0) return x;
    SparseColumn out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].row < y[j].row)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].row < x[i].row) {
            out.push_back({y[j].row, f.mul(a, y[j].value)});
            ++j;
        } else {
            Scalar v = f.add(x[i].value, f.mul(a, y[j].value));
            if (v != 0) out.push_back({x[i].row, v});
            ++i;
            ++j;
        }
    }
    return out;
}

SparseColumn scale(const SparseColumn& x, Scalar a, const PrimeField& f) {
    if (a == 0) return {};
    SparseColumn out = x;
    for (auto& e : out) e.value = f.mul(e.value, a);
    return out;
}

SparseColumn apply(const SparseMatrix& a, const SparseColumn& x, const PrimeField& f) {
    SparseColumn out;
    for (const auto& e : x) out = axpy(out, e.value, a.column(e.row), f);
    return out;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, const PrimeField& f) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
    SparseMatrix out(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) out.set_column(j, apply(a, b.column(j), f));
    return out;
}

SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, const PrimeField& f, Scalar s) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("add: dimension mismatch");
    SparseMatrix out(a.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) out.set_column(j, axpy(a.column(j), s, b.column(j), f));
    return out;
}

SparseMatrix scale(const SparseMatrix& a, Scalar s, const PrimeField& f) {
    SparseMatrix out(a.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) out.set_column(j, scale(a.column(j), s, f));
    return out;
}

ColumnReduction reduce_columns(const SparseMatrix& m, const PrimeField& f) {
    ColumnReduction out{m, SparseMatrix::identity(m.cols()), {}};
    std::map<std::size_t, std::size_t> owner;  // lowest row -> column
    for (std::size_t j = 0; j < m.cols(); ++j) {
        SparseColumn r = out.reduced.column(j);
        SparseColumn v = out.transform.column(j);
        while (!r.empty()) {
            auto it = owner.find(r.back().row);
            if (it == owner.end()) break;
            const SparseColumn& rk = out.reduced.column(it->second);
            Scalar c = f.neg(f.mul(r.back().value, f.inv(rk.back().value)));
            r = axpy(r, c, rk, f);
            v = axpy(v, c, out.transform.column(it->second), f);
        }
        if (!r.empty()) {
            owner[r.back().row] = j;
            out.pivots[j] = r.back().row;
        }
        out.reduced.set_column(j, std::move(r));
        out.transform.set_column(j, std::move(v));
    }
    return out;
}

namespace {

/// Row echelon elimination on a dense augmented system. GF(2) rows are bit
/// packed, other fields use one word per entry.
class Eliminator {
public:
    Eliminator(const PrimeField& f, std::size_t unknowns) : f_(f), n_(unknowns) {
        binary_ = f.characteristic() == 2;
        words_ = (n_ + 1 + 63) / 64;
    }

    void add_row(const std::vector<std::pair<std::size_t, Scalar>>& entries, Scalar rhs) {
        if (binary_) {
            std::vector<std::uint64_t> row(words_, 0);
            bool any = rhs & 1;
            for (auto [c, v] : entries)
                if (v & 1) {
                    row[c / 64] ^= std::uint64_t{1} << (c % 64);
                    any = true;
                }
            if (rhs & 1) row[n_ / 64] ^= std::uint64_t{1} << (n_ % 64);
            if (any) bits_.push_back(std::move(row));
        } else {
            std::vector<Scalar> row(n_ + 1, 0);
            bool any = rhs != 0;
            for (auto [c, v] : entries) {
                row[c] = f_.add(row[c], v);
                any = any || v != 0;
            }
            row[n_] = rhs;
            if (any) dense_.push_back(std::move(row));
        }
    }

    /// Reduced row echelon form; returns pivot columns in row order.
    std::vector<std::size_t> reduce() {
        std::vector<std::size_t> pivots;
        std::size_t rank = 0;
        std::size_t rows = binary_ ? bits_.size() : dense_.size();
        for (std::size_t c = 0; c < n_ && rank < rows; ++c) {
            std::size_t r = rank;
            while (r < rows && get(r, c) == 0) ++r;
            if (r == rows) continue;
            swap_rows(r, rank);
            normalize(rank, c);
            for (std::size_t o = 0; o < rows; ++o)
                if (o != rank && get(o, c) != 0) eliminate(o, rank, c);
            pivots.push_back(c);
            ++rank;
        }
        rank_ = rank;
        return pivots;
    }

    bool consistent() const {
        std::size_t rows = binary_ ? bits_.size() : dense_.size();
        for (std::size_t r = rank_; r < rows; ++r)
            if (get(r, n_) != 0) return false;
        return true;
    }

    Scalar get(std::size_t r, std::size_t c) const {
        if (binary_) return static_cast<Scalar>((bits_[r][c / 64] >> (c % 64)) & 1);
        return dense_[r][c];
    }

    std::size_t rank() const { return rank_; }

private:
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        if (binary_)
            std::swap(bits_[a], bits_[b]);
        else
            std::swap(dense_[a], dense_[b]);
    }

    void normalize(std::size_t r, std::size_t c) {
        if (binary_) return;
        Scalar s = f_.inv(dense_[r][c]);
        for (auto& v : dense_[r]) v = f_.mul(v, s);
    }

    void eliminate(std::size_t target, std::size_t source, std::size_t c) {
        if (binary_) {
            auto& t = bits_[target];
            const auto& s = bits_[source];
            for (std::size_t w = c / 64; w < words_; ++w) t[w] ^= s[w];
            return;
        }
        Scalar factor = f_.neg(dense_[target][c]);
        auto& t = dense_[target];
        const auto& s = dense_[source];
        for (std::size_t k = c; k <= n_; ++k)
            if (s[k] != 0) t[k] = f_.add(t[k], f_.mul(factor, s[k]));
    }

    const PrimeField& f_;
    std::size_t n_;
    bool binary_;
    std::size_t words_;
    std::size_t rank_ = 0;
    std::vector<std::vector<std::uint64_t>> bits_;
    std::vector<std::vector<Scalar>> dense_;
};

std::optional<AffineSolution> solve_impl(const SparseMatrix& a, const std::vector<Scalar>& b,
                                         const std::vector<bool>& mask, const PrimeField& f, bool want_kernel) {
    if (b.size() != a.rows() || mask.size() != a.cols())
        throw std::invalid_argument("solve_masked: dimension mismatch");
    std::vector<std::size_t> unknowns;
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (mask[j]) unknowns.push_back(j);

    std::vector<std::vector<std::pair<std::size_t, Scalar>>> rows(a.rows());
    for (std::size_t k = 0; k < unknowns.size(); ++k)
        for (const auto& e : a.column(unknowns[k])) rows[e.row].push_back({k, e.value});

    Eliminator el(f, unknowns.size());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (rows[i].empty() && b[i] == 0) continue;
        el.add_row(rows[i], b[i] % f.characteristic());
    }
    auto pivots = el.reduce();
    if (!el.consistent()) return std::nullopt;

    AffineSolution out;
    out.particular.assign(a.cols(), 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) out.particular[unknowns[pivots[r]]] = el.get(r, unknowns.size());
    if (!want_kernel) return out;

    std::vector<bool> is_pivot(unknowns.size(), false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t c = 0; c < unknowns.size(); ++c) {
        if (is_pivot[c]) continue;
        std::vector<Scalar> v(a.cols(), 0);
        v[unknowns[c]] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            Scalar x = el.get(r, c);
            if (x != 0) v[unknowns[pivots[r]]] = f.neg(x);
        }
        out.kernel.push_back(std::move(v));
    }
    return out;
}

}  // namespace

std::optional<std::vector<Scalar>> solve_masked(const SparseMatrix& a, const std::vector<Scalar>& b,
                                                const std::vector<bool>& mask, const PrimeField& f) {
    auto s = solve_impl(a, b, mask, f, false);
    if (!s) return std::nullopt;
    return std::move(s->particular);
}

std::optional<AffineSolution> solve_affine(const SparseMatrix& a, const std::vector<Scalar>& b,
                                           const std::vector<bool>& mask, const PrimeField& f) {
    return solve_impl(a, b, mask, f, true);
}

std::size_t rank(const SparseMatrix& a, const PrimeField& f) {
    Eliminator el(f, a.cols());
    auto t = a.transposed();
    // rows of `a` as equations over its columns
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::vector<std::pair<std::size_t, Scalar>> row;
        for (const auto& e : t.column(i)) row.push_back({e.row, e.value});
        el.add_row(row, 0);
    }
    el.reduce();
    return el.rank();
}

}  // namespace tpc
