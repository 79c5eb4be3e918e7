#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace tpc {

using Scalar = std::uint32_t;

/// Arithmetic in GF(p).
class PrimeField {
public:
    explicit PrimeField(Scalar p = 2);

    Scalar characteristic() const { return p_; }
    Scalar add(Scalar a, Scalar b) const { return static_cast<Scalar>((std::uint64_t{a} + b) % p_); }
    Scalar sub(Scalar a, Scalar b) const { return add(a, neg(b)); }
    Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
    Scalar mul(Scalar a, Scalar b) const { return static_cast<Scalar>((std::uint64_t{a} * b) % p_); }
    Scalar inv(Scalar a) const;
    Scalar from_int(long long v) const;
    /// (-1)^k as a field element.
    Scalar sign(long long k) const { return (k % 2 == 0) ? 1 : neg(1); }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    Scalar p_;
};

bool is_prime(Scalar p);

struct MatrixEntry {
    std::size_t row;
    Scalar value;
    friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

/// Sorted by row, no zero values.
using SparseColumn = std::vector<MatrixEntry>;

/// Column-major sparse matrix. Equality is structural.
class SparseMatrix {
public:
    struct Triplet {
        std::size_t row;
        std::size_t col;
        Scalar value;
    };

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols);
    static SparseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return columns_.size(); }
    const SparseColumn& column(std::size_t j) const { return columns_[j]; }
    void set_column(std::size_t j, SparseColumn col);

    Scalar at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, Scalar v);
    void add_to(std::size_t i, std::size_t j, Scalar v, const PrimeField& f);

    std::size_t nonzeros() const;
    bool is_zero() const { return nonzeros() == 0; }
    SparseMatrix transposed() const;
    /// Entries ordered by (col, row).
    std::vector<Triplet> triplets() const;

    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::vector<SparseColumn> columns_;
};

/// x + a*y
SparseColumn axpy(const SparseColumn& x, Scalar a, const SparseColumn& y, const PrimeField& f);
SparseColumn scale(const SparseColumn& x, Scalar a, const PrimeField& f);
Scalar lookup(const SparseColumn& x, std::size_t row);

/// a*b
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, const PrimeField& f);
/// a + s*b
SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, const PrimeField& f, Scalar s = 1);
SparseMatrix scale(const SparseMatrix& a, Scalar s, const PrimeField& f);
SparseColumn apply(const SparseMatrix& a, const SparseColumn& x, const PrimeField& f);

struct ColumnReduction {
    SparseMatrix reduced;                      // R
    SparseMatrix transform;                    // V with R = M V, unitriangular
    std::map<std::size_t, std::size_t> pivots; // column -> lowest row
};

/// Left-to-right persistence reduction in the given column order.
ColumnReduction reduce_columns(const SparseMatrix& m, const PrimeField& f);

struct AffineSolution {
    std::vector<Scalar> particular;
    std::vector<std::vector<Scalar>> kernel;
};

/// Solves a x = b with x supported on mask. Free unknowns are set to zero;
/// pivots are chosen in increasing unknown order.
std::optional<std::vector<Scalar>> solve_masked(const SparseMatrix& a, const std::vector<Scalar>& b,
                                                const std::vector<bool>& mask, const PrimeField& f);

/// As solve_masked, also returning a basis of the masked kernel.
std::optional<AffineSolution> solve_affine(const SparseMatrix& a, const std::vector<Scalar>& b,
                                           const std::vector<bool>& mask, const PrimeField& f);

std::size_t rank(const SparseMatrix& a, const PrimeField& f);

}  // namespace tpc
