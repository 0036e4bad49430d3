#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "noether/rational.hpp"

namespace noether {

using RationalVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static RationalMatrix identity(std::size_t n);
    static RationalMatrix from_rows(const std::vector<RationalVector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RationalVector multiply(const RationalVector& v) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Reduced row echelon form: rows.size() == rank, pivot_cols ascending.
struct RowEchelon {
    std::vector<RationalVector> rows;
    std::vector<std::size_t> pivot_cols;
    std::size_t cols = 0;
};

/// Fraction-free (Bareiss) elimination followed by integer back-substitution.
/// Pivot choice: smallest-magnitude nonzero entry in the column. The result
/// is the unique RREF, independent of input row order.
RowEchelon rref(const RationalMatrix& m);

std::size_t rank(const RationalMatrix& m);

/// Right-nullspace basis: one vector per free column (ascending), carrying 1
/// in its free column and 0 in the other free columns.
std::vector<RationalVector> nullspace(const RationalMatrix& m);

/// Some solution of m x = b (free variables set to 0), or nullopt.
std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& b);

/// Exact inverse of a square matrix, or nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

}  // namespace noether
