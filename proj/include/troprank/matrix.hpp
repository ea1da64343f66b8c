#ifndef TROPRANK_MATRIX_HPP
#define TROPRANK_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "troprank/rational.hpp"

namespace troprank {

/// Dense rational matrix. Rows and columns may be zero; entries are exact.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

    static QMatrix from_rows(const std::vector<QVec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rat& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void append_row(const QVec& row);

    QMatrix transposed() const;

    QVec multiply(const QVec& x) const;  // m * x

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    QVec data_;
};

// Rank over the rationals, computed by fraction-free (Bareiss) elimination
// on the denominator-cleared integer matrix. Pivot rule: scan columns left
// to right, take the first row with a nonzero entry.
std::size_t matrix_rank(const QMatrix& m);

std::size_t nullity(const QMatrix& m);

// Basis of { x : m x = 0 }. The vectors are linearly independent and their
// count equals nullity(m). Deterministic: one vector per free column, free
// columns in ascending order, the free coordinate set to 1.
std::vector<QVec> solve_homogeneous(const QMatrix& m);

// One solution of m x = b, or nullopt when inconsistent. Deterministic.
std::optional<QVec> solve_linear(const QMatrix& m, const QVec& b);

}  // namespace troprank

#endif
