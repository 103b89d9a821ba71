#pragma once

#include "bratteli/rational.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace bratteli {

// f_{vw}: edges from vertex w on level n to vertex v on level n+1.
struct MatrixEntry {
    std::size_t row;  // v in V_{n+1}, 1-based
    std::size_t col;  // w in V_n, 1-based
    BigInt mult;
};

// Window restriction of an incidence matrix F_n. Rows 1..completeRows list
// every nonzero entry of the untruncated row; columns 1..completeCols
// likewise. Entries outside those prefixes may be missing.
class LevelMatrix {
public:
    LevelMatrix() = default;
    LevelMatrix(std::size_t level, std::size_t rows, std::size_t cols, std::vector<MatrixEntry> entries,
                std::size_t complete_rows, std::size_t complete_cols);

    std::size_t level() const { return level_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t complete_rows() const { return complete_rows_; }
    std::size_t complete_cols() const { return complete_cols_; }

    // Sorted by (row, col), zero multiplicities removed.
    const std::vector<MatrixEntry>& entries() const { return entries_; }
    std::span<const MatrixEntry> row(std::size_t v) const;
    // indices into entries() of column w, ascending by row
    std::span<const std::size_t> column(std::size_t w) const;
    BigInt at(std::size_t v, std::size_t w) const;
    std::size_t max_col_in_row(std::size_t v) const;  // 0 for an empty row

    LevelMatrix with_level(std::size_t level) const;
    // Drops entries outside 1..width and shrinks the completeness prefixes.
    LevelMatrix restricted(std::size_t width) const;

    bool operator==(const LevelMatrix& o) const;

private:
    std::size_t level_ = 0, rows_ = 0, cols_ = 0;
    std::size_t complete_rows_ = 0, complete_cols_ = 0;
    std::vector<MatrixEntry> entries_;
    std::vector<std::size_t> row_start_;  // size rows+1
    std::vector<std::size_t> col_start_;  // size cols+1
    std::vector<std::size_t> col_index_;
};

inline bool operator==(const MatrixEntry& a, const MatrixEntry& b) {
    return a.row == b.row && a.col == b.col && a.mult == b.mult;
}

// Product P = upper * lower, i.e. F_{n+1} F_n; completeness propagates.
LevelMatrix compose(const LevelMatrix& upper, const LevelMatrix& lower);

}  // namespace bratteli
