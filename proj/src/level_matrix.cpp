#include "bratteli/level_matrix.hpp"

#include "bratteli/error.hpp"

#include <algorithm>
#include <string>

namespace bratteli {

LevelMatrix::LevelMatrix(std::size_t level, std::size_t rows, std::size_t cols, std::vector<MatrixEntry> entries,
                         std::size_t complete_rows, std::size_t complete_cols)
    : level_(level), rows_(rows), cols_(cols), complete_rows_(std::min(complete_rows, rows)),
      complete_cols_(std::min(complete_cols, cols)) {
    std::sort(entries.begin(), entries.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    for (auto& e : entries) {
        if (e.row < 1 || e.row > rows || e.col < 1 || e.col > cols)
            throw ConfigError("matrix entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                              ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
        if (e.mult < 0) throw ConfigError("negative multiplicity");
        if (e.mult == 0) continue;
        if (!entries_.empty() && entries_.back().row == e.row && entries_.back().col == e.col)
            entries_.back().mult += e.mult;
        else
            entries_.push_back(std::move(e));
    }
    row_start_.assign(rows + 1, 0);
    for (const auto& e : entries_) ++row_start_[e.row];
    for (std::size_t v = 1; v <= rows; ++v) row_start_[v] += row_start_[v - 1];

    col_start_.assign(cols + 2, 0);
    for (const auto& e : entries_) ++col_start_[e.col + 1];
    for (std::size_t w = 1; w <= cols + 1; ++w) col_start_[w] += col_start_[w - 1];
    col_index_.resize(entries_.size());
    std::vector<std::size_t> fill(col_start_.begin(), col_start_.end());
    for (std::size_t k = 0; k < entries_.size(); ++k) col_index_[fill[entries_[k].col]++] = k;
}

std::span<const MatrixEntry> LevelMatrix::row(std::size_t v) const {
    if (v < 1 || v > rows_) return {};
    return {entries_.data() + row_start_[v - 1], row_start_[v] - row_start_[v - 1]};
}

std::span<const std::size_t> LevelMatrix::column(std::size_t w) const {
    if (w < 1 || w > cols_) return {};
    return {col_index_.data() + col_start_[w], col_start_[w + 1] - col_start_[w]};
}

BigInt LevelMatrix::at(std::size_t v, std::size_t w) const {
    for (const auto& e : row(v))
        if (e.col == w) return e.mult;
    return 0;
}

std::size_t LevelMatrix::max_col_in_row(std::size_t v) const {
    auto r = row(v);
    return r.empty() ? 0 : r.back().col;
}

LevelMatrix LevelMatrix::with_level(std::size_t level) const {
    LevelMatrix m = *this;
    m.level_ = level;
    return m;
}

LevelMatrix LevelMatrix::restricted(std::size_t width) const {
    std::size_t r = std::min(rows_, width), c = std::min(cols_, width);
    std::vector<MatrixEntry> kept;
    std::size_t cr = 0;
    bool rows_ok = true;
    for (std::size_t v = 1; v <= r; ++v) {
        bool full = true;
        for (const auto& e : row(v)) {
            if (e.col <= c)
                kept.push_back(e);
            else
                full = false;
        }
        if (rows_ok && full && v <= complete_rows_)
            cr = v;
        else
            rows_ok = false;
    }
    std::size_t cc = 0;
    for (std::size_t w = 1; w <= std::min(c, complete_cols_); ++w) {
        bool full = true;
        for (std::size_t k : column(w))
            if (entries_[k].row > r) full = false;
        if (!full) break;
        cc = w;
    }
    return LevelMatrix(level_, r, c, std::move(kept), cr, cc);
}

bool LevelMatrix::operator==(const LevelMatrix& o) const {
    return level_ == o.level_ && rows_ == o.rows_ && cols_ == o.cols_ && complete_rows_ == o.complete_rows_ &&
           complete_cols_ == o.complete_cols_ && entries_ == o.entries_;
}

LevelMatrix compose(const LevelMatrix& upper, const LevelMatrix& lower) {
    std::vector<MatrixEntry> out;
    std::size_t rows = upper.rows(), cols = lower.cols();
    std::vector<BigInt> acc(cols + 1);
    std::vector<char> touched(cols + 1, 0);
    std::size_t complete_rows = 0;
    bool prefix = true;
    for (std::size_t v = 1; v <= rows; ++v) {
        bool full = v <= upper.complete_rows();
        std::vector<std::size_t> cols_hit;
        for (const auto& g : upper.row(v)) {
            if (g.col > lower.rows()) {
                full = false;
                continue;
            }
            if (g.col > lower.complete_rows()) full = false;
            for (const auto& f : lower.row(g.col)) {
                if (!touched[f.col]) {
                    touched[f.col] = 1;
                    acc[f.col] = 0;
                    cols_hit.push_back(f.col);
                }
                acc[f.col] += g.mult * f.mult;
            }
        }
        std::sort(cols_hit.begin(), cols_hit.end());
        for (std::size_t w : cols_hit) {
            out.push_back({v, w, acc[w]});
            touched[w] = 0;
        }
        if (prefix && full)
            complete_rows = v;
        else
            prefix = false;
    }
    // Column w of the product is complete when column w of `lower` is and
    // every intermediate vertex it reaches has a complete column in `upper`.
    std::size_t complete_cols = 0;
    for (std::size_t w = 1; w <= std::min(cols, lower.complete_cols()); ++w) {
        bool full = true;
        for (std::size_t k : lower.column(w)) {
            std::size_t u = lower.entries()[k].row;
            if (u > upper.cols() || u > upper.complete_cols()) full = false;
        }
        if (!full) break;
        complete_cols = w;
    }
    // Entries neither in a complete row nor a complete column may be partial.
    std::vector<MatrixEntry> exact;
    for (auto& e : out)
        if (e.row <= complete_rows || e.col <= complete_cols) exact.push_back(std::move(e));
    return LevelMatrix(lower.level(), rows, cols, std::move(exact), complete_rows, complete_cols);
}

}  // namespace bratteli
