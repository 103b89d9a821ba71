#include "bratteli/kernels.hpp"

#include "bratteli/error.hpp"

#include <omp.h>

#include <exception>
#include <string>

namespace bratteli {

namespace kernels {

namespace {

template <class T>
T row_dot(const LevelMatrix& f, std::size_t v, std::span<const T> x) {
    T s = 0;
    for (const auto& e : f.row(v)) {
        if (e.col > x.size()) throw WindowError("row " + std::to_string(v) + " references column outside input");
        s += e.mult * x[e.col - 1];
    }
    return s;
}

template <class T>
T col_dot(const LevelMatrix& f, std::size_t w, std::span<const T> p) {
    T s = 0;
    for (std::size_t k : f.column(w)) {
        const auto& e = f.entries()[k];
        if (e.row > p.size()) throw WindowError("column " + std::to_string(w) + " references row outside input");
        s += e.mult * p[e.row - 1];
    }
    return s;
}

// Exceptions must not escape an OpenMP region; capture and rethrow.
template <class Body>
void parallel_rows(std::size_t n, Body body) {
    std::exception_ptr err;
#pragma omp parallel for schedule(static)
    for (std::size_t v = 1; v <= n; ++v) {
        try {
            body(v);
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace

template <class T>
std::vector<T> multiply(const LevelMatrix& f, std::span<const T> x, std::size_t rows, Exec exec) {
    std::vector<T> y(rows);
    if (exec == Exec::Serial) {
        for (std::size_t v = 1; v <= rows; ++v) y[v - 1] = row_dot(f, v, x);
    } else {
        parallel_rows(rows, [&](std::size_t v) { y[v - 1] = row_dot(f, v, x); });
    }
    return y;
}

template <class T>
std::vector<T> multiply_transposed(const LevelMatrix& f, std::span<const T> p, std::size_t cols, Exec exec) {
    std::vector<T> q(cols);
    if (exec == Exec::Serial) {
        for (std::size_t w = 1; w <= cols; ++w) q[w - 1] = col_dot(f, w, p);
    } else {
        parallel_rows(cols, [&](std::size_t w) { q[w - 1] = col_dot(f, w, p); });
    }
    return q;
}

template std::vector<BigInt> multiply(const LevelMatrix&, std::span<const BigInt>, std::size_t, Exec);
template std::vector<Rational> multiply(const LevelMatrix&, std::span<const Rational>, std::size_t, Exec);
template std::vector<BigInt> multiply_transposed(const LevelMatrix&, std::span<const BigInt>, std::size_t, Exec);
template std::vector<Rational> multiply_transposed(const LevelMatrix&, std::span<const Rational>, std::size_t,
                                                   Exec);

int max_threads() { return omp_get_max_threads(); }

}  // namespace kernels

}  // namespace bratteli
