#pragma once

#include "bratteli/level_matrix.hpp"

#include <span>
#include <vector>

// Row-wise recursions over incidence windows. Each kernel has a serial
// reference and an OpenMP version; both produce bit-identical results.
namespace bratteli::kernels {

enum class Exec { Serial, Parallel };

// y_v = sum_w f_vw x_w for v = 1..rows. Every column referenced by those
// rows must lie within x.
template <class T>
std::vector<T> multiply(const LevelMatrix& f, std::span<const T> x, std::size_t rows, Exec exec);

// q_w = sum_v f_vw p_v for w = 1..cols (the F^T action). Rows referenced by
// those columns must lie within p.
template <class T>
std::vector<T> multiply_transposed(const LevelMatrix& f, std::span<const T> p, std::size_t cols, Exec exec);

int max_threads();

}  // namespace bratteli::kernels
