#pragma once

#include "bratteli/convergence.hpp"
#include "bratteli/diagram.hpp"
#include "bratteli/extension.hpp"
#include "bratteli/measure.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bratteli {

// xi_i = ratio^{i-1}
struct GeometricXi {
    Rational ratio;
};
// xi_i = 0 for i < shift, 1 at i = shift, then prod_{v=shift+1..i} 1/(a_shift - a_v).
// Vertex v reads a.at(v - 1).
struct ShiftedProductXi {
    Sequence a;
    std::size_t shift = 1;
};
// Finitely many entries; the certified window ends with the table.
struct TableXi {
    std::vector<Rational> values;
};

using XiGenerator = std::variant<GeometricXi, ShiftedProductXi, TableXi>;

// Right eigenvector of A = F^T, stored as a generator so any index is exact.
struct EigenPair {
    Rational lambda;
    XiGenerator xi;
    Rational scale = 1;

    Rational at(std::size_t i) const;
    std::optional<std::size_t> defined_length() const;  // nullopt: every index
    EigenPair scaled(const Rational& c) const;
    std::string describe() const;
};

EigenPair eigenvector_ak(long a, long k);
// Dominance a_m > a_v for v > m is checked exactly when the sequence bounds
// its tail, else up to window.max_vertex.
EigenPair eigenvector_decreasing(const Sequence& a, std::size_t m, const Truncation& window = {});

struct ResidualReport {
    std::size_t rows_checked = 0;
    std::vector<Rational> residuals;  // (A xi)_i - lambda xi_i, i = 1..rows_checked
    std::vector<std::size_t> nonzero_rows;
    bool verified() const { return rows_checked > 0 && nonzero_rows.empty(); }
};

// Stationary specs only; rows are the columns of F_0 complete in the window.
ResidualReport verify_eigenpair(const DiagramSpec& spec, const EigenPair& pair, const Truncation& window,
                                kernels::Exec exec = kernels::Exec::Serial);

struct EigenMeasure {
    DiagramSpec spec;
    EigenPair pair;
};

// Throws CertificationError unless the pair verifies on spec.window().
EigenMeasure eigen_measure(const DiagramSpec& spec, const EigenPair& pair);
// xi_v / lambda^m at EndVertex(m, v)
ConvergenceResult cylinder_measure(const EigenMeasure& mu, const CylinderSpec& cyl);
MeasureVectors eigen_vectors(const EigenMeasure& mu, std::size_t levels, std::size_t width);

enum class Agreement { Equal, NotEqual, Skipped };
const char* to_string(Agreement a);

struct CylinderComparison {
    EndVertex cylinder;
    Rational eigen_value;
    ConvergenceResult extension;
    Agreement verdict;
};

struct ComparisonReport {
    std::vector<CylinderComparison> rows;
    std::size_t count(Agreement a) const;
    bool all_equal() const { return !rows.empty() && count(Agreement::Equal) == rows.size(); }
};

// Equal: the extension is exact and matches, or its interval contains the
// eigen value with tail bound <= threshold.
ComparisonReport compare_eigen_vs_extension(const DiagramSpec& spec, std::size_t i, const EigenPair& pair,
                                            const std::vector<EndVertex>& cylinders, const SeriesOptions& opts = {},
                                            const Rational& threshold = Rational(1, 1000000000));

}  // namespace bratteli
