#pragma once

#include "bratteli/convergence.hpp"
#include "bratteli/diagram.hpp"
#include "bratteli/measure.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bratteli {

struct SeriesOptions {
    std::size_t max_terms = 2000;
    bool keep_trace = false;
};

// Vertex subdiagram: either the odometer {i} on every level or explicit
// vertex sets for finitely many levels.
class SubdiagramSpec {
public:
    static SubdiagramSpec odometer(std::size_t i);
    static SubdiagramSpec per_level(std::vector<std::vector<std::size_t>> sets);

    std::optional<std::size_t> odometer_index() const;
    std::optional<std::size_t> defined_levels() const;  // nullopt: every level
    const std::vector<std::size_t>& vertices(std::size_t level) const;
    bool contains(std::size_t level, std::size_t v) const;

private:
    std::size_t odometer_ = 0;
    std::vector<std::vector<std::size_t>> sets_;
    mutable std::vector<std::size_t> single_;
};

// Subdiagram measure vectors are indexed by position within the sorted W_n.
TailInvarianceReport check_subdiagram_invariance(const DiagramSpec& spec, const SubdiagramSpec& sub,
                                                 const MeasureVectors& p);

// 1 + sum_n sum_{v in W_{n+1}} sum_{w notin W_n} f_vw H^{(n)}_w p^{(n+1)}_v.
ConvergenceResult extension_total_mass(const DiagramSpec& spec, const SubdiagramSpec& sub, const MeasureVectors& p,
                                       const SeriesOptions& opts = {});
// Partial sums S_0 = 1, S_{n+1} = S_n + (level-n term) computed directly from
// heights, for as many levels as heights and p certify (at most `levels`).
std::vector<Rational> extension_partial_sums(const DiagramSpec& spec, const SubdiagramSpec& sub,
                                             const MeasureVectors& p, std::size_t levels, const Truncation& window);

ConvergenceResult dio_extension_mass(const DiagramSpec& spec, std::size_t i, const SeriesOptions& opts = {});

// Extension of odometer i evaluated on cylinders ending at (m, j).
ConvergenceResult extended_cylinder_measure(const DiagramSpec& spec, std::size_t i, EndVertex cyl,
                                            const SeriesOptions& opts = {});

struct ExtendedMeasure {
    DiagramSpec spec;
    std::size_t index;
    ConvergenceResult mass;
    bool normalized = false;
    SeriesOptions options;
};

// Normalization is only honoured when the mass is certified Finite.
ExtendedMeasure extend_measure(const DiagramSpec& spec, std::size_t i, const SeriesOptions& opts = {},
                               bool normalize = false);
ConvergenceResult cylinder_measure(const ExtendedMeasure& mu, const CylinderSpec& cyl);
// Exact p^{(n)} tables; throws CertificationError unless every value is exact.
MeasureVectors exact_vectors(const ExtendedMeasure& mu, std::size_t levels, std::size_t width);

struct ClassificationEntry {
    std::size_t index;
    ConvergenceResult mass;
    std::optional<Rational> normalizing_mass;  // Finite entries: exact mass or interval midpoint
};

struct ClassificationReport {
    std::vector<ClassificationEntry> entries;
    bool partial = false;
    std::vector<std::string> notes;
    std::size_t finite_count() const;
};

ClassificationReport classify_ergodic_measures(const DiagramSpec& spec, std::size_t i_max,
                                               const SeriesOptions& opts = {},
                                               kernels::Exec exec = kernels::Exec::Serial);

enum class Criterion { Convergent, Divergent };

struct ClosedForm {
    Criterion verdict;
    std::optional<Rational> mass;
    std::string rule;
};

// Closed-form mass or convergence criterion for the extension of odometer i,
// computed from the family parameters alone.
std::optional<ClosedForm> closed_form_oracles(const DiagramSpec& spec, std::size_t i = 1);

}  // namespace bratteli
