#pragma once

#include "bratteli/convergence.hpp"
#include "bratteli/diagram.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace bratteli {

// p^{(n)}_w for levels 0..levels()-1; level n holds vertices 1..exact_width(n).
class MeasureVectors {
public:
    MeasureVectors() = default;
    explicit MeasureVectors(std::vector<std::vector<Rational>> levels);

    template <class Fn>
    static MeasureVectors tabulate(std::size_t levels, std::size_t width, Fn&& fn) {
        std::vector<std::vector<Rational>> v(levels, std::vector<Rational>(width));
        for (std::size_t n = 0; n < levels; ++n)
            for (std::size_t i = 1; i <= width; ++i) v[n][i - 1] = fn(n, i);
        return MeasureVectors(std::move(v));
    }

    std::size_t levels() const { return levels_.size(); }
    std::size_t exact_width(std::size_t n) const;
    const std::vector<Rational>& level(std::size_t n) const;
    const Rational& at(std::size_t n, std::size_t i) const;

    MeasureVectors scaled(const Rational& c) const;
    MeasureVectors with_entry(std::size_t n, std::size_t i, Rational v) const;
    bool operator==(const MeasureVectors& o) const { return levels_ == o.levels_; }

private:
    std::vector<std::vector<Rational>> levels_;
};

// One edge of a finite path; `copy` picks among the f_{range,source} parallel
// edges. On DIO diagrams vertical edges are e_1..e_a (copy 1..a, range ==
// source) and the diagonal edge f runs from source i+1 into range i.
struct PathEdge {
    std::size_t source;
    std::size_t range;
    std::size_t copy = 1;
    bool operator==(const PathEdge&) const = default;
};

struct ExplicitPath {
    std::size_t start = 1;  // vertex on level 0
    std::vector<PathEdge> edges;
    std::size_t end() const { return edges.empty() ? start : edges.back().range; }
    bool operator==(const ExplicitPath&) const = default;
};

// Tail-invariant abbreviation: any cylinder of length m ending at (m, index).
struct EndVertex {
    std::size_t length = 0;
    std::size_t index = 1;
    bool operator==(const EndVertex&) const = default;
};

using CylinderSpec = std::variant<ExplicitPath, EndVertex>;

// Validates composition and multiplicity bounds, then returns the end vertex.
EndVertex resolve_cylinder(const DiagramSpec& spec, const CylinderSpec& cyl);
// All one-edge extensions of a path (the length-(m+1) refinements).
std::vector<ExplicitPath> refinements(const DiagramSpec& spec, const ExplicitPath& path, const Truncation& window);

struct TailViolation {
    std::size_t level;   // n: compares F_n^T p^{(n+1)} with p^{(n)}
    std::size_t vertex;  // w on level n
    Rational lhs;        // sum_v f_vw p^{(n+1)}_v
    Rational rhs;        // p^{(n)}_w
};

struct TailInvarianceReport {
    std::vector<bool> level_pass;
    std::vector<std::size_t> rows_checked;
    std::vector<TailViolation> failures;
    bool passed() const { return failures.empty(); }
    std::optional<TailViolation> first_violation() const;
};

TailInvarianceReport check_tail_invariance(const DiagramSpec& spec, const MeasureVectors& mv, const Truncation& window,
                                           kernels::Exec exec = kernels::Exec::Serial);

// The unique invariant probability on the odometer subdiagram at vertex i.
class OdometerMeasure {
public:
    OdometerMeasure(DiagramSpec spec, std::size_t index);

    const DiagramSpec& spec() const { return spec_; }
    std::size_t index() const { return index_; }
    BigInt denominator(std::size_t m) const;  // a_0^{(i)} ... a_{m-1}^{(i)}
    Rational vertical_value(std::size_t m) const;
    // Level n holds the single entry of the subdiagram vector at vertex i.
    MeasureVectors subdiagram_vectors(std::size_t levels) const;

private:
    DiagramSpec spec_;
    std::size_t index_;
};

OdometerMeasure odometer_measure(const DiagramSpec& spec, std::size_t i);

ConvergenceResult cylinder_measure(const DiagramSpec& spec, const MeasureVectors& mv, const CylinderSpec& cyl);
ConvergenceResult cylinder_measure(const OdometerMeasure& mu, const CylinderSpec& cyl);

}  // namespace bratteli
