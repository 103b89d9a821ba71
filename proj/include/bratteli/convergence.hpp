#pragma once

#include "bratteli/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bratteli {

enum class SeriesStatus { Finite, Infinite, Undetermined };

enum class Certificate {
    None,
    Exact,                 // closed evaluation, no series tail
    GeometricRatio,        // t_{n+1}/t_n <= q < 1 persists
    WeightedRatio,         // w^T M <= q w^T for the finite transfer matrix M
    ReciprocalComparison,  // tail dominated through sum 1/a_n
    TermLowerBound,        // t_n >= eps > 0 from some index on
    DivergentMinorant,     // partial sums dominate a divergent series
};

struct TracePoint {
    std::size_t n;
    Rational term;
    Rational partial;
};

// Outcome of a certified nonnegative series. Finite guarantees the true
// value lies in [partial_sum, partial_sum + tail_bound].
struct ConvergenceResult {
    SeriesStatus status = SeriesStatus::Undetermined;
    Rational partial_sum = 0;
    std::size_t terms_used = 0;
    Rational tail_bound = 0;               // Finite only
    std::optional<Rational> exact_value;   // Finite only, when the tail sums in closed form
    Certificate certificate = Certificate::None;
    std::string witness;                   // certificate description; divergence argument when Infinite
    std::vector<TracePoint> trace;

    bool finite() const { return status == SeriesStatus::Finite; }
    bool infinite() const { return status == SeriesStatus::Infinite; }
    Rational upper() const { return partial_sum + tail_bound; }
    bool contains(const Rational& v) const;
    // exact value when known, else interval midpoint
    Rational representative() const;

    static ConvergenceResult exact(Rational v, std::string witness = "closed evaluation");
};

const char* to_string(SeriesStatus s);
const char* to_string(Certificate c);
SeriesStatus parse_series_status(const std::string& s);
Certificate parse_certificate(const std::string& s);

}  // namespace bratteli
