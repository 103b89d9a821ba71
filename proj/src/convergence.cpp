#include "bratteli/convergence.hpp"

#include "bratteli/error.hpp"

#include <array>
#include <utility>

namespace bratteli {

bool ConvergenceResult::contains(const Rational& v) const {
    if (!finite()) return false;
    return partial_sum <= v && v <= upper();
}

Rational ConvergenceResult::representative() const {
    if (exact_value) return *exact_value;
    Rational mid = partial_sum + tail_bound / 2;
    mid.canonicalize();
    return mid;
}

ConvergenceResult ConvergenceResult::exact(Rational v, std::string witness) {
    ConvergenceResult r;
    r.status = SeriesStatus::Finite;
    r.partial_sum = v;
    r.exact_value = std::move(v);
    r.certificate = Certificate::Exact;
    r.witness = std::move(witness);
    return r;
}

namespace {

constexpr std::array<std::pair<SeriesStatus, const char*>, 3> kStatus{{
    {SeriesStatus::Finite, "finite"},
    {SeriesStatus::Infinite, "infinite"},
    {SeriesStatus::Undetermined, "undetermined"},
}};

constexpr std::array<std::pair<Certificate, const char*>, 7> kCert{{
    {Certificate::None, "none"},
    {Certificate::Exact, "exact"},
    {Certificate::GeometricRatio, "geometric-ratio"},
    {Certificate::WeightedRatio, "weighted-ratio"},
    {Certificate::ReciprocalComparison, "reciprocal-comparison"},
    {Certificate::TermLowerBound, "term-lower-bound"},
    {Certificate::DivergentMinorant, "divergent-minorant"},
}};

}  // namespace

const char* to_string(SeriesStatus s) {
    for (auto [k, name] : kStatus)
        if (k == s) return name;
    return "?";
}

const char* to_string(Certificate c) {
    for (auto [k, name] : kCert)
        if (k == c) return name;
    return "?";
}

SeriesStatus parse_series_status(const std::string& s) {
    for (auto [k, name] : kStatus)
        if (s == name) return k;
    throw ConfigError("unknown series status: " + s);
}

Certificate parse_certificate(const std::string& s) {
    for (auto [k, name] : kCert)
        if (s == name) return k;
    throw ConfigError("unknown certificate kind: " + s);
}

}  // namespace bratteli
