#include "bratteli/spectral.hpp"

#include "bratteli/error.hpp"

#include <algorithm>
#include <sstream>
#include <type_traits>

namespace bratteli {

Rational EigenPair::at(std::size_t i) const {
    if (i < 1) throw ConfigError("eigenvector index must be >= 1");
    Rational v = std::visit(
        [&](const auto& g) -> Rational {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, GeometricXi>) {
                return ipow(g.ratio, static_cast<unsigned long>(i - 1));
            } else if constexpr (std::is_same_v<G, ShiftedProductXi>) {
                if (i < g.shift) return Rational(0);
                BigInt am = g.a.at(g.shift - 1);
                BigInt den = 1;
                for (std::size_t v = g.shift + 1; v <= i; ++v) den *= am - g.a.at(v - 1);
                return Rational(BigInt(1), den);
            } else {
                if (i > g.values.size())
                    throw WindowError("eigenvector table has no entry " + std::to_string(i));
                return g.values[i - 1];
            }
        },
        xi);
    v *= scale;
    v.canonicalize();
    return v;
}

std::optional<std::size_t> EigenPair::defined_length() const {
    if (auto* t = std::get_if<TableXi>(&xi)) return t->values.size();
    return std::nullopt;
}

EigenPair EigenPair::scaled(const Rational& c) const {
    if (c <= 0) throw ConfigError("eigenvector scale must be positive");
    EigenPair p = *this;
    p.scale *= c;
    p.scale.canonicalize();
    return p;
}

std::string EigenPair::describe() const {
    std::ostringstream os;
    os << "lambda = " << to_fraction_string(lambda) << ", xi = ";
    std::visit(
        [&](const auto& g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, GeometricXi>)
                os << "(" << to_fraction_string(g.ratio) << ")^(i-1)";
            else if constexpr (std::is_same_v<G, ShiftedProductXi>)
                os << "prod_{v=" << g.shift + 1 << "..i} 1/(a_" << g.shift << " - a_v) over " << g.a.describe();
            else
                os << "table of " << g.values.size() << " entries";
        },
        xi);
    if (scale != 1) os << ", scaled by " << to_fraction_string(scale);
    return os.str();
}

EigenPair eigenvector_ak(long a, long k) {
    if (a < 2 || k < 1 || a - k < 1) throw ConfigError("eigenvector_ak needs a >= 2, k >= 1, a - k >= 1");
    Rational r(BigInt(1), BigInt(k));
    return EigenPair{Rational(a), GeometricXi{r}, 1};
}

EigenPair eigenvector_decreasing(const Sequence& a, std::size_t m, const Truncation& window) {
    if (m < 1) throw ConfigError("eigenvector shift must be >= 1");
    BigInt am = a.at(m - 1);
    auto fail = [&](std::size_t v) {
        throw ConfigError("dominance violated: a_" + std::to_string(m) + " = " + am.get_str() + " <= a_" +
                          std::to_string(v) + " = " + a.at(v - 1).get_str());
    };
    // first_at_least(m, am) is the 0-based index of the first v > m with a_v >= a_m.
    // Unbounded sequences are only checked inside the window.
    auto bad = a.first_at_least(m, am);
    if (bad && (a.sup_from(m) || *bad + 1 <= window.max_vertex)) fail(*bad + 1);
    return EigenPair{Rational(am), ShiftedProductXi{a, m}, 1};
}

ResidualReport verify_eigenpair(const DiagramSpec& spec, const EigenPair& pair, const Truncation& window,
                                kernels::Exec exec) {
    window.validate();
    if (!spec.is_stationary()) throw ConfigError("eigenpair verification needs a stationary diagram");
    std::size_t len = window.max_vertex;
    if (auto f = spec.finite_width()) len = std::min(len, *f);
    if (auto d = pair.defined_length()) len = std::min(len, *d);
    std::vector<Rational> xi(len);
    for (std::size_t i = 1; i <= len; ++i) xi[i - 1] = pair.at(i);
    LevelMatrix f = incidence(spec, 0, window);
    std::size_t c = 0;
    while (c < std::min(f.complete_cols(), len)) {
        bool ok = true;
        for (std::size_t k : f.column(c + 1))
            if (f.entries()[k].row > len) ok = false;
        if (!ok) break;
        ++c;
    }
    ResidualReport rep;
    rep.rows_checked = c;
    if (c == 0) return rep;
    auto ax = kernels::multiply_transposed<Rational>(f, xi, c, exec);
    for (std::size_t i = 1; i <= c; ++i) {
        Rational r = ax[i - 1] - pair.lambda * xi[i - 1];
        r.canonicalize();
        if (r != 0) rep.nonzero_rows.push_back(i);
        rep.residuals.push_back(std::move(r));
    }
    return rep;
}

EigenMeasure eigen_measure(const DiagramSpec& spec, const EigenPair& pair) {
    if (pair.lambda <= 0) throw ConfigError("eigenvalue must be positive");
    auto rep = verify_eigenpair(spec, pair, spec.window());
    if (!rep.verified()) {
        std::string where = rep.nonzero_rows.empty() ? "no certifiable row" : "row " + std::to_string(rep.nonzero_rows.front());
        throw CertificationError("unverified eigenpair rejected: nonzero residual at " + where);
    }
    return EigenMeasure{spec, pair};
}

ConvergenceResult cylinder_measure(const EigenMeasure& mu, const CylinderSpec& cyl) {
    EndVertex ev = resolve_cylinder(mu.spec, cyl);
    Rational v = mu.pair.at(ev.index) / ipow(mu.pair.lambda, static_cast<unsigned long>(ev.length));
    v.canonicalize();
    return ConvergenceResult::exact(v, "xi_v / lambda^m");
}

MeasureVectors eigen_vectors(const EigenMeasure& mu, std::size_t levels, std::size_t width) {
    return MeasureVectors::tabulate(levels, width, [&](std::size_t n, std::size_t i) {
        return *cylinder_measure(mu, EndVertex{n, i}).exact_value;
    });
}

const char* to_string(Agreement a) {
    switch (a) {
        case Agreement::Equal: return "equal";
        case Agreement::NotEqual: return "not-equal";
        case Agreement::Skipped: return "skipped";
    }
    return "?";
}

std::size_t ComparisonReport::count(Agreement a) const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [&](const auto& r) { return r.verdict == a; }));
}

ComparisonReport compare_eigen_vs_extension(const DiagramSpec& spec, std::size_t i, const EigenPair& pair,
                                            const std::vector<EndVertex>& cylinders, const SeriesOptions& opts,
                                            const Rational& threshold) {
    EigenMeasure mu = eigen_measure(spec, pair);
    ComparisonReport rep;
    for (const auto& c : cylinders) {
        CylinderComparison row{c, *cylinder_measure(mu, c).exact_value, extended_cylinder_measure(spec, i, c, opts),
                               Agreement::Skipped};
        const auto& ext = row.extension;
        if (ext.status == SeriesStatus::Undetermined)
            row.verdict = Agreement::Skipped;
        else if (ext.exact_value)
            row.verdict = *ext.exact_value == row.eigen_value ? Agreement::Equal : Agreement::NotEqual;
        else if (ext.finite() && ext.contains(row.eigen_value) && ext.tail_bound <= threshold)
            row.verdict = Agreement::Equal;
        else
            row.verdict = Agreement::NotEqual;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace bratteli
