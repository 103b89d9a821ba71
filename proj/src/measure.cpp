#include "bratteli/measure.hpp"

#include "bratteli/error.hpp"

#include <algorithm>
#include <string>

namespace bratteli {

MeasureVectors::MeasureVectors(std::vector<std::vector<Rational>> levels) : levels_(std::move(levels)) {
    for (auto& lv : levels_)
        for (auto& v : lv) {
            v.canonicalize();
            if (v < 0) throw ConfigError("measure vectors must be nonnegative");
        }
}

std::size_t MeasureVectors::exact_width(std::size_t n) const { return level(n).size(); }

const std::vector<Rational>& MeasureVectors::level(std::size_t n) const {
    if (n >= levels_.size()) throw WindowError("measure vectors have no level " + std::to_string(n));
    return levels_[n];
}

const Rational& MeasureVectors::at(std::size_t n, std::size_t i) const {
    const auto& lv = level(n);
    if (i < 1 || i > lv.size())
        throw WindowError("p^(" + std::to_string(n) + ")_" + std::to_string(i) + " outside certified width");
    return lv[i - 1];
}

MeasureVectors MeasureVectors::scaled(const Rational& c) const {
    auto copy = levels_;
    for (auto& lv : copy)
        for (auto& v : lv) v *= c;
    return MeasureVectors(std::move(copy));
}

MeasureVectors MeasureVectors::with_entry(std::size_t n, std::size_t i, Rational v) const {
    at(n, i);
    auto copy = levels_;
    copy[n][i - 1] = std::move(v);
    return MeasureVectors(std::move(copy));
}

namespace {

Truncation window_for_path(const DiagramSpec& spec, const ExplicitPath& p) {
    std::size_t widest = p.start;
    for (const auto& e : p.edges) widest = std::max({widest, e.source, e.range});
    Truncation w = spec.window();
    w.max_level = std::max(w.max_level, p.edges.size() + 1);
    w.max_vertex = std::max(w.max_vertex, widest + 1);
    return w;
}

}  // namespace

EndVertex resolve_cylinder(const DiagramSpec& spec, const CylinderSpec& cyl) {
    if (auto* ev = std::get_if<EndVertex>(&cyl)) {
        if (ev->index < 1) throw ConfigError("cylinder end vertex index must be >= 1");
        return *ev;
    }
    const auto& p = std::get<ExplicitPath>(cyl);
    if (p.start < 1) throw ConfigError("path start vertex must be >= 1");
    Truncation w = window_for_path(spec, p);
    std::size_t cur = p.start;
    for (std::size_t j = 0; j < p.edges.size(); ++j) {
        const auto& e = p.edges[j];
        if (e.source != cur)
            throw ConfigError("path edge " + std::to_string(j) + " does not start where the previous edge ends");
        LevelMatrix f = incidence(spec, j, w);
        BigInt mult = f.at(e.range, e.source);
        if (e.copy < 1 || BigInt(static_cast<unsigned long>(e.copy)) > mult)
            throw ConfigError("path edge " + std::to_string(j) + " copy index " + std::to_string(e.copy) +
                              " outside multiplicity " + mult.get_str());
        cur = e.range;
    }
    return EndVertex{p.edges.size(), cur};
}

std::vector<ExplicitPath> refinements(const DiagramSpec& spec, const ExplicitPath& path, const Truncation& window) {
    resolve_cylinder(spec, path);
    std::size_t m = path.edges.size();
    std::size_t j = path.end();
    LevelMatrix f = incidence(spec, m, window);
    if (j > f.complete_cols()) throw WindowError("refinements of a path leaving the complete window");
    std::vector<ExplicitPath> out;
    for (std::size_t k : f.column(j)) {
        const auto& e = f.entries()[k];
        for (unsigned long c = 1; BigInt(c) <= e.mult; ++c) {
            ExplicitPath q = path;
            q.edges.push_back({j, e.row, c});
            out.push_back(std::move(q));
        }
    }
    return out;
}

std::optional<TailViolation> TailInvarianceReport::first_violation() const {
    if (failures.empty()) return std::nullopt;
    return failures.front();
}

TailInvarianceReport check_tail_invariance(const DiagramSpec& spec, const MeasureVectors& mv, const Truncation& window,
                                           kernels::Exec exec) {
    window.validate();
    if (mv.levels() < 2) throw WindowError("tail invariance needs measure vectors on at least two levels");
    TailInvarianceReport rep;
    std::size_t last = std::min(mv.levels() - 1, window.max_level);
    for (std::size_t n = 0; n < last; ++n) {
        LevelMatrix f = incidence(spec, n, window);
        const auto& upper = mv.level(n + 1);
        const auto& lower = mv.level(n);
        // Certified columns: complete in the window and fully covered by p^{(n+1)}.
        std::size_t c = 0;
        while (c < std::min(f.complete_cols(), lower.size())) {
            bool covered = true;
            for (std::size_t k : f.column(c + 1))
                if (f.entries()[k].row > upper.size()) covered = false;
            if (!covered) break;
            ++c;
        }
        if (c == 0)
            throw WindowError("width mismatch: no certified row at level " + std::to_string(n) +
                              " for the given measure vectors");
        auto q = kernels::multiply_transposed<Rational>(f, upper, c, exec);
        bool ok = true;
        for (std::size_t w = 1; w <= c; ++w) {
            if (q[w - 1] != lower[w - 1]) {
                ok = false;
                rep.failures.push_back({n, w, q[w - 1], lower[w - 1]});
            }
        }
        rep.level_pass.push_back(ok);
        rep.rows_checked.push_back(c);
    }
    return rep;
}

OdometerMeasure::OdometerMeasure(DiagramSpec spec, std::size_t index) : spec_(std::move(spec)), index_(index) {
    if (!spec_.is_dio()) throw ConfigError("odometer measures need a DIO family");
    if (index_ < 1) throw ConfigError("odometer index must be >= 1");
}

BigInt OdometerMeasure::denominator(std::size_t m) const {
    BigInt d = 1;
    for (std::size_t l = 0; l < m; ++l) d *= spec_.diag(l, index_);
    return d;
}

Rational OdometerMeasure::vertical_value(std::size_t m) const { return Rational(BigInt(1), denominator(m)); }

MeasureVectors OdometerMeasure::subdiagram_vectors(std::size_t levels) const {
    std::vector<std::vector<Rational>> v;
    BigInt d = 1;
    for (std::size_t n = 0; n < levels; ++n) {
        v.push_back({Rational(BigInt(1), d)});
        d *= spec_.diag(n, index_);
    }
    return MeasureVectors(std::move(v));
}

OdometerMeasure odometer_measure(const DiagramSpec& spec, std::size_t i) { return OdometerMeasure(spec, i); }

ConvergenceResult cylinder_measure(const DiagramSpec& spec, const MeasureVectors& mv, const CylinderSpec& cyl) {
    EndVertex ev = resolve_cylinder(spec, cyl);
    return ConvergenceResult::exact(mv.at(ev.length, ev.index), "measure vectors");
}

ConvergenceResult cylinder_measure(const OdometerMeasure& mu, const CylinderSpec& cyl) {
    EndVertex ev = resolve_cylinder(mu.spec(), cyl);
    bool inside = ev.index == mu.index();
    if (auto* p = std::get_if<ExplicitPath>(&cyl)) {
        inside = p->start == mu.index();
        for (const auto& e : p->edges) inside = inside && e.source == mu.index() && e.range == mu.index();
    }
    if (!inside) return ConvergenceResult::exact(0, "cylinder leaves the odometer");
    return ConvergenceResult::exact(mu.vertical_value(ev.length), "odometer product");
}

}  // namespace bratteli
