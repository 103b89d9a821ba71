#include "bratteli/vershik.hpp"

#include "bratteli/error.hpp"

#include <algorithm>
#include <type_traits>

namespace bratteli::vershik {

const char* to_string(OrderTag t) {
    switch (t) {
        case OrderTag::Left: return "left";
        case OrderTag::Right: return "right";
        case OrderTag::Middle: return "middle";
    }
    return "?";
}

OrderTag parse_tag(const std::string& s) {
    if (s == "left") return OrderTag::Left;
    if (s == "right") return OrderTag::Right;
    if (s == "middle") return OrderTag::Middle;
    throw ConfigError("unknown order tag: " + s);
}

VertexOrder VertexOrder::permutation(std::vector<std::size_t> perm) {
    std::vector<std::size_t> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k)
        if (sorted[k] != k) throw ConfigError("vertex order must list edges 0..a exactly once");
    if (perm.size() < 2) throw ConfigError("vertex order needs at least one vertical edge and f");
    VertexOrder o(OrderTag::Right);
    if (perm.front() == 0)
        o.tag_ = OrderTag::Left;
    else if (perm.back() != 0)
        o.tag_ = OrderTag::Middle;
    o.perm_ = std::move(perm);
    return o;
}

OrderTag VertexOrder::tag() const { return tag_; }

std::size_t VertexOrder::position(EdgeRef e, std::size_t a) const {
    if (!e.diagonal() && (e.copy < 1 || e.copy > a)) throw ConfigError("vertical copy outside multiplicity");
    if (perm_) {
        if (perm_->size() != a + 1) throw ConfigError("explicit vertex order has the wrong number of edges");
        return static_cast<std::size_t>(std::find(perm_->begin(), perm_->end(), e.copy) - perm_->begin());
    }
    switch (tag_) {
        case OrderTag::Left: return e.copy;
        case OrderTag::Right: return e.diagonal() ? a : e.copy - 1;
        case OrderTag::Middle:
            if (a < 2) throw ConfigError("middle order needs at least two vertical edges");
            return e.diagonal() ? 1 : (e.copy == 1 ? 0 : e.copy);
    }
    return 0;
}

EdgeRef VertexOrder::at_position(std::size_t p, std::size_t a) const {
    if (p > a) throw ConfigError("order position outside r^{-1}(v)");
    if (perm_) {
        if (perm_->size() != a + 1) throw ConfigError("explicit vertex order has the wrong number of edges");
        return {(*perm_)[p]};
    }
    switch (tag_) {
        case OrderTag::Left: return {p};
        case OrderTag::Right: return {p == a ? 0 : p + 1};
        case OrderTag::Middle:
            if (a < 2) throw ConfigError("middle order needs at least two vertical edges");
            return {p == 0 ? 1 : (p == 1 ? 0 : p)};
    }
    return {};
}

OrderTag TagRule::at(std::size_t i) const {
    if (auto it = table.find(i); it != table.end()) return it->second;
    if (!pattern.empty()) return pattern[(i - 1) % pattern.size()];
    return fallback;
}

std::vector<OrderTag> TagRule::recurring() const {
    std::vector<OrderTag> out = pattern.empty() ? std::vector<OrderTag>{fallback} : pattern;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

VertexOrder order_at(const OrderSpec& order, VertexId v) {
    if (v.level < 1) throw ConfigError("level-0 vertices have no incoming edges");
    if (auto* e = std::get_if<ExplicitOrder>(&order)) {
        auto it = e->orders.find(v);
        if (it == e->orders.end())
            throw WindowError("explicit order undefined at (" + std::to_string(v.level) + ", " +
                              std::to_string(v.index) + ")");
        return it->second;
    }
    if (auto* q = std::get_if<QuasiStationary>(&order)) return VertexOrder::canonical(q->tags.at(v.index));
    const auto& eq = std::get<EventuallyQuasiStationary>(order);
    if (auto it = eq.exceptions.find(v); it != eq.exceptions.end()) return it->second;
    return VertexOrder::canonical(eq.tags.at(v.index));
}

const char* to_string(Tristate t) {
    switch (t) {
        case Tristate::No: return "no";
        case Tristate::Yes: return "yes";
        case Tristate::Unknown: return "unknown";
    }
    return "?";
}

namespace {

const TagRule* eventual_tags(const OrderSpec& order) {
    if (auto* q = std::get_if<QuasiStationary>(&order)) return &q->tags;
    if (auto* e = std::get_if<EventuallyQuasiStationary>(&order)) return &e->tags;
    return nullptr;
}

}  // namespace

OdometerClass classify_odometer(const DiagramSpec& spec, const OrderSpec& order, std::size_t i) {
    if (!spec.is_dio()) throw ConfigError("orders are defined on DIO diagrams only");
    if (i < 1) throw ConfigError("odometer index must be >= 1");
    OdometerClass c;
    const TagRule* tags = eventual_tags(order);
    if (!tags) {
        c.caveat = "explicit order: eventual behaviour beyond the window (" +
                   std::to_string(spec.window().max_level) + " levels) is unknown";
        return c;
    }
    // Finitely many exceptions never change the eventual tag.
    OrderTag t = tags->at(i);
    c.finite_right = t == OrderTag::Right ? Tristate::No : Tristate::Yes;
    c.finite_left = t == OrderTag::Left ? Tristate::No : Tristate::Yes;
    return c;
}

std::string Cardinal::str() const { return aleph0 ? "aleph0" : std::to_string(count); }

const char* to_string(Homeomorphism h) {
    switch (h) {
        case Homeomorphism::Yes: return "yes";
        case Homeomorphism::No: return "no";
        case Homeomorphism::NoQuasiStationary: return "no-quasi-stationary";
    }
    return "?";
}

ExtensionVerdict extension_verdict(const DiagramSpec& spec, const OrderSpec& order, std::size_t i_max) {
    if (!spec.is_dio()) throw ConfigError("orders are defined on DIO diagrams only");
    const TagRule* tags = eventual_tags(order);
    if (!tags) throw ConfigError("explicit order: undecidable from finite data");
    auto fr_tag = [](OrderTag t) { return t != OrderTag::Right; };
    auto fl_tag = [](OrderTag t) { return t != OrderTag::Left; };

    ExtensionVerdict v;
    auto rec = tags->recurring();
    v.fr.aleph0 = std::any_of(rec.begin(), rec.end(), fr_tag);
    v.fl.aleph0 = std::any_of(rec.begin(), rec.end(), fl_tag);
    // Without recurrence the set is confined to the table.
    for (const auto& [i, t] : tags->table) {
        if (!v.fr.aleph0 && fr_tag(t)) ++v.fr.count;
        if (!v.fl.aleph0 && fl_tag(t)) ++v.fl.count;
    }
    for (std::size_t i = 1; i <= i_max; ++i) {
        OrderTag t = tags->at(i);
        if (fr_tag(t)) v.fr_witness.push_back(i);
        if (fl_tag(t)) v.fl_witness.push_back(i);
    }
    v.borel = v.fr == v.fl;
    if (v.fr.empty() && v.fl.empty())
        v.homeomorphism = Homeomorphism::Yes;
    else if (v.borel)
        v.homeomorphism = Homeomorphism::NoQuasiStationary;
    else
        v.homeomorphism = Homeomorphism::No;
    return v;
}

std::size_t TruncatedPath::vertex(std::size_t n) const {
    if (n > steps.size()) throw WindowError("path has no level " + std::to_string(n));
    std::size_t v = start;
    for (std::size_t k = 0; k < n; ++k) v -= steps[k].diagonal ? 1 : 0;
    return v;
}

void validate_path(const DiagramSpec& spec, const TruncatedPath& p) {
    if (!spec.is_dio()) throw ConfigError("orders are defined on DIO diagrams only");
    if (p.start < 1) throw ConfigError("path start must be >= 1");
    if (p.steps.size() > spec.window().max_level) throw WindowError("path longer than the window");
    std::size_t v = p.start;
    for (std::size_t n = 0; n < p.steps.size(); ++n) {
        const auto& s = p.steps[n];
        if (s.diagonal) {
            if (v < 2) throw ConfigError("diagonal edge out of vertex 1 at level " + std::to_string(n));
            --v;
        } else if (s.copy < 1 || BigInt(static_cast<unsigned long>(s.copy)) > spec.diag(n, v)) {
            throw ConfigError("vertical copy outside multiplicity at level " + std::to_string(n));
        }
    }
}

namespace {

std::size_t vertical_count(const DiagramSpec& spec, std::size_t n, std::size_t i) {
    BigInt a = spec.diag(n, i);
    if (!a.fits_ulong_p()) throw WindowError("multiplicity too large to enumerate");
    return a.get_ui();
}

EdgeRef edge_ref(const Step& s) { return {s.diagonal ? 0 : s.copy}; }

}  // namespace

std::size_t edge_position(const DiagramSpec& spec, const OrderSpec& order, const TruncatedPath& p, std::size_t n) {
    std::size_t range = p.vertex(n + 1);
    return order_at(order, {n + 1, range}).position(edge_ref(p.steps[n]), vertical_count(spec, n, range));
}

TruncatedPath minimal_path(const DiagramSpec& spec, const OrderSpec& order, std::size_t m, std::size_t u) {
    TruncatedPath p;
    p.steps.resize(m);
    for (std::size_t l = m; l-- > 0;) {
        EdgeRef e = order_at(order, {l + 1, u}).at_position(0, vertical_count(spec, l, u));
        p.steps[l] = e.diagonal() ? Step{true, 1} : Step{false, e.copy};
        if (e.diagonal()) ++u;
    }
    p.start = u;
    return p;
}

SuccessorResult successor(const DiagramSpec& spec, const OrderSpec& order, const TruncatedPath& path) {
    std::size_t v = path.start;
    for (std::size_t m = 0; m < path.steps.size(); ++m) {
        std::size_t range = path.steps[m].diagonal ? v - 1 : v;
        std::size_t a = vertical_count(spec, m, range);
        VertexOrder om = order_at(order, {m + 1, range});
        std::size_t pos = om.position(edge_ref(path.steps[m]), a);
        if (pos < a) {
            EdgeRef g = om.at_position(pos + 1, a);
            std::size_t src = g.diagonal() ? range + 1 : range;
            TruncatedPath out = minimal_path(spec, order, m, src);
            out.steps.reserve(path.steps.size());
            out.steps.push_back(g.diagonal() ? Step{true, 1} : Step{false, g.copy});
            out.steps.insert(out.steps.end(), path.steps.begin() + static_cast<std::ptrdiff_t>(m + 1),
                             path.steps.end());
            return out;
        }
        v = range;
    }
    return AllMaximalPrefix{};
}

namespace {

bool in_cylinder(const TruncatedPath& p, const ExplicitPath& c) {
    if (c.edges.size() > p.steps.size() || p.start != c.start) return false;
    std::size_t v = p.start;
    for (std::size_t n = 0; n < c.edges.size(); ++n) {
        const auto& s = p.steps[n];
        std::size_t r = s.diagonal ? v - 1 : v;
        const auto& e = c.edges[n];
        if (e.source != v || e.range != r || e.copy != (s.diagonal ? 1 : s.copy)) return false;
        v = r;
    }
    return true;
}

}  // namespace

OrbitReport orbit_frequencies(const DiagramSpec& spec, const OrderSpec& order, const TruncatedPath& start,
                              std::uint64_t steps, const std::vector<CylinderSpec>& cylinders,
                              std::size_t trace_rows) {
    validate_path(spec, start);
    const std::size_t L = start.steps.size();
    OrbitReport rep;
    rep.requested = steps;
    for (const auto& c : cylinders) {
        EndVertex ev = resolve_cylinder(spec, c);
        if (ev.length > L) throw WindowError("cylinder longer than the orbit paths");
        FrequencyRow row{c, 0, 1, 0};
        if (std::holds_alternative<EndVertex>(c)) {
            Truncation w = spec.window();
            w.max_vertex = std::max(w.max_vertex, ev.index + ev.length + 1);
            BigInt h = heights(spec, ev.length, w).at(ev.index);
            if (!h.fits_ulong_p()) throw WindowError("tower height too large");
            row.multiplicity = h.get_ui();
        }
        rep.rows.push_back(std::move(row));
    }
    TruncatedPath x = start;
    for (std::uint64_t t = 0; t < steps; ++t) {
        for (auto& row : rep.rows) {
            bool hit = std::visit(
                [&](const auto& c) {
                    using C = std::decay_t<decltype(c)>;
                    if constexpr (std::is_same_v<C, ExplicitPath>)
                        return in_cylinder(x, c);
                    else
                        return x.vertex(c.length) == c.index;
                },
                row.cylinder);
            if (hit) ++row.visits;
        }
        if (t < trace_rows) {
            std::vector<std::size_t> tr{static_cast<std::size_t>(t)};
            for (std::size_t n = 1; n <= L; ++n) tr.push_back(x.vertex(n));
            rep.trace.push_back(std::move(tr));
        }
        ++rep.visited;
        if (t + 1 == steps) break;
        auto next = successor(spec, order, x);
        if (std::holds_alternative<AllMaximalPrefix>(next)) {
            rep.stopped_at_maximal = true;
            break;
        }
        x = std::get<TruncatedPath>(std::move(next));
    }
    for (auto& row : rep.rows)
        row.empirical = steps == 0 ? 0.0
                                   : static_cast<double>(row.visits) /
                                         (static_cast<double>(steps) * static_cast<double>(row.multiplicity));
    return rep;
}

}  // namespace bratteli::vershik
