#include "bratteli/serialization.hpp"

#include "bratteli/error.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <type_traits>

namespace bratteli::io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::vector<std::vector<BigInt>> parse_rows(const json& j) {
    if (!j.is_array()) throw ConfigError("expected a 2-D array");
    std::vector<std::vector<BigInt>> out;
    for (const auto& r : j) {
        if (!r.is_array()) throw ConfigError("expected a 2-D array");
        std::vector<BigInt> row;
        for (const auto& v : r) row.push_back(parse_bigint_json(v));
        out.push_back(std::move(row));
    }
    return out;
}

json rows_json(const std::vector<std::vector<BigInt>>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        json row = json::array();
        for (const auto& v : r) row.push_back(bigint_json(v));
        out.push_back(std::move(row));
    }
    return out;
}

json order_entry(const VertexId& v, const vershik::VertexOrder& o) {
    json e{{"level", v.level}, {"index", v.index}};
    if (o.explicit_permutation())
        e["permutation"] = *o.explicit_permutation();
    else
        e["tag"] = vershik::to_string(o.tag());
    return e;
}

std::map<VertexId, vershik::VertexOrder> parse_order_entries(const json& j) {
    std::map<VertexId, vershik::VertexOrder> out;
    if (!j.is_array()) throw ConfigError("order entries must be an array");
    for (const auto& e : j) {
        VertexId v{field(e, "level").get<std::size_t>(), field(e, "index").get<std::size_t>()};
        if (e.contains("permutation"))
            out.emplace(v, vershik::VertexOrder::permutation(e.at("permutation").get<std::vector<std::size_t>>()));
        else
            out.emplace(v, vershik::VertexOrder::canonical(vershik::parse_tag(field(e, "tag").get<std::string>())));
    }
    return out;
}

json tags_json(const vershik::TagRule& t) {
    json tags = json::object();
    for (const auto& [i, tag] : t.table) tags[std::to_string(i)] = vershik::to_string(tag);
    tags["default"] = vershik::to_string(t.fallback);
    return tags;
}

vershik::TagRule parse_tags(const json& j) {
    vershik::TagRule rule;
    if (j.contains("tags")) {
        const auto& tags = j.at("tags");
        if (!tags.is_object()) throw ConfigError("'tags' must be an object");
        for (const auto& [key, val] : tags.items()) {
            auto tag = vershik::parse_tag(val.get<std::string>());
            if (key == "default") {
                rule.fallback = tag;
                continue;
            }
            std::size_t i = 0;
            try {
                i = std::stoul(key);
            } catch (const std::exception&) {
                throw ConfigError("tag key must be a vertex index or 'default': " + key);
            }
            if (i < 1) throw ConfigError("tag vertex index must be >= 1");
            rule.table[i] = tag;
        }
    }
    if (j.contains("pattern"))
        for (const auto& t : j.at("pattern")) rule.pattern.push_back(vershik::parse_tag(t.get<std::string>()));
    return rule;
}

}  // namespace

json bigint_json(const BigInt& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

BigInt parse_bigint_json(const json& j) {
    if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
    if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<unsigned long long>()));
    if (j.is_string()) return parse_bigint(j.get<std::string>());
    throw ConfigError("expected an integer, got " + j.dump());
}

json rational_json(const Rational& q) {
    return {{"exact", to_fraction_string(q)}, {"decimal", to_decimal_string(q, 12)}};
}

Rational parse_rational_json(const json& j) {
    if (j.is_object()) return parse_rational(field(j, "exact").get<std::string>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(parse_bigint_json(j));
    throw ConfigError("expected a rational, got " + j.dump());
}

json sequence_json(const Sequence& s) {
    switch (s.kind()) {
        case Sequence::Kind::Constant: return {{"kind", "constant"}, {"value", bigint_json(s.start())}};
        case Sequence::Kind::Arithmetic:
            return {{"kind", "arithmetic"}, {"start", bigint_json(s.start())}, {"step", bigint_json(s.step())}};
        case Sequence::Kind::Geometric:
            return {{"kind", "geometric"}, {"start", bigint_json(s.start())}, {"ratio", bigint_json(s.ratio())}};
        case Sequence::Kind::Power:
            return {{"kind", "power"},
                    {"start", bigint_json(s.start())},
                    {"step", bigint_json(s.step())},
                    {"exponent", s.exponent()}};
        case Sequence::Kind::Table: {
            json vals = json::array();
            for (const auto& v : s.values()) vals.push_back(bigint_json(v));
            json j{{"kind", "table"}, {"values", vals}};
            if (s.tail()) j["tail"] = sequence_json(*s.tail());
            return j;
        }
    }
    throw std::logic_error("unhandled sequence kind");
}

// Objects as emitted by sequence_json, or the "kind:args" shorthand.
Sequence parse_sequence_json(const json& j) {
    if (j.is_string()) return parse_sequence_shorthand(j.get<std::string>());
    if (!j.is_object()) throw ConfigError("expected a sequence object or shorthand, got " + j.dump());
    std::string kind = field(j, "kind").get<std::string>();
    auto big = [&](const char* key) { return parse_bigint_json(field(j, key)); };
    if (kind == "constant") return Sequence::constant(big("value"));
    if (kind == "arithmetic") return Sequence::arithmetic(big("start"), big("step"));
    if (kind == "geometric") return Sequence::geometric(big("start"), big("ratio"));
    if (kind == "power") return Sequence::power(big("start"), big("step"), field(j, "exponent").get<unsigned>());
    if (kind == "table") {
        std::vector<BigInt> vals;
        for (const auto& v : j.value("values", json::array())) vals.push_back(parse_bigint_json(v));
        std::optional<Sequence> tail;
        if (j.contains("tail")) tail = parse_sequence_json(j.at("tail"));
        return Sequence::table(std::move(vals), std::move(tail));
    }
    throw ConfigError("unknown sequence kind: " + kind);
}

json truncation_json(const Truncation& t) { return {{"maxLevel", t.max_level}, {"maxVertex", t.max_vertex}}; }

Truncation parse_truncation(const json& j) {
    Truncation t;
    if (j.contains("maxLevel")) t.max_level = j.at("maxLevel").get<std::size_t>();
    if (j.contains("maxVertex")) t.max_vertex = j.at("maxVertex").get<std::size_t>();
    t.validate();
    return t;
}

json level_matrix_json(const LevelMatrix& f) {
    json entries = json::array();
    for (const auto& e : f.entries()) entries.push_back({e.row, e.col, bigint_json(e.mult)});
    return {{"level", f.level()},           {"rows", f.rows()},
            {"cols", f.cols()},             {"completeRows", f.complete_rows()},
            {"completeCols", f.complete_cols()}, {"entries", entries}};
}

LevelMatrix parse_level_matrix(const json& j) {
    std::vector<MatrixEntry> entries;
    for (const auto& e : field(j, "entries")) {
        if (!e.is_array() || e.size() != 3) throw ConfigError("matrix entries are [row, col, multiplicity]");
        entries.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(), parse_bigint_json(e[2])});
    }
    std::size_t rows = field(j, "rows").get<std::size_t>(), cols = field(j, "cols").get<std::size_t>();
    return LevelMatrix(j.value("level", std::size_t{0}), rows, cols, std::move(entries),
                       j.value("completeRows", rows), j.value("completeCols", cols));
}

json diagram_json(const DiagramSpec& spec) {
    json params = std::visit(
        [](const auto& p) -> json {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, family::StationaryAK>)
                return {{"a", bigint_json(p.a)}, {"k", bigint_json(p.k)}};
            else if constexpr (std::is_same_v<P, family::StationaryDecreasing>)
                return {{"a", sequence_json(p.a)}};
            else if constexpr (std::is_same_v<P, family::StationaryIncreasing>)
                return json::object();
            else if constexpr (std::is_same_v<P, family::NonStationaryUniform>)
                return {{"an", sequence_json(p.a)}};
            else if constexpr (std::is_same_v<P, family::GeneralDIO>) {
                json g{{"rows", rows_json(p.rows)}};
                if (p.fallback) g["fallback"] = sequence_json(*p.fallback);
                return g;
            } else if constexpr (std::is_same_v<P, family::ExplicitFinite>)
                return {{"matrix", rows_json(p.A)}};
            else {
                json lv = json::array();
                for (const auto& f : p.levels) lv.push_back(level_matrix_json(f));
                return {{"levels", lv}};
            }
        },
        spec.params());
    return {{"family", spec.family_name()}, {"params", params}, {"truncation", truncation_json(spec.window())}};
}

DiagramSpec parse_diagram(const json& j) {
    std::string fam = field(j, "family").get<std::string>();
    json p = j.value("params", json::object());
    Truncation w = j.contains("truncation") ? parse_truncation(j.at("truncation")) : Truncation{};
    if (fam == "ak") {
        BigInt a = parse_bigint_json(field(p, "a")), k = parse_bigint_json(field(p, "k"));
        return DiagramSpec(family::StationaryAK{a, k}, w);
    }
    if (fam == "decreasing") return DiagramSpec::stationary_decreasing(parse_sequence_json(field(p, "a")), w);
    if (fam == "increasing") return DiagramSpec::stationary_increasing(w);
    if (fam == "nonstat-uniform") return DiagramSpec::non_stationary_uniform(parse_sequence_json(field(p, "an")), w);
    if (fam == "general-dio") {
        std::optional<Sequence> fb;
        if (p.contains("fallback")) fb = parse_sequence_json(p.at("fallback"));
        return DiagramSpec::general_dio(parse_rows(field(p, "rows")), fb, w);
    }
    if (fam == "explicit-finite") return DiagramSpec::explicit_finite(parse_rows(field(p, "matrix")), w);
    if (fam == "explicit-levels") {
        std::vector<LevelMatrix> lv;
        std::size_t n = 0;
        for (const auto& f : field(p, "levels")) lv.push_back(parse_level_matrix(f).with_level(n++));
        return DiagramSpec::explicit_levels(std::move(lv), w);
    }
    throw ConfigError("unknown diagram family: " + fam);
}

json convergence_json(const ConvergenceResult& r, bool with_trace) {
    json j{{"status", to_string(r.status)},
           {"partialSum", rational_json(r.partial_sum)},
           {"termsUsed", r.terms_used},
           {"certificate", to_string(r.certificate)},
           {"witness", r.witness}};
    switch (r.status) {
        case SeriesStatus::Finite:
            j["tailBound"] = rational_json(r.tail_bound);
            j["upper"] = rational_json(r.upper());
            if (r.exact_value) j["exactValue"] = rational_json(*r.exact_value);
            j["value"] = r.exact_value ? to_fraction_string(*r.exact_value)
                                       : "[" + to_fraction_string(r.partial_sum) + ", " +
                                             to_fraction_string(r.upper()) + "]";
            break;
        case SeriesStatus::Infinite: j["value"] = "inf"; break;
        case SeriesStatus::Undetermined: j["value"] = nullptr; break;
    }
    if (with_trace) {
        json t = json::array();
        for (const auto& p : r.trace)
            t.push_back({{"n", p.n}, {"term", to_fraction_string(p.term)}, {"partial", to_fraction_string(p.partial)}});
        j["trace"] = t;
    }
    return j;
}

ConvergenceResult parse_convergence(const json& j) {
    ConvergenceResult r;
    r.status = parse_series_status(field(j, "status").get<std::string>());
    r.partial_sum = parse_rational_json(field(j, "partialSum"));
    r.terms_used = field(j, "termsUsed").get<std::size_t>();
    r.certificate = parse_certificate(j.value("certificate", std::string("none")));
    r.witness = j.value("witness", std::string());
    if (j.contains("tailBound")) r.tail_bound = parse_rational_json(j.at("tailBound"));
    if (j.contains("exactValue")) r.exact_value = parse_rational_json(j.at("exactValue"));
    if (j.contains("trace"))
        for (const auto& p : j.at("trace"))
            r.trace.push_back({p.at("n").get<std::size_t>(), parse_rational_json(p.at("term")),
                               parse_rational_json(p.at("partial"))});
    return r;
}

json classification_json(const ClassificationReport& rep) {
    json entries = json::array();
    for (const auto& e : rep.entries) {
        json item{{"index", e.index}, {"mass", convergence_json(e.mass)}};
        item["normalizingMass"] = e.normalizing_mass ? rational_json(*e.normalizing_mass) : json(nullptr);
        entries.push_back(std::move(item));
    }
    return {{"entries", entries}, {"finiteCount", rep.finite_count()}, {"partial", rep.partial}, {"notes", rep.notes}};
}

ClassificationReport parse_classification(const json& j) {
    ClassificationReport rep;
    for (const auto& e : field(j, "entries")) {
        ClassificationEntry entry{e.at("index").get<std::size_t>(), parse_convergence(e.at("mass")), std::nullopt};
        if (e.contains("normalizingMass") && !e.at("normalizingMass").is_null())
            entry.normalizing_mass = parse_rational_json(e.at("normalizingMass"));
        rep.entries.push_back(std::move(entry));
    }
    rep.partial = j.value("partial", false);
    rep.notes = j.value("notes", std::vector<std::string>{});
    return rep;
}

json order_json(const vershik::OrderSpec& o) {
    using namespace vershik;
    if (auto* e = std::get_if<ExplicitOrder>(&o)) {
        json orders = json::array();
        for (const auto& [v, ord] : e->orders) orders.push_back(order_entry(v, ord));
        return {{"kind", "explicit"}, {"orders", orders}};
    }
    const TagRule* rule = nullptr;
    json j;
    if (auto* q = std::get_if<QuasiStationary>(&o)) {
        j["kind"] = "quasiStationary";
        rule = &q->tags;
    } else {
        const auto& eq = std::get<EventuallyQuasiStationary>(o);
        j["kind"] = "eventuallyQuasiStationary";
        json ex = json::array();
        for (const auto& [v, ord] : eq.exceptions) ex.push_back(order_entry(v, ord));
        j["exceptions"] = ex;
        rule = &eq.tags;
    }
    j["tags"] = tags_json(*rule);
    if (!rule->pattern.empty()) {
        json p = json::array();
        for (auto t : rule->pattern) p.push_back(to_string(t));
        j["pattern"] = p;
    }
    return j;
}

vershik::OrderSpec parse_order(const json& j) {
    using namespace vershik;
    std::string kind = field(j, "kind").get<std::string>();
    if (kind == "explicit") return ExplicitOrder{parse_order_entries(field(j, "orders"))};
    if (kind == "quasiStationary") return QuasiStationary{parse_tags(j)};
    if (kind == "eventuallyQuasiStationary")
        return EventuallyQuasiStationary{parse_order_entries(j.value("exceptions", json::array())), parse_tags(j)};
    throw ConfigError("unknown order kind: " + kind);
}

json verdict_json(const vershik::ExtensionVerdict& v) {
    return {{"iFr", v.fr.str()},
            {"iFl", v.fl.str()},
            {"frWitness", v.fr_witness},
            {"flWitness", v.fl_witness},
            {"borelExtension", v.borel},
            {"homeomorphism", vershik::to_string(v.homeomorphism)}};
}

json finite_report_json(const finite::FiniteStationaryReport& rep) {
    const auto& dec = rep.decomposition;
    json classes = json::array();
    for (std::size_t c = 0; c < dec.classes.size(); ++c) {
        const auto& r = rep.radii[c];
        classes.push_back({{"id", c},
                           {"vertices", dec.classes[c]},
                           {"radius", r.value()},
                           {"radiusBounds", {r.lo, r.hi}},
                           {"exactRadius", r.exact},
                           {"distinguished", static_cast<bool>(rep.distinguished[c])}});
    }
    json edges = json::array();
    for (auto [b, a] : dec.reduced_edges) edges.push_back({b, a});
    json measures = json::array();
    for (const auto& m : rep.measures) {
        json table = json::array();
        for (std::size_t n = 1; n <= 3; ++n) {
            std::vector<double> row;
            for (std::size_t w = 1; w <= dec.size; ++w) row.push_back(m.cylinder(n, w));
            table.push_back(row);
        }
        measures.push_back({{"class", m.data.alpha},
                            {"lambda", m.data.rho.value()},
                            {"xi", m.data.xi},
                            {"support", m.data.support},
                            {"residual", m.data.residual},
                            {"cylinderTable", table}});
    }
    return {{"classes", classes}, {"reducedEdges", edges}, {"measures", measures},
            {"tolerance", rep.tol},  {"notes", rep.notes}};
}

finite::IntMatrix parse_int_matrix(const json& j) { return parse_rows(j); }

json residual_json(const ResidualReport& rep) {
    json nz = json::array();
    for (std::size_t i : rep.nonzero_rows) nz.push_back({{"row", i}, {"residual", to_fraction_string(rep.residuals[i - 1])}});
    return {{"rowsChecked", rep.rows_checked}, {"verified", rep.verified()}, {"nonzeroRows", nz}};
}

json end_vertex_json(const EndVertex& e) { return {{"m", e.length}, {"i", e.index}}; }

EndVertex parse_end_vertex_json(const json& j) {
    if (j.is_array() && j.size() == 2) return {j[0].get<std::size_t>(), j[1].get<std::size_t>()};
    if (j.is_object()) return {field(j, "m").get<std::size_t>(), field(j, "i").get<std::size_t>()};
    if (j.is_string()) return parse_end_vertex(j.get<std::string>());
    throw ConfigError("cylinder must be [m, i], {\"m\":..,\"i\":..} or \"(m, i)\"");
}

json comparison_json(const ComparisonReport& rep) {
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"cylinder", end_vertex_json(r.cylinder)},
                        {"eigenValue", rational_json(r.eigen_value)},
                        {"extension", convergence_json(r.extension)},
                        {"verdict", to_string(r.verdict)}});
    return {{"rows", rows},
            {"equal", rep.count(Agreement::Equal)},
            {"notEqual", rep.count(Agreement::NotEqual)},
            {"skipped", rep.count(Agreement::Skipped)},
            {"allEqual", rep.all_equal()}};
}

json tail_report_json(const TailInvarianceReport& rep) {
    json fails = json::array();
    for (const auto& f : rep.failures)
        fails.push_back({{"level", f.level},
                         {"vertex", f.vertex},
                         {"lhs", to_fraction_string(f.lhs)},
                         {"rhs", to_fraction_string(f.rhs)}});
    json levels = json::array();
    for (std::size_t n = 0; n < rep.level_pass.size(); ++n)
        levels.push_back({{"level", n}, {"pass", static_cast<bool>(rep.level_pass[n])}, {"rowsChecked", rep.rows_checked[n]}});
    json j{{"passed", rep.passed()}, {"levels", levels}, {"failures", fails}};
    if (auto v = rep.first_violation()) j["firstViolation"] = {{"level", v->level}, {"vertex", v->vertex}};
    return j;
}

EndVertex parse_end_vertex(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') t += c;
    auto comma = t.find(',');
    if (comma == std::string::npos) throw ConfigError("cylinder must look like (m, i): " + text);
    try {
        std::size_t used1 = 0, used2 = 0;
        std::string a = t.substr(0, comma), b = t.substr(comma + 1);
        unsigned long m = std::stoul(a, &used1), i = std::stoul(b, &used2);
        if (used1 != a.size() || used2 != b.size()) throw std::invalid_argument("trailing");
        return {m, i};
    } catch (const std::exception&) {
        throw ConfigError("cylinder must look like (m, i): " + text);
    }
}

json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
}

json load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

}  // namespace bratteli::io
