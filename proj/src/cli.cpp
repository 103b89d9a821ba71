#include "bratteli/cli.hpp"

#include "bratteli/error.hpp"
#include "bratteli/serialization.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

namespace bratteli::cli {

namespace {

using io::json;

struct Options {
    std::string config, format = "human";
    // diagram
    std::string family, diagram_file, seq, an, matrix, rows, fallback;
    long a = 0, k = 0;
    std::size_t max_level = 16, max_vertex = 16;
    // commands
    std::size_t level = 0, imax = 5, index = 1, max_terms = 2000, levels = 6, width = 6;
    std::size_t eigen_rows = 100, shift = 1, orbit_levels = 12, start = 1, trace_rows = 0, mmax = 5, jmax = 5;
    std::uint64_t steps = 100000;
    std::vector<std::string> cylinders;
    std::string measure = "extension", tags, order_file, lambda, xi, xi_ratio, breaks, request, vectors;
    bool normalize = false, trace = false, parallel = false;
    double tol = 1e-12;
    std::string threshold = "1/1000000000";
};

struct Out {
    json j;
    std::string human;
    std::string csv;
    int code = Ok;
};

std::string csv_value(const ConvergenceResult& r, const Rational& v) {
    return r.infinite() ? "inf" : to_fraction_string(v);
}

std::string describe(const ConvergenceResult& r) {
    std::ostringstream os;
    switch (r.status) {
        case SeriesStatus::Finite:
            if (r.exact_value)
                os << to_fraction_string(*r.exact_value) << " (" << to_decimal_string(*r.exact_value) << ")";
            else
                os << "in [" << to_decimal_string(r.partial_sum) << ", " << to_decimal_string(r.upper()) << "]";
            break;
        case SeriesStatus::Infinite: os << "inf"; break;
        case SeriesStatus::Undetermined:
            os << "undetermined (partial sum " << to_decimal_string(r.partial_sum) << ")";
            break;
    }
    os << "  [" << to_string(r.certificate) << ", " << r.terms_used << " terms] " << r.witness;
    return os.str();
}

// -------------------------------------------------------------------------
// Inputs

DiagramSpec build_diagram(const Options& o, const json& config) {
    Truncation w{o.max_level, o.max_vertex};
    if (o.family.empty()) {
        json doc;
        if (!o.diagram_file.empty())
            doc = io::load_document(o.diagram_file);
        else if (config.contains("diagram"))
            doc = config.at("diagram");
        else
            throw ConfigError("no diagram given: use --family or --diagram");
        DiagramSpec spec = io::parse_diagram(doc);
        // explicit window flags override the document
        return doc.contains("truncation") ? spec : spec.with_window(w);
    }
    const std::string& f = o.family;
    if (f == "ak") return DiagramSpec::stationary_ak(o.a, o.k, w);
    if (f == "decreasing") {
        if (o.seq.empty()) throw ConfigError("--seq required for the decreasing family");
        return DiagramSpec::stationary_decreasing(parse_sequence_shorthand(o.seq), w);
    }
    if (f == "increasing") return DiagramSpec::stationary_increasing(w);
    if (f == "nonstat-uniform") {
        if (o.an.empty()) throw ConfigError("--an required for the nonstat-uniform family");
        return DiagramSpec::non_stationary_uniform(parse_sequence_shorthand(o.an), w);
    }
    if (f == "general-dio") {
        std::optional<Sequence> fb;
        if (!o.fallback.empty()) fb = parse_sequence_shorthand(o.fallback);
        return DiagramSpec::general_dio(io::parse_int_matrix(io::parse_document(o.rows)), fb, w);
    }
    if (f == "explicit-finite") return DiagramSpec::explicit_finite(io::parse_int_matrix(io::parse_document(o.matrix)), w);
    throw ConfigError("unknown family: " + f);
}

std::vector<EndVertex> cylinder_list(const Options& o) {
    std::vector<EndVertex> out;
    for (const auto& c : o.cylinders) out.push_back(io::parse_end_vertex(c));
    if (!o.request.empty()) {
        json req = io::load_document(o.request);
        for (const auto& c : req.value("cylinders", json::array())) out.push_back(io::parse_end_vertex_json(c));
    }
    return out;
}

std::vector<EndVertex> grid(std::size_t mmax, std::size_t jmax) {
    std::vector<EndVertex> out;
    for (std::size_t m = 0; m <= mmax; ++m)
        for (std::size_t j = 1; j <= jmax; ++j) out.push_back({m, j});
    return out;
}

EigenPair eigenpair_for(const DiagramSpec& spec, const Options& o) {
    if (!o.lambda.empty()) {
        Rational lambda = parse_rational(o.lambda);
        if (!o.xi.empty()) {
            TableXi t;
            std::stringstream ss(o.xi);
            std::string item;
            while (std::getline(ss, item, ',')) t.values.push_back(parse_rational(item));
            return EigenPair{lambda, t, 1};
        }
        return EigenPair{lambda, GeometricXi{o.xi_ratio.empty() ? Rational(1) : parse_rational(o.xi_ratio)}, 1};
    }
    if (auto* ak = std::get_if<family::StationaryAK>(&spec.params())) return eigenvector_ak(ak->a.get_si(), ak->k.get_si());
    if (auto* d = std::get_if<family::StationaryDecreasing>(&spec.params()))
        return eigenvector_decreasing(d->a, o.shift, spec.window());
    throw ConfigError("no built-in eigenpair for family " + spec.family_name() + "; pass --lambda with --xi or --xi-ratio");
}

vershik::OrderSpec order_for(const Options& o, const json& config) {
    using namespace vershik;
    if (!o.order_file.empty()) return io::parse_order(io::load_document(o.order_file));
    if (o.tags.empty()) {
        if (config.contains("order")) return io::parse_order(config.at("order"));
        throw ConfigError("no order given: use --tags or --order");
    }
    TagRule r;
    if (o.tags == "all-left")
        r.fallback = OrderTag::Left;
    else if (o.tags == "all-right")
        r.fallback = OrderTag::Right;
    else if (o.tags == "all-middle")
        r.fallback = OrderTag::Middle;
    else if (o.tags == "alternating")
        r.pattern = {OrderTag::Left, OrderTag::Right};
    else
        return io::parse_order(io::parse_document(o.tags));
    return QuasiStationary{r};
}

SeriesOptions series(const Options& o) { return SeriesOptions{o.max_terms, o.trace}; }

// -------------------------------------------------------------------------
// Commands

Out diagram_show(const DiagramSpec& spec, const Options& o) {
    Out out;
    LevelMatrix f = incidence(spec, o.level, spec.window());
    out.j = io::diagram_json(spec);
    out.j["incidence"] = io::level_matrix_json(f);
    std::ostringstream h;
    h << "family " << spec.family_name() << ", window " << spec.window().max_level << " levels x "
      << spec.window().max_vertex << " vertices\n";
    h << "F_" << o.level << " (complete rows " << f.complete_rows() << ", columns " << f.complete_cols() << "):\n";
    for (const auto& e : f.entries()) h << "  f(" << e.row << "," << e.col << ") = " << e.mult << "\n";
    out.human = h.str();
    std::ostringstream c;
    c << "row,col,multiplicity\n";
    for (const auto& e : f.entries()) c << e.row << "," << e.col << "," << e.mult << "\n";
    out.csv = c.str();
    return out;
}

Out diagram_heights(const DiagramSpec& spec, const Options& o) {
    Out out;
    HeightsVector h = heights(spec, o.level, spec.window(), o.parallel ? kernels::Exec::Parallel : kernels::Exec::Serial);
    json vals = json::array();
    std::ostringstream hu, c;
    c << "vertex,height\n";
    for (std::size_t i = 1; i <= h.exact_width(); ++i) {
        vals.push_back(h.at(i).get_str());
        hu << "H^(" << o.level << ")_" << i << " = " << h.at(i) << "\n";
        c << i << "," << h.at(i) << "\n";
    }
    out.j = {{"level", o.level}, {"exactWidth", h.exact_width()}, {"heights", vals}};
    out.human = hu.str();
    out.csv = c.str();
    return out;
}

Out measure_classify(const DiagramSpec& spec, const Options& o) {
    Out out;
    auto rep = classify_ergodic_measures(spec, o.imax, series(o),
                                         o.parallel ? kernels::Exec::Parallel : kernels::Exec::Serial);
    out.j = io::classification_json(rep);
    std::ostringstream h, c;
    h << rep.finite_count() << " finite extension(s) among i = 1.." << o.imax << "\n";
    c << "i,status,partial_sum,tail_bound,terms_used,normalized_mass\n";
    for (const auto& e : rep.entries) {
        h << "  i = " << e.index << ": " << describe(e.mass) << "\n";
        c << e.index << "," << to_string(e.mass.status) << "," << to_fraction_string(e.mass.partial_sum) << ","
          << (e.mass.finite() ? to_fraction_string(e.mass.tail_bound) : e.mass.infinite() ? "inf" : "") << ","
          << e.mass.terms_used << "," << (e.normalizing_mass ? to_fraction_string(*e.normalizing_mass) : "") << "\n";
    }
    for (const auto& n : rep.notes) h << "note: " << n << "\n";
    out.human = h.str();
    out.csv = c.str();
    if (rep.partial) out.code = Undetermined;
    return out;
}

Out measure_extend(const DiagramSpec& spec, Options o) {
    Out out;
    if (o.format == "csv") o.trace = true;
    auto r = dio_extension_mass(spec, o.index, series(o));
    out.j = {{"index", o.index}, {"mass", io::convergence_json(r, o.trace)}};
    std::ostringstream h, c;
    h << "extension of odometer " << o.index << ": " << describe(r) << "\n";
    if (auto cf = closed_form_oracles(spec, o.index)) {
        json oj{{"verdict", cf->verdict == Criterion::Convergent ? "convergent" : "divergent"}, {"rule", cf->rule}};
        if (cf->mass) oj["mass"] = io::rational_json(*cf->mass);
        out.j["closedForm"] = oj;
        h << "closed form: " << oj["verdict"].get<std::string>() << " (" << cf->rule << ")";
        if (cf->mass) h << " = " << to_fraction_string(*cf->mass);
        h << "\n";
    }
    c << "n,term,partial_sum\n";
    for (const auto& p : r.trace) c << p.n << "," << to_fraction_string(p.term) << "," << to_fraction_string(p.partial) << "\n";
    out.human = h.str();
    out.csv = c.str();
    if (r.status == SeriesStatus::Undetermined) out.code = Undetermined;
    return out;
}

Out measure_cylinder(const DiagramSpec& spec, const Options& o) {
    Out out;
    auto cyls = cylinder_list(o);
    if (cyls.empty()) throw ConfigError("no cylinders given: use --cyl \"(m, i)\"");
    std::function<ConvergenceResult(const EndVertex&)> eval;
    std::optional<ExtendedMeasure> ext;
    std::optional<EigenMeasure> eig;
    std::optional<OdometerMeasure> odo;
    if (o.measure == "extension") {
        ext = extend_measure(spec, o.index, series(o), o.normalize);
        eval = [&](const EndVertex& c) { return cylinder_measure(*ext, c); };
    } else if (o.measure == "eigen") {
        eig = eigen_measure(spec, eigenpair_for(spec, o));
        eval = [&](const EndVertex& c) { return cylinder_measure(*eig, c); };
    } else if (o.measure == "odometer") {
        odo = odometer_measure(spec, o.index);
        eval = [&](const EndVertex& c) { return cylinder_measure(*odo, c); };
    } else {
        throw ConfigError("--measure must be extension, eigen or odometer");
    }
    json rows = json::array();
    std::ostringstream h, c;
    c << "m,i,status,value,tail_bound\n";
    for (const auto& cyl : cyls) {
        auto r = eval(cyl);
        rows.push_back({{"cylinder", io::end_vertex_json(cyl)}, {"result", io::convergence_json(r)}});
        h << "(" << cyl.length << ", " << cyl.index << "): " << describe(r) << "\n";
        c << cyl.length << "," << cyl.index << "," << to_string(r.status) << ","
          << csv_value(r, r.exact_value ? *r.exact_value : r.partial_sum) << ","
          << (r.finite() ? to_fraction_string(r.tail_bound) : "") << "\n";
        if (r.status == SeriesStatus::Undetermined) out.code = Undetermined;
    }
    out.j = {{"measure", o.measure}, {"index", o.index}, {"normalized", ext ? ext->normalized : false}, {"cylinders", rows}};
    out.human = h.str();
    out.csv = c.str();
    return out;
}

Out measure_check(const DiagramSpec& spec, const Options& o) {
    Out out;
    TailInvarianceReport rep;
    if (o.measure == "odometer") {
        OdometerMeasure om(spec, o.index);
        rep = check_subdiagram_invariance(spec, SubdiagramSpec::odometer(o.index), om.subdiagram_vectors(o.levels));
    } else {
        MeasureVectors mv;
        if (!o.vectors.empty())
            mv = [&] {
                std::vector<std::vector<Rational>> lv;
                for (const auto& row : io::load_document(o.vectors)) {
                    std::vector<Rational> r;
                    for (const auto& v : row) r.push_back(io::parse_rational_json(v));
                    lv.push_back(std::move(r));
                }
                return MeasureVectors(std::move(lv));
            }();
        else if (o.measure == "eigen")
            mv = eigen_vectors(eigen_measure(spec, eigenpair_for(spec, o)), o.levels, o.width);
        else if (o.measure == "extension")
            mv = exact_vectors(extend_measure(spec, o.index, series(o), o.normalize), o.levels, o.width);
        else
            throw ConfigError("--measure must be extension, eigen or odometer");
        rep = check_tail_invariance(spec, mv, spec.window());
    }
    out.j = io::tail_report_json(rep);
    std::ostringstream h;
    h << (rep.passed() ? "tail invariance holds" : "tail invariance FAILS") << " on " << rep.level_pass.size()
      << " level pair(s)\n";
    for (const auto& f : rep.failures)
        h << "  level " << f.level << ", vertex " << f.vertex << ": " << to_fraction_string(f.lhs)
          << " != " << to_fraction_string(f.rhs) << "\n";
    out.human = h.str();
    return out;
}

Out eigen_verify(const DiagramSpec& spec, const Options& o) {
    Out out;
    auto pair = eigenpair_for(spec, o);
    Truncation w{std::max<std::size_t>(spec.window().max_level, 1), std::max<std::size_t>(o.eigen_rows, 2)};
    auto rep = verify_eigenpair(spec, pair, w, o.parallel ? kernels::Exec::Parallel : kernels::Exec::Serial);
    out.j = io::residual_json(rep);
    out.j["eigenpair"] = pair.describe();
    std::ostringstream h, c;
    h << pair.describe() << "\n"
      << (rep.verified() ? "verified" : "NOT verified") << " on rows 1.." << rep.rows_checked << "\n";
    c << "row,residual\n";
    for (std::size_t i : rep.nonzero_rows) {
        h << "  row " << i << ": residual " << to_fraction_string(rep.residuals[i - 1]) << "\n";
        c << i << "," << to_fraction_string(rep.residuals[i - 1]) << "\n";
    }
    out.human = h.str();
    out.csv = c.str();
    if (!rep.verified()) out.code = Undetermined;
    return out;
}

Out eigen_measure_cmd(const DiagramSpec& spec, Options o) {
    o.measure = "eigen";
    return measure_cylinder(spec, o);
}

Out eigen_compare(const DiagramSpec& spec, const Options& o) {
    Out out;
    auto cyls = cylinder_list(o);
    if (cyls.empty()) cyls = grid(o.mmax, o.jmax);
    auto rep = compare_eigen_vs_extension(spec, o.index, eigenpair_for(spec, o), cyls, series(o),
                                          parse_rational(o.threshold));
    out.j = io::comparison_json(rep);
    std::ostringstream h, c;
    h << rep.count(Agreement::Equal) << " equal, " << rep.count(Agreement::NotEqual) << " not equal, "
      << rep.count(Agreement::Skipped) << " skipped\n";
    c << "m,j,eigen_value,extension_status,extension_value,verdict\n";
    for (const auto& r : rep.rows) {
        h << "  (" << r.cylinder.length << ", " << r.cylinder.index << "): eigen " << to_fraction_string(r.eigen_value)
          << ", extension " << describe(r.extension) << " -> " << to_string(r.verdict) << "\n";
        c << r.cylinder.length << "," << r.cylinder.index << "," << to_fraction_string(r.eigen_value) << ","
          << to_string(r.extension.status) << ","
          << csv_value(r.extension, r.extension.exact_value ? *r.extension.exact_value : r.extension.partial_sum) << ","
          << to_string(r.verdict) << "\n";
    }
    out.human = h.str();
    out.csv = c.str();
    if (rep.count(Agreement::Skipped) > 0) out.code = Undetermined;
    return out;
}

Out finite_classify(const Options& o, const json& config) {
    Out out;
    finite::IntMatrix A;
    if (!o.matrix.empty())
        A = io::parse_int_matrix(io::parse_document(o.matrix));
    else if (config.contains("matrix"))
        A = io::parse_int_matrix(config.at("matrix"));
    else if (config.contains("diagram") || !o.diagram_file.empty()) {
        DiagramSpec spec = build_diagram(o, config);
        auto* ef = std::get_if<family::ExplicitFinite>(&spec.params());
        if (!ef) throw ConfigError("finite classify needs an explicit-finite diagram");
        A = ef->A;
    } else {
        throw ConfigError("no matrix given: use --matrix");
    }
    auto rep = finite::measures_finite_stationary(A, o.tol);
    out.j = io::finite_report_json(rep);
    std::ostringstream h, c;
    c << "class,vertices,radius,distinguished\n";
    const auto& dec = rep.decomposition;
    for (std::size_t k = 0; k < dec.classes.size(); ++k) {
        std::ostringstream vs;
        for (std::size_t t = 0; t < dec.classes[k].size(); ++t) vs << (t ? " " : "") << dec.classes[k][t];
        h << "class " << k << " {" << vs.str() << "}: radius " << rep.radii[k].value()
          << (rep.distinguished[k] ? ", distinguished" : "") << "\n";
        c << k << "," << vs.str() << "," << rep.radii[k].value() << "," << (rep.distinguished[k] ? 1 : 0) << "\n";
    }
    for (auto [b, a] : dec.reduced_edges) h << "  class " << b << " has access to class " << a << "\n";
    for (const auto& m : rep.measures) {
        h << "measure of class " << m.data.alpha << ": lambda " << m.data.rho.value() << ", xi =";
        for (double x : m.data.xi) h << " " << x;
        h << "\n";
    }
    for (const auto& n : rep.notes) h << "note: " << n << "\n";
    out.human = h.str();
    out.csv = c.str();
    return out;
}

Out vershik_classify(const DiagramSpec& spec, const Options& o, const json& config) {
    Out out;
    auto order = order_for(o, config);
    json per = json::array();
    std::ostringstream h;
    for (std::size_t i = 1; i <= o.imax; ++i) {
        auto c = vershik::classify_odometer(spec, order, i);
        per.push_back({{"i", i}, {"finiteRight", vershik::to_string(c.finite_right)},
                       {"finiteLeft", vershik::to_string(c.finite_left)}});
        h << "  odometer " << i << ": finite-right " << vershik::to_string(c.finite_right) << ", finite-left "
          << vershik::to_string(c.finite_left) << "\n";
        if (!c.caveat.empty() && i == 1) h << "  (" << c.caveat << ")\n";
    }
    out.j = {{"order", io::order_json(order)}, {"odometers", per}};
    if (std::holds_alternative<vershik::ExplicitOrder>(order)) {
        out.j["verdict"] = nullptr;
        out.human = "explicit order: extension verdict undecidable from finite data\n" + h.str();
        out.code = Undetermined;
        return out;
    }
    auto v = vershik::extension_verdict(spec, order, o.imax);
    out.j["verdict"] = io::verdict_json(v);
    std::ostringstream top;
    top << "|I_fr| = " << v.fr.str() << ", |I_fl| = " << v.fl.str() << "\n"
        << "Borel extension: " << (v.borel ? "yes" : "no") << "\n"
        << "homeomorphism: " << vershik::to_string(v.homeomorphism) << "\n";
    out.human = top.str() + h.str();
    return out;
}

Out vershik_orbit(const DiagramSpec& spec, Options o, const json& config) {
    Out out;
    auto order = order_for(o, config);
    Truncation w = spec.window();
    w.max_level = std::max(w.max_level, o.orbit_levels);
    DiagramSpec s = spec.with_window(w);
    auto start = vershik::minimal_path(s, order, o.orbit_levels, o.start);
    std::vector<CylinderSpec> cyls;
    for (const auto& c : cylinder_list(o)) cyls.push_back(c);
    if (o.format == "csv" && o.trace_rows == 0) o.trace_rows = 1000;
    auto rep = vershik::orbit_frequencies(s, order, start, o.steps, cyls, o.trace_rows);
    json rows = json::array();
    std::ostringstream h, c;
    h << "orbit of " << rep.visited << " / " << rep.requested << " states"
      << (rep.stopped_at_maximal ? " (stopped at an all-maximal prefix)" : "") << "\n";
    for (const auto& r : rep.rows) {
        EndVertex ev = std::get<EndVertex>(r.cylinder);
        rows.push_back({{"cylinder", io::end_vertex_json(ev)}, {"visits", r.visits},
                        {"multiplicity", r.multiplicity}, {"empirical", r.empirical}});
        h << "  (" << ev.length << ", " << ev.index << "): " << r.visits << " visits, per-cylinder frequency "
          << r.empirical << "\n";
    }
    c << "step";
    for (std::size_t n = 1; n <= o.orbit_levels; ++n) c << ",v" << n;
    c << "\n";
    for (const auto& t : rep.trace) {
        for (std::size_t k = 0; k < t.size(); ++k) c << (k ? "," : "") << t[k];
        c << "\n";
    }
    out.j = {{"requested", rep.requested}, {"visited", rep.visited}, {"stoppedAtMaximal", rep.stopped_at_maximal},
             {"cylinders", rows}};
    out.human = h.str();
    out.csv = c.str();
    return out;
}

Out telescope_cmd(const DiagramSpec& spec, const Options& o) {
    Out out;
    std::vector<std::size_t> br;
    std::stringstream ss(o.breaks);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            br.push_back(std::stoul(item));
        } catch (const std::exception&) {
            throw ConfigError("--breaks must be a comma-separated level list");
        }
    }
    DiagramSpec t = telescope(spec, br, spec.window());
    out.j = io::diagram_json(t);
    std::ostringstream h;
    const auto& lv = std::get<family::ExplicitLevels>(t.params()).levels;
    h << "telescoped to " << lv.size() << " level(s)\n";
    for (const auto& f : lv) h << "  level " << f.level() << ": " << f.entries().size() << " nonzero entries\n";
    out.human = h.str();
    return out;
}

// Config keys fill options that the command line leaves unset.
void apply_config(const json& cfg, CLI::App& app) {
    if (!cfg.contains("options")) return;
    for (const auto& [key, val] : cfg.at("options").items()) {
        CLI::Option* opt = nullptr;
        try {
            opt = app.get_option("--" + key);
        } catch (const CLI::OptionNotFound&) {
            throw ConfigError("unknown config option: " + key);
        }
        if (opt->count() > 0) continue;
        std::vector<std::string> vals;
        auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
        if (val.is_array() && opt->get_items_expected_max() > 1)
            for (const auto& v : val) vals.push_back(text(v));
        else if (val.is_boolean())
            vals.push_back(val.get<bool>() ? "true" : "false");
        else
            vals.push_back(text(val));
        opt->clear();
        for (const auto& v : vals) opt->add_result(v);
        opt->run_callback();
    }
}

}  // namespace

CliResult run(const std::vector<std::string>& args_in) {
    CliResult res;
    Options o;
    CLI::App app{"Tail-invariant measures on generalized Bratteli diagrams", "bratteli"};
    app.require_subcommand(1);
    app.add_option("--config", o.config, "RunConfig JSON file");
    app.add_option("--format", o.format, "human, json or csv")->check(CLI::IsMember({"human", "json", "csv"}));
    app.add_option("--family", o.family, "ak, decreasing, increasing, nonstat-uniform, general-dio, explicit-finite");
    app.add_option("--diagram", o.diagram_file, "diagram JSON file");
    app.add_option("--a", o.a, "AK parameter a");
    app.add_option("--k", o.k, "AK parameter k");
    app.add_option("--seq", o.seq, "vertex sequence for the decreasing family, e.g. table:5,3|constant:2");
    app.add_option("--an", o.an, "level sequence for nonstat-uniform, e.g. geometric:2,2");
    app.add_option("--matrix", o.matrix, "square matrix A = F^T as a JSON 2-D array");
    app.add_option("--rows", o.rows, "general-dio table a_n^(i) as a JSON 2-D array");
    app.add_option("--fallback", o.fallback, "general-dio vertex sequence beyond the table");
    app.add_option("--max-level", o.max_level);
    app.add_option("--max-vertex", o.max_vertex);
    app.add_option("--level", o.level);
    app.add_option("--imax", o.imax);
    app.add_option("--i", o.index, "odometer index");
    app.add_option("--max-terms", o.max_terms);
    app.add_option("--levels", o.levels, "levels of measure vectors to check");
    app.add_option("--width", o.width, "vertices per level to check");
    app.add_option("--eigen-rows", o.eigen_rows);
    app.add_option("--shift", o.shift, "eigenvalue index m for the decreasing family");
    app.add_option("--lambda", o.lambda);
    app.add_option("--xi", o.xi, "comma-separated eigenvector entries");
    app.add_option("--xi-ratio", o.xi_ratio, "eigenvector xi_i = r^(i-1)");
    app.add_option("--cyl", o.cylinders, "cylinder \"(m, i)\"; repeatable");
    app.add_option("--request", o.request, "JSON file with {\"cylinders\": [[m, i], ...]}");
    app.add_option("--mmax", o.mmax);
    app.add_option("--jmax", o.jmax);
    app.add_option("--threshold", o.threshold, "tail-bound threshold for interval equality");
    app.add_option("--measure", o.measure, "extension, eigen or odometer");
    app.add_option("--vectors", o.vectors, "JSON file of measure vectors [[p0_1, ...], ...]");
    app.add_flag("--normalize", o.normalize);
    app.add_flag("--trace", o.trace, "record series terms");
    app.add_flag("--parallel", o.parallel, "use the OpenMP kernels");
    app.add_option("--tol", o.tol);
    app.add_option("--tags", o.tags, "all-left, all-right, all-middle, alternating or an order JSON literal");
    app.add_option("--order", o.order_file, "order JSON file");
    app.add_option("--steps", o.steps);
    app.add_option("--orbit-levels", o.orbit_levels);
    app.add_option("--start", o.start, "level-0 vertex of the minimal starting path");
    app.add_option("--trace-rows", o.trace_rows);
    app.add_option("--breaks", o.breaks, "telescoping levels, e.g. 0,2,4");

    auto leaf = [](CLI::App* parent, const char* name, const char* desc) {
        auto* s = parent->add_subcommand(name, desc);
        s->fallthrough();
        return s;
    };
    auto group = [&](const char* name, const char* desc) {
        auto* g = app.add_subcommand(name, desc);
        g->require_subcommand(1);
        g->fallthrough();
        return g;
    };
    auto* diagram = group("diagram", "diagram windows");
    auto* d_show = leaf(diagram, "show", "family and incidence matrix F_level");
    auto* d_heights = leaf(diagram, "heights", "tower heights H^(level)");
    auto* measure = group("measure", "measures and extensions");
    auto* m_classify = leaf(measure, "classify", "ergodic measures from odometers 1..imax");
    auto* m_extend = leaf(measure, "extend", "total mass of one extension");
    auto* m_cyl = leaf(measure, "cylinder", "cylinder values");
    auto* m_check = leaf(measure, "check-invariance", "tail invariance of measure vectors");
    auto* eigen = group("eigen", "eigenpair measures");
    auto* e_verify = leaf(eigen, "verify", "exact residuals");
    auto* e_measure = leaf(eigen, "measure", "eigen measure cylinder values");
    auto* e_compare = leaf(eigen, "compare", "eigen measure against the extension");
    auto* fin = group("finite", "finite stationary diagrams");
    auto* f_classify = leaf(fin, "classify", "distinguished classes and measures");
    auto* vers = group("vershik", "orders and Vershik maps");
    auto* v_classify = leaf(vers, "classify", "finite-right / finite-left and extension verdict");
    auto* v_orbit = leaf(vers, "orbit", "successor orbit frequencies");
    auto* tele = app.add_subcommand("telescope", "compose levels at breakpoints");
    tele->fallthrough();

    std::ostringstream out, err;
    std::vector<std::string> args = args_in;
    json config = json::object();
    try {
        // Load the config first so a command stored there can stand in for the CLI one.
        auto it = std::find(args.begin(), args.end(), "--config");
        if (it != args.end() && it + 1 != args.end()) {
            config = io::load_document(*(it + 1));
            bool has_cmd = !args.empty() && args.front().rfind("--", 0) != 0;
            if (!has_cmd && config.contains("command")) {
                std::stringstream ss(config.at("command").get<std::string>());
                std::vector<std::string> cmd;
                for (std::string w; ss >> w;) cmd.push_back(w);
                args.insert(args.begin(), cmd.begin(), cmd.end());
            }
        }
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
        apply_config(config, app);

        Out r;
        auto spec = [&] { return build_diagram(o, config); };
        if (d_show->parsed())
            r = diagram_show(spec(), o);
        else if (d_heights->parsed())
            r = diagram_heights(spec(), o);
        else if (m_classify->parsed())
            r = measure_classify(spec(), o);
        else if (m_extend->parsed())
            r = measure_extend(spec(), o);
        else if (m_cyl->parsed())
            r = measure_cylinder(spec(), o);
        else if (m_check->parsed())
            r = measure_check(spec(), o);
        else if (e_verify->parsed())
            r = eigen_verify(spec(), o);
        else if (e_measure->parsed())
            r = eigen_measure_cmd(spec(), o);
        else if (e_compare->parsed())
            r = eigen_compare(spec(), o);
        else if (f_classify->parsed())
            r = finite_classify(o, config);
        else if (v_classify->parsed())
            r = vershik_classify(spec(), o, config);
        else if (v_orbit->parsed())
            r = vershik_orbit(spec(), o, config);
        else if (tele->parsed())
            r = telescope_cmd(spec(), o);

        if (o.format == "json") {
            out << r.j.dump(2) << "\n";
        } else if (o.format == "csv") {
            if (r.csv.empty()) throw ConfigError("csv output is not available for this command");
            out << r.csv;
        } else {
            out << r.human;
        }
        res.exit_code = r.code;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        res.exit_code = Ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        res.exit_code = Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        res.exit_code = Config;
    } catch (const CertificationError& e) {
        err << "certification failed: " << e.what() << "\n";
        res.exit_code = Undetermined;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        res.exit_code = Config;
    } catch (const io::json::exception& e) {
        err << "error: malformed document: " << e.what() << "\n";
        res.exit_code = Config;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        res.exit_code = Internal;
    }
    res.out = out.str();
    res.err = err.str();
    return res;
}

}  // namespace bratteli::cli
